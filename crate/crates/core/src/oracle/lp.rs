//! Fractional matching LP `max Σ w_e y_e s.t. Σ_{e∋i} y_e ≤ 1, y ≥ 0` and its
//! covering dual `min Σ z_i s.t. Σ_{i∈e} z_i ≥ w_e, z ≥ 0`.
//!
//! Dense tableau simplex with Bland's rule, generic over the scalar so tiny
//! instances can be solved in exact rationals. The all-ones right-hand side
//! makes the slack basis feasible, so there is no first phase. Resources
//! with identical incidence sets give identical rows; only one
//! representative per set is kept and it carries the whole dual value.

use std::collections::BTreeMap;
use std::ops::{Add, Div, Mul, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Instance, ResourceId};

pub const LP_EDGE_CAP: usize = 5000;
pub const LP_INCIDENCE_CAP: usize = 200_000;
pub const EXACT_EDGE_CAP: usize = 12;
const DENSE_ENTRY_CAP: usize = 60_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub primal: BTreeMap<EdgeId, f64>,
    pub dual: BTreeMap<ResourceId, f64>,
    pub primal_value: f64,
    pub dual_value: f64,
    pub gap: f64,
}

impl LpSolution {
    /// Largest violation of a packing constraint or of `y ≥ 0`.
    pub fn primal_violation(&self, inst: &Instance) -> f64 {
        let mut load = vec![0.0; inst.num_resources];
        let mut worst = 0.0f64;
        for e in &inst.arrivals {
            let y = self.primal.get(&e.id).copied().unwrap_or(0.0);
            worst = worst.max(-y);
            for v in &e.vertices {
                load[v.0] += y;
            }
        }
        load.iter().fold(worst, |w, l| w.max(l - 1.0))
    }

    /// Largest violation of a covering constraint or of `z ≥ 0`.
    pub fn dual_violation(&self, inst: &Instance) -> f64 {
        let z = |v: ResourceId| self.dual.get(&v).copied().unwrap_or(0.0);
        let neg = self.dual.values().fold(0.0f64, |w, z| w.max(-z));
        inst.arrivals.iter().fold(neg, |w, e| {
            let c = if inst.weighted { e.weight } else { 1.0 };
            w.max(c - e.vertices.iter().map(|&v| z(v)).sum::<f64>())
        })
    }
}

/// The same optimum in exact arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactLpSolution {
    pub value: BigRational,
    pub primal: Vec<BigRational>,
    pub dual: BTreeMap<ResourceId, BigRational>,
}

pub trait Scalar:
    Clone
    + PartialOrd
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_weight(w: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// Strictly positive beyond numerical noise.
    fn is_pos(&self) -> bool;
    fn is_nonzero(&self) -> bool;
}

const PIVOT_EPS: f64 = 1e-11;

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_weight(w: f64) -> Option<Self> {
        w.is_finite().then_some(w)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_pos(&self) -> bool {
        *self > PIVOT_EPS
    }
    fn is_nonzero(&self) -> bool {
        self.abs() > 1e-15
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_weight(w: f64) -> Option<Self> {
        BigRational::from_float(w)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_nonzero(&self) -> bool {
        !Zero::is_zero(self)
    }
}

struct Tableau<T> {
    /// `rows × (n + rows + 1)`; the last column is the right-hand side.
    a: Vec<Vec<T>>,
    /// Reduced costs, same width; the last entry is minus the objective.
    obj: Vec<T>,
    basis: Vec<usize>,
    n: usize,
}

/// Distinct incidence patterns, each with its representative resource.
fn row_classes(inst: &Instance) -> Vec<(ResourceId, Vec<usize>)> {
    let lists = inst.incidence_lists();
    let mut seen: BTreeMap<Vec<usize>, ResourceId> = BTreeMap::new();
    for (r, list) in lists.into_iter().enumerate() {
        if list.is_empty() {
            continue;
        }
        let key: Vec<usize> = list.iter().map(|e| e.0).collect();
        seen.entry(key).or_insert(ResourceId(r));
    }
    let mut rows: Vec<(ResourceId, Vec<usize>)> = seen.into_iter().map(|(k, r)| (r, k)).collect();
    rows.sort_by_key(|(r, _)| *r);
    rows
}

fn solve<T: Scalar>(inst: &Instance, max_pivots: usize) -> Result<(Vec<T>, BTreeMap<ResourceId, T>, T)> {
    let n = inst.num_edges();
    let rows = row_classes(inst);
    let m = rows.len();
    let width = n + m + 1;
    if m.saturating_mul(width) > DENSE_ENTRY_CAP {
        return Err(Error::CapExceeded { what: "dense LP tableau entries", size: m * width, cap: DENSE_ENTRY_CAP });
    }
    let mut a = vec![vec![T::zero(); width]; m];
    for (i, (_, edges)) in rows.iter().enumerate() {
        for &e in edges {
            a[i][e] = T::one();
        }
        a[i][n + i] = T::one();
        a[i][width - 1] = T::one();
    }
    let mut obj = vec![T::zero(); width];
    for e in &inst.arrivals {
        let w = if inst.weighted { e.weight } else { 1.0 };
        obj[e.id.0] = T::from_weight(w).ok_or_else(|| Error::Lp(format!("weight {w} is not representable")))?;
    }
    let mut t = Tableau { a, obj, basis: (n..n + m).collect(), n };

    let mut pivots = 0;
    while let Some(col) = (0..width - 1).find(|&j| t.obj[j].is_pos()) {
        let mut best: Option<(usize, T)> = None;
        for i in 0..m {
            if !t.a[i][col].is_pos() {
                continue;
            }
            let ratio = t.a[i][width - 1].clone() / &t.a[i][col];
            let better = match &best {
                None => true,
                Some((bi, br)) => ratio < *br || (!(*br < ratio) && t.basis[i] < t.basis[*bi]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        let Some((row, _)) = best else {
            return Err(Error::Lp("the packing LP reported an unbounded direction".into()));
        };
        t.pivot(row, col);
        pivots += 1;
        if pivots > max_pivots {
            return Err(Error::Lp(format!("no optimum after {max_pivots} pivots")));
        }
    }

    let mut y = vec![T::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < t.n {
            y[b] = t.a[i][width - 1].clone();
        }
    }
    let mut z = BTreeMap::new();
    for (i, (r, _)) in rows.iter().enumerate() {
        z.insert(*r, T::zero() - &t.obj[n + i]);
    }
    let value = T::zero() - &t.obj[width - 1];
    Ok((y, z, value))
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.a[row][col].clone();
        for v in self.a[row].iter_mut() {
            if v.is_nonzero() {
                *v = v.clone() / &p;
            }
        }
        let pr = self.a[row].clone();
        let nz: Vec<usize> = (0..pr.len()).filter(|&j| pr[j].is_nonzero()).collect();
        let eliminate = |target: &mut Vec<T>| {
            let f = target[col].clone();
            if !f.is_nonzero() {
                return;
            }
            for &j in &nz {
                target[j] = target[j].clone() - &(f.clone() * &pr[j]);
            }
        };
        for (i, r) in self.a.iter_mut().enumerate() {
            if i != row {
                eliminate(r);
            }
        }
        eliminate(&mut self.obj);
        self.basis[row] = col;
    }
}

fn check_caps(inst: &Instance, edge_cap: usize) -> Result<()> {
    if inst.num_edges() > edge_cap {
        return Err(Error::CapExceeded { what: "LP edge count", size: inst.num_edges(), cap: edge_cap });
    }
    if inst.incidences() > LP_INCIDENCE_CAP {
        return Err(Error::CapExceeded { what: "LP incidences", size: inst.incidences(), cap: LP_INCIDENCE_CAP });
    }
    Ok(())
}

fn max_pivots(inst: &Instance) -> usize {
    100 * (inst.num_edges() + inst.num_resources) + 1000
}

/// Floating-point LP optimum with a verified dual certificate. Fails unless
/// both solutions are feasible within `tol` and the duality gap is within
/// `tol` relative to `max(1, value)`.
pub fn opt_fractional(inst: &Instance, tol: f64) -> Result<LpSolution> {
    check_caps(inst, LP_EDGE_CAP)?;
    let (y, z, _) = solve::<f64>(inst, max_pivots(inst))?;
    let sol = finish(inst, y.into_iter().map(|v| v.max(0.0)).collect(), z.into_iter().map(|(r, v)| (r, v.max(0.0))).collect());
    let scale = sol.primal_value.abs().max(1.0);
    let pv = sol.primal_violation(inst);
    let dv = sol.dual_violation(inst);
    if pv > tol || dv > tol * scale || sol.gap.abs() > tol * scale {
        return Err(Error::Lp(format!(
            "certificate check failed (primal violation {pv:e}, dual violation {dv:e}, gap {:e})",
            sol.gap
        )));
    }
    Ok(sol)
}

fn finish(inst: &Instance, y: Vec<f64>, z: BTreeMap<ResourceId, f64>) -> LpSolution {
    let primal_value = inst
        .arrivals
        .iter()
        .map(|e| if inst.weighted { e.weight } else { 1.0 } * y[e.id.0])
        .sum();
    let dual_value = z.values().sum();
    LpSolution {
        primal: y.into_iter().enumerate().map(|(i, v)| (EdgeId(i), v)).collect(),
        dual: z,
        primal_value,
        dual_value,
        gap: dual_value - primal_value,
    }
}

/// Exact rational optimum for instances of at most 12 edges.
pub fn opt_fractional_exact(inst: &Instance) -> Result<ExactLpSolution> {
    check_caps(inst, EXACT_EDGE_CAP)?;
    let (primal, dual, value) = solve::<BigRational>(inst, max_pivots(inst))?;
    let dual_sum = dual.values().fold(<BigRational as Zero>::zero(), |a, b| a + b);
    if dual_sum != value {
        return Err(Error::Lp("exact duals do not match the optimum".into()));
    }
    Ok(ExactLpSolution { value, primal, dual })
}

impl ExactLpSolution {
    pub fn to_solution(&self, inst: &Instance) -> LpSolution {
        finish(
            inst,
            self.primal.iter().map(Scalar::to_f64).collect(),
            self.dual.iter().map(|(r, v)| (*r, Scalar::to_f64(v))).collect(),
        )
    }
}
