//! Primal-dual bookkeeping for the water-filling algorithms.
//!
//! While an edge grows, its price is split into per-resource revenues `r_i`
//! and an edge utility `u_e`. The sum of all duals tracks the objective, and
//! if every edge is covered (`u_e + Σ_{i∈e} r_i ≥ c_k w_e`), weak duality
//! against the fractional packing LP bounds the competitive ratio by `c_k`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Instance, ResourceId};
use crate::online::{PriceBase, Transcript};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DualMode {
    Unweighted,
    Weighted,
}

/// Dual change caused by one arrival (or one growth segment of it).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DualIncrement {
    pub du: f64,
    pub dr: BTreeMap<ResourceId, f64>,
}

impl DualIncrement {
    pub fn is_zero(&self) -> bool {
        self.du == 0.0 && self.dr.values().all(|v| *v == 0.0)
    }

    pub fn total(&self) -> f64 {
        self.du + self.dr.values().sum::<f64>()
    }

    pub fn merge(&mut self, other: DualIncrement) {
        self.du += other.du;
        for (r, v) in other.dr {
            *self.dr.entry(r).or_insert(0.0) += v;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualCertificate {
    pub k: usize,
    pub mode: DualMode,
    pub r: Vec<f64>,
    pub u: Vec<f64>,
}

impl DualCertificate {
    pub fn new(k: usize, mode: DualMode) -> Self {
        DualCertificate { k, mode, r: Vec::new(), u: Vec::new() }
    }

    pub fn apply(&mut self, edge: usize, inc: &DualIncrement) {
        if self.u.len() <= edge {
            self.u.resize(edge + 1, 0.0);
        }
        self.u[edge] += inc.du;
        for (r, v) in &inc.dr {
            if self.r.len() <= r.0 {
                self.r.resize(r.0 + 1, 0.0);
            }
            self.r[r.0] += v;
        }
    }

    pub fn total(&self) -> f64 {
        self.r.iter().sum::<f64>() + self.u.iter().sum::<f64>()
    }
}

/// `c_k = (1 - 1/ln k) / (ln k + ln ln k)`.
pub fn certified_ratio(k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::Parameter(format!("certified ratio needs k >= 2, got {k}")));
    }
    let lk = (k as f64).ln();
    Ok((1.0 - 1.0 / lk) / (lk + lk.ln()))
}

/// The covering argument needs `ln k + ln ln k >= 1`, which fails at k = 2.
pub fn in_proof_domain(k: usize) -> bool {
    k >= 3 && PriceBase::new(k).ln_base() >= 1.0
}

/// Revenue of a resource filled from 0 to 1: `∫_0^1 B^{t-1} dt`.
pub fn full_fill_revenue(k: usize) -> f64 {
    let b = PriceBase::new(k);
    (1.0 - 1.0 / b.base()) / b.ln_base()
}

/// Duals for an unweighted water-filling step of size `dy` starting from
/// the given fills; all fills rise at the same rate.
pub fn accumulate_unweighted(
    base: PriceBase,
    fills_before: &[(ResourceId, f64)],
    dy: f64,
) -> DualIncrement {
    if dy <= 0.0 {
        return DualIncrement::default();
    }
    let g = base.growth(dy) / base.ln_base();
    let dr: BTreeMap<ResourceId, f64> = fills_before
        .iter()
        .map(|&(r, x)| (r, base.pow(x) * g))
        .collect();
    let revenue: f64 = dr.values().sum();
    DualIncrement { du: (dy - revenue).max(0.0), dr }
}

/// One interval of weighted growth in which the victim set is fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthSegment {
    pub length: f64,
    pub weight: f64,
    /// Total weight of the distinct edges being displaced.
    pub displaced_weight: f64,
    /// `∫ B^{f_i(t)-1} dt` over the thresholds where `f_i` rises with the
    /// arriving edge, evaluated at the start of the segment.
    pub revenue_coefficients: Vec<(ResourceId, f64)>,
}

/// Revenues earn the rising part of each resource's price; the displaced
/// weight pays off the victims and the rest is utility.
pub fn accumulate_weighted(base: PriceBase, seg: &GrowthSegment) -> DualIncrement {
    if seg.length <= 0.0 {
        return DualIncrement::default();
    }
    let g = base.growth(seg.length) / base.ln_base();
    let dr: BTreeMap<ResourceId, f64> = seg
        .revenue_coefficients
        .iter()
        .map(|&(r, c)| (r, c * g))
        .collect();
    let revenue: f64 = dr.values().sum();
    let du = ((seg.weight - seg.displaced_weight) * seg.length - revenue).max(0.0);
    DualIncrement { du, dr }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Balance gap allowed, relative to `max(1, ALG)`.
    pub balance_rel: f64,
    /// Absolute slack allowed on each edge covering constraint.
    pub slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { balance_rel: 1e-7, slack: 1e-9 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub balance_gap: f64,
    pub min_edge_slack: f64,
    pub certified_ratio: f64,
    pub pass: bool,
    #[serde(skip)]
    pub in_proof_domain: bool,
}

impl CertificateReport {
    /// A passing report only implies `ALG >= c_k OPT_frac` inside the
    /// proof's domain (k >= 3).
    pub fn certifies_ratio(&self) -> bool {
        self.pass && self.in_proof_domain
    }
}

/// Checks the balance equation and every edge's covering constraint.
pub fn verify_certificate(
    inst: &Instance,
    transcript: &Transcript,
    cert: &DualCertificate,
    tol: Tolerances,
) -> Result<CertificateReport> {
    let ratio = certified_ratio(cert.k)?;
    if cert.u.len() < inst.num_edges() {
        return Err(Error::MissingDuals(format!(
            "utilities for {} of {} edges",
            cert.u.len(),
            inst.num_edges()
        )));
    }
    if let Some(v) = inst
        .arrivals
        .iter()
        .flat_map(|e| e.vertices.iter())
        .find(|v| v.0 >= cert.r.len())
    {
        return Err(Error::MissingDuals(format!("revenue of resource {v}")));
    }
    if let Some(bad) = cert.r.iter().chain(&cert.u).find(|d| !(**d >= -tol.slack)) {
        return Err(Error::MissingDuals(format!("a non-negative dual (found {bad})")));
    }

    let alg: f64 = inst
        .arrivals
        .iter()
        .map(|e| {
            let w = if cert.mode == DualMode::Weighted { e.weight } else { 1.0 };
            w * transcript.allocation.get(e.id.0).copied().unwrap_or(0.0)
        })
        .sum();
    let balance_gap = (cert.total() - alg).abs();

    let min_edge_slack = inst
        .arrivals
        .iter()
        .map(|e| {
            let w = if cert.mode == DualMode::Weighted { e.weight } else { 1.0 };
            let covered: f64 = e.vertices.iter().map(|v| cert.r[v.0]).sum();
            cert.u[e.id.0] + covered - ratio * w
        })
        .fold(None, |acc: Option<f64>, s| Some(acc.map_or(s, |a| a.min(s))))
        .unwrap_or(0.0);

    let pass = balance_gap <= tol.balance_rel * alg.max(1.0) && min_edge_slack >= -tol.slack;
    Ok(CertificateReport {
        balance_gap,
        min_edge_slack,
        certified_ratio: ratio,
        pass,
        in_proof_domain: in_proof_domain(cert.k),
    })
}
