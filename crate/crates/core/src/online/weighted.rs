//! Weighted water-filling with free disposal, simulated exactly by events.
//!
//! While the arriving edge `e` (weight `w`) grows at rate 1, every saturated
//! resource of `e` that is not already relieved sheds its lightest other
//! edge (the victim) at rate 1. Between events each resource's step fill
//! changes at a constant rate per threshold piece, so the price of `e` is a
//! finite sum `Σ c_j B^{ρ_j s}` in the growth amount `s`. With the usual
//! rates ρ ∈ {0, 1} this is `A + C B^s` and the stopping point is a
//! logarithm; otherwise a safeguarded Newton step finds it (the sum is
//! convex, so the first crossing is unique).
//!
//! Events end a piece: the price reaches `w`, a victim runs out, or an
//! unsaturated resource fills up. Growth also stops when a saturated
//! resource has no victim lighter than `w`.

use std::collections::BTreeMap;

use super::price::PriceBase;
use super::state::AlgorithmState;
use super::Decision;
use crate::duals::{accumulate_weighted, DualIncrement, GrowthSegment};
use crate::hypergraph::{EdgeId, HyperEdge, ResourceId, EPS_FEAS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// The price of the edge reached its weight.
    PriceReached,
    /// A saturated resource has no lighter edge left to displace.
    NoStrictGain,
}

/// `Σ_{i∈e} ∫_0^{w_e} B^{f_i(t) - 1} dt`.
pub fn weighted_price(state: &AlgorithmState, edge: &HyperEdge) -> f64 {
    let base = state.price_base();
    edge.vertices
        .iter()
        .map(|&v| state.step_fill(v).integral_exp(0.0, edge.weight, base))
        .sum()
}

struct Piece {
    terms: Vec<(f64, f64)>,
    revenue: Vec<(ResourceId, f64)>,
}

impl Piece {
    fn price(&self, base: PriceBase, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(c, rate)| if rate == 0.0 { c } else { c * (rate * s * base.ln_base()).exp() })
            .sum()
    }

    fn slope(&self, base: PriceBase, s: f64) -> f64 {
        let lb = base.ln_base();
        self.terms
            .iter()
            .filter(|t| t.1 != 0.0)
            .map(|&(c, rate)| c * rate * lb * (rate * s * lb).exp())
            .sum()
    }

    /// First `s` in `(0, hi]` with `price(s) = w`, given `price(0) < w <= price(hi)`.
    fn crossing(&self, base: PriceBase, w: f64, hi: f64) -> f64 {
        if self.terms.iter().all(|t| t.1 == 0.0 || t.1 == 1.0) {
            let (a, c) = self.terms.iter().fold((0.0, 0.0), |(a, c), &(coef, rate)| {
                if rate == 0.0 { (a + coef, c) } else { (a, c + coef) }
            });
            return (((w - a) / c).ln() / base.ln_base()).clamp(0.0, hi);
        }
        // Newton from the right converges monotonically on a convex function.
        let (mut lo, mut up) = (0.0, hi);
        let mut s = hi;
        for _ in 0..200 {
            let g = self.price(base, s) - w;
            if g >= 0.0 {
                up = s;
            } else {
                lo = s;
            }
            let d = self.slope(base, s);
            let mut next = if d > 0.0 { s - g / d } else { f64::NAN };
            if !(next > lo && next < up) {
                next = 0.5 * (lo + up);
            }
            if (next - s).abs() <= 1e-17 || up - lo <= 1e-17 {
                return up;
            }
            s = next;
        }
        up
    }
}

/// One arrival of weighted water-filling; see the module docs.
pub fn weighted_waterfill_step(state: &mut AlgorithmState, edge: &HyperEdge) -> (Decision, DualIncrement) {
    let (decision, duals, _) = weighted_step_with_reason(state, edge);
    (decision, duals)
}

pub(crate) fn weighted_step_with_reason(
    state: &mut AlgorithmState,
    edge: &HyperEdge,
) -> (Decision, DualIncrement, StopReason) {
    state.register(edge);
    let base = state.price_base();
    let id = edge.id;
    let w = edge.weight;
    let mut order = edge.vertices.clone();
    order.sort();

    let mut grown = 0.0;
    let mut start_y: BTreeMap<EdgeId, f64> = BTreeMap::new();
    let mut displaced: BTreeMap<EdgeId, f64> = BTreeMap::new();
    let mut duals = DualIncrement::default();
    let reason;

    let mut guard = 0usize;
    loop {
        guard += 1;
        assert!(guard < 1_000_000, "weighted water-filling did not terminate on edge {id}");

        // victims, one per saturated resource not already relieved
        let mut victims: Vec<EdgeId> = Vec::new();
        let mut blocked = false;
        for &i in &order {
            if state.x[i.0] < 1.0 - EPS_FEAS {
                continue;
            }
            if victims.iter().any(|v| state.vertices[v.0].contains(&i)) {
                continue;
            }
            match state.support[i.0].iter().find(|&&f| f != id) {
                Some(&v) if state.weights[v.0] < w => victims.push(v),
                _ => {
                    blocked = true;
                    break;
                }
            }
        }
        if blocked {
            reason = StopReason::NoStrictGain;
            break;
        }

        let mut piece = Piece { terms: Vec::new(), revenue: Vec::new() };
        for &i in &edge.vertices {
            let covering: Vec<f64> = victims
                .iter()
                .filter(|v| state.vertices[v.0].contains(&i))
                .map(|v| state.weights[v.0])
                .collect();
            let mut g = 0.0;
            for (lo, hi, level) in state.step_fill(i).segments(w) {
                let cnt = covering.iter().filter(|&&wv| wv >= hi).count();
                let coef = (hi - lo) * base.pow(level);
                piece.terms.push((coef, 1.0 - cnt as f64));
                if cnt == 0 {
                    g += coef;
                }
            }
            piece.revenue.push((i, g));
        }
        if piece.price(base, 0.0) >= w {
            reason = StopReason::PriceReached;
            break;
        }

        let mut horizon = f64::INFINITY;
        for v in &victims {
            horizon = horizon.min(state.y[v.0]);
        }
        for &i in &edge.vertices {
            let relieved = victims.iter().any(|v| state.vertices[v.0].contains(&i));
            if !relieved && state.x[i.0] < 1.0 - EPS_FEAS {
                horizon = horizon.min(1.0 - state.x[i.0]);
            }
        }
        debug_assert!(horizon.is_finite());

        let (s, hit) = if piece.price(base, horizon) >= w {
            (piece.crossing(base, w, horizon), true)
        } else {
            (horizon, false)
        };

        if s > 0.0 {
            if grown == 0.0 {
                for &i in &edge.vertices {
                    state.support_insert(i, id);
                }
            }
            grown += s;
            state.y[id.0] = grown;
            for &i in &edge.vertices {
                state.x[i.0] += s;
            }
            for &v in &victims {
                let y0 = *start_y.entry(v).or_insert(state.y[v.0]);
                let current = state.y[v.0];
                let total = displaced.entry(v).or_insert(0.0);
                if s >= current {
                    *total = y0;
                } else {
                    *total += s;
                }
                state.y[v.0] = y0 - *total;
                for &j in &state.vertices[v.0] {
                    state.x[j.0] -= s;
                }
                if state.y[v.0] <= 0.0 {
                    state.y[v.0] = 0.0;
                    let vs = state.vertices[v.0].clone();
                    for j in vs {
                        state.support_remove(j, v);
                    }
                }
            }
            let displaced_weight: f64 = victims.iter().map(|v| state.weights[v.0]).sum();
            duals.merge(accumulate_weighted(
                base,
                &GrowthSegment {
                    length: s,
                    weight: w,
                    displaced_weight,
                    revenue_coefficients: piece.revenue,
                },
            ));
        }
        if hit {
            reason = StopReason::PriceReached;
            break;
        }
    }

    debug_assert!(
        state
            .recomputed_fills()
            .iter()
            .zip(&state.x)
            .all(|(a, b)| (a - b).abs() <= 1e-9),
        "incremental fills drifted from the allocation"
    );

    let decision = Decision {
        edge: id,
        delta_y: grown,
        displacements: displaced.into_iter().filter(|(_, d)| *d > 0.0).collect(),
        price_at_stop: weighted_price(state, edge),
    };
    (decision, duals, reason)
}
