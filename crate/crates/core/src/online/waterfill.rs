use super::state::AlgorithmState;
use super::Decision;
use crate::duals::{accumulate_unweighted, DualIncrement};
use crate::hypergraph::{HyperEdge, ResourceId};

/// `Σ_{i∈e} B^{x_i - 1}`, summed in vertex order.
pub fn waterfill_price(state: &AlgorithmState, edge: &HyperEdge) -> f64 {
    let base = state.price_base();
    edge.vertices.iter().map(|&v| base.pow(state.fill(v))).sum()
}

/// One arrival of water-filling.
///
/// All fills of the edge rise together, so the price after growing by `y`
/// is `P₀ B^y` and the stopping point is `ln(1/P₀) / ln B` (zero if the
/// edge is already at or above price 1).
pub fn waterfill_step(state: &mut AlgorithmState, edge: &HyperEdge) -> (Decision, DualIncrement) {
    state.register(edge);
    let base = state.price_base();
    let p0 = waterfill_price(state, edge);
    if p0 >= 1.0 {
        return (Decision::rejected(edge.id, p0), DualIncrement::default());
    }
    let dy = (-p0.ln() / base.ln_base()).max(0.0);
    let before: Vec<(ResourceId, f64)> = edge.vertices.iter().map(|&v| (v, state.fill(v))).collect();
    for &v in &edge.vertices {
        state.x[v.0] += dy;
    }
    state.y[edge.id.0] = dy;
    let price = waterfill_price(state, edge);
    let duals = accumulate_unweighted(base, &before, dy);
    let decision = Decision { delta_y: dy, ..Decision::rejected(edge.id, price) };
    (decision, duals)
}
