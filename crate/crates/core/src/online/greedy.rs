use super::state::AlgorithmState;
use super::Decision;
use crate::hypergraph::HyperEdge;

/// Accepts the edge iff it is disjoint from every accepted edge.
pub fn greedy_step(state: &mut AlgorithmState, edge: &HyperEdge) -> Decision {
    state.register(edge);
    let free = edge.vertices.iter().all(|&v| state.fill(v) == 0.0);
    if !free {
        return Decision::rejected(edge.id, 0.0);
    }
    state.y[edge.id.0] = 1.0;
    for &v in &edge.vertices {
        state.x[v.0] = 1.0;
    }
    Decision { delta_y: 1.0, ..Decision::rejected(edge.id, 0.0) }
}
