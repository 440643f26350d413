use serde::{Deserialize, Serialize};

use super::{EdgeId, HyperEdge, Instance, IntegralMatching, ResourceId, VertexArrivalInstance};
use crate::error::{Error, Result};

/// Fills every edge up to `rank_k` vertices with fresh dummy resources.
///
/// Dummies are numbered from the old `num_resources` upward in edge order,
/// appended after the edge's own vertices.
pub fn pad_to_uniform(inst: &Instance) -> Instance {
    let mut out = inst.clone();
    let mut next = inst.num_resources;
    for e in &mut out.arrivals {
        while e.vertices.len() < inst.rank_k {
            e.vertices.push(ResourceId(next));
            next += 1;
        }
    }
    out.num_resources = next;
    out
}

/// Maps each reduced edge back to `(group, position in group)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionMap {
    pub num_groups: usize,
    pub origin: Vec<(usize, usize)>,
}

/// Rank-k vertex arrivals to rank-(k+1) edge arrivals.
///
/// Group `t` gets the fresh resource `num_resources + t`, which every edge of
/// the group shares, so any matching on the output picks at most one edge
/// per group.
pub fn reduce_vertex_to_edge_arrival(vinst: &VertexArrivalInstance) -> (Instance, ReductionMap) {
    let base = vinst.num_resources;
    let mut arrivals = Vec::new();
    let mut origin = Vec::new();
    for (t, group) in vinst.groups.iter().enumerate() {
        let shared = ResourceId(base + t);
        for (l, e) in group.iter().enumerate() {
            let mut vertices = e.vertices.clone();
            vertices.push(shared);
            arrivals.push(HyperEdge {
                id: EdgeId(arrivals.len()),
                vertices,
                weight: e.weight,
            });
            origin.push((t, l));
        }
    }
    let inst = Instance {
        rank_k: vinst.rank_k + 1,
        num_resources: base + vinst.groups.len(),
        arrivals,
        weighted: vinst.weighted,
    };
    let map = ReductionMap {
        num_groups: vinst.groups.len(),
        origin,
    };
    (inst, map)
}

/// Per-group choice induced by a matching on the reduced instance.
pub fn lift_edge_decisions(
    map: &ReductionMap,
    decisions: &IntegralMatching,
) -> Result<Vec<Option<usize>>> {
    let mut choice: Vec<Option<(usize, EdgeId)>> = vec![None; map.num_groups];
    for &id in &decisions.chosen {
        let &(t, l) = map.origin.get(id.0).ok_or(Error::UnknownEdge(id))?;
        match choice[t] {
            Some((_, first)) if first != id => {
                let (first, second) = if first < id { (first, id) } else { (id, first) };
                return Err(Error::GroupConflict { group: t, first, second });
            }
            _ => choice[t] = Some((l, id)),
        }
    }
    Ok(choice.into_iter().map(|c| c.map(|(l, _)| l)).collect())
}
