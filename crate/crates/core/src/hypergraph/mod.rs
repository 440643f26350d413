//! Hypergraph instances, allocations and the arrival models.
//!
//! An [`Instance`] is an ordered sequence of hyperedges over a dense set of
//! resources `0..num_resources`. Edge ids are arrival positions, so the edge
//! with id `i` is always `arrivals[i]`.

mod io;
mod transform;
mod validate;

use std::collections::BTreeMap;
use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

pub use io::{parse_instance, parse_vertex_arrival, serialize_instance, serialize_vertex_arrival};
pub use transform::{lift_edge_decisions, pad_to_uniform, reduce_vertex_to_edge_arrival, ReductionMap};
pub use validate::{validate_instance, validate_vertex_arrival, Violation};

/// Absolute feasibility tolerance shared by allocations and certificates.
pub const EPS_FEAS: f64 = 1e-9;

/// Index of an offline vertex (resource).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ResourceId(pub usize);

/// Index of a hyperedge, equal to its 0-based arrival position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

// Ids are also accepted as strings: JSON map keys are strings, and flattened
// structs hand them over without the usual key-to-integer conversion.
struct IdVisitor;

impl<'de> de::Visitor<'de> for IdVisitor {
    type Value = usize;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a non-negative integer id")
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<usize, E> {
        usize::try_from(v).map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<usize, E> {
        usize::try_from(v).map_err(E::custom)
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<usize, E> {
        v.parse().map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for ResourceId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(IdVisitor).map(ResourceId)
    }
}

impl<'de> Deserialize<'de> for EdgeId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(IdVisitor).map(EdgeId)
    }
}

impl ResourceId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ResourceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HyperEdge {
    pub id: EdgeId,
    pub vertices: Vec<ResourceId>,
    pub weight: f64,
}

impl HyperEdge {
    pub fn new(id: usize, vertices: impl IntoIterator<Item = usize>, weight: f64) -> Self {
        HyperEdge {
            id: EdgeId(id),
            vertices: vertices.into_iter().map(ResourceId).collect(),
            weight,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, r: ResourceId) -> bool {
        self.vertices.contains(&r)
    }

    pub fn intersects(&self, other: &HyperEdge) -> bool {
        self.vertices.iter().any(|v| other.vertices.contains(v))
    }
}

/// An edge-arrival instance of rank `rank_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub rank_k: usize,
    pub num_resources: usize,
    pub arrivals: Vec<HyperEdge>,
    pub weighted: bool,
}

impl Instance {
    /// Unit-weight instance from vertex lists; edge ids follow list order.
    pub fn unweighted(rank_k: usize, num_resources: usize, edges: Vec<Vec<usize>>) -> Self {
        let arrivals = edges
            .into_iter()
            .enumerate()
            .map(|(id, vs)| HyperEdge::new(id, vs, 1.0))
            .collect();
        Instance {
            rank_k,
            num_resources,
            arrivals,
            weighted: false,
        }
    }

    pub fn weighted(rank_k: usize, num_resources: usize, edges: Vec<(Vec<usize>, f64)>) -> Self {
        let arrivals = edges
            .into_iter()
            .enumerate()
            .map(|(id, (vs, w))| HyperEdge::new(id, vs, w))
            .collect();
        Instance {
            rank_k,
            num_resources,
            arrivals,
            weighted: true,
        }
    }

    pub fn num_edges(&self) -> usize {
        self.arrivals.len()
    }

    pub fn edge(&self, id: EdgeId) -> Result<&HyperEdge> {
        self.arrivals.get(id.0).ok_or(Error::UnknownEdge(id))
    }

    pub fn is_uniform(&self) -> bool {
        self.arrivals.iter().all(|e| e.len() == self.rank_k)
    }

    /// Number of edge-vertex incidences.
    pub fn incidences(&self) -> usize {
        self.arrivals.iter().map(HyperEdge::len).sum()
    }

    /// A copy with every weight set to 1 and the weighted flag cleared.
    pub fn as_unit_weight(&self) -> Instance {
        let mut out = self.clone();
        out.weighted = false;
        for e in &mut out.arrivals {
            e.weight = 1.0;
        }
        out
    }

    /// Edges incident to each resource, in arrival order.
    pub fn incidence_lists(&self) -> Vec<Vec<EdgeId>> {
        let mut lists = vec![Vec::new(); self.num_resources];
        for e in &self.arrivals {
            for v in &e.vertices {
                if let Some(l) = lists.get_mut(v.0) {
                    l.push(e.id);
                }
            }
        }
        lists
    }
}

/// An online vertex with all of its candidate edges; at most one may be chosen.
pub type ArrivalGroup = Vec<HyperEdge>;

#[derive(Clone, Debug, PartialEq)]
pub struct VertexArrivalInstance {
    pub rank_k: usize,
    pub num_resources: usize,
    pub groups: Vec<ArrivalGroup>,
    pub weighted: bool,
}

/// Per-edge matched fractions `y`, indexed by edge id.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FractionalAllocation {
    pub y: BTreeMap<EdgeId, f64>,
}

impl FractionalAllocation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_dense(y: &[f64]) -> Self {
        FractionalAllocation {
            y: y.iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(i, v)| (EdgeId(i), *v))
                .collect(),
        }
    }

    pub fn get(&self, e: EdgeId) -> f64 {
        self.y.get(&e).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, e: EdgeId, value: f64) {
        self.y.insert(e, value);
    }

    pub fn to_dense(&self, num_edges: usize) -> Vec<f64> {
        let mut out = vec![0.0; num_edges];
        for (e, v) in &self.y {
            if let Some(slot) = out.get_mut(e.0) {
                *slot = *v;
            }
        }
        out
    }

    pub fn total(&self) -> f64 {
        self.y.values().sum()
    }
}

/// Direct summation `x_i = Σ_{e ∋ i} y_e`.
pub fn fill_levels(inst: &Instance, alloc: &FractionalAllocation) -> Result<Vec<f64>> {
    let mut x = vec![0.0; inst.num_resources];
    for (&id, &y) in &alloc.y {
        let edge = inst.edge(id)?;
        for v in &edge.vertices {
            x[v.0] += y;
        }
    }
    Ok(x)
}

/// A set of pairwise disjoint edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntegralMatching {
    pub chosen: Vec<EdgeId>,
}

impl IntegralMatching {
    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }

    /// Checks pairwise disjointness, returning the first offending pair.
    pub fn check_disjoint(&self, inst: &Instance) -> Result<()> {
        let mut owner: BTreeMap<ResourceId, EdgeId> = BTreeMap::new();
        for &id in &self.chosen {
            for &v in &inst.edge(id)?.vertices {
                if let Some(prev) = owner.insert(v, id) {
                    return Err(Error::NotDisjoint(prev, id));
                }
            }
        }
        Ok(())
    }

    pub fn weight(&self, inst: &Instance) -> f64 {
        self.chosen
            .iter()
            .filter_map(|id| inst.arrivals.get(id.0))
            .map(|e| e.weight)
            .sum()
    }
}
