use std::collections::BTreeSet;
use std::fmt;

use super::{EdgeId, HyperEdge, Instance, ResourceId, VertexArrivalInstance};

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    RankTooSmall { k: usize },
    IdMismatch { position: usize, id: EdgeId },
    EmptyEdge { edge: EdgeId },
    ExceedsRank { edge: EdgeId, size: usize, k: usize },
    DuplicateVertex { edge: EdgeId, vertex: ResourceId },
    VertexOutOfRange { edge: EdgeId, vertex: ResourceId, num_resources: usize },
    BadWeight { edge: EdgeId, weight: f64 },
    NonUnitWeight { edge: EdgeId, weight: f64 },
    EmptyGroup { group: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RankTooSmall { k } => write!(f, "rank k = {k} is below the minimum"),
            Violation::IdMismatch { position, id } => {
                write!(f, "edge at position {position} carries id {id}")
            }
            Violation::EmptyEdge { edge } => write!(f, "edge {edge} is empty"),
            Violation::ExceedsRank { edge, size, k } => {
                write!(f, "edge {edge} exceeds rank ({size} > {k})")
            }
            Violation::DuplicateVertex { edge, vertex } => {
                write!(f, "edge {edge} has duplicate vertex {vertex}")
            }
            Violation::VertexOutOfRange { edge, vertex, num_resources } => write!(
                f,
                "edge {edge} uses vertex {vertex} outside 0..{num_resources}"
            ),
            Violation::BadWeight { edge, weight } => {
                write!(f, "edge {edge} has invalid weight {weight}")
            }
            Violation::NonUnitWeight { edge, weight } => {
                write!(f, "edge {edge} has weight {weight} in an unweighted instance")
            }
            Violation::EmptyGroup { group } => write!(f, "arrival group {group} is empty"),
        }
    }
}

fn check_edge(
    e: &HyperEdge,
    k: usize,
    num_resources: usize,
    weighted: bool,
    out: &mut Vec<Violation>,
) {
    let edge = e.id;
    if e.vertices.is_empty() {
        out.push(Violation::EmptyEdge { edge });
    }
    if e.vertices.len() > k {
        out.push(Violation::ExceedsRank { edge, size: e.vertices.len(), k });
    }
    let mut seen = BTreeSet::new();
    for &v in &e.vertices {
        if !seen.insert(v) {
            out.push(Violation::DuplicateVertex { edge, vertex: v });
        }
        if v.0 >= num_resources {
            out.push(Violation::VertexOutOfRange { edge, vertex: v, num_resources });
        }
    }
    if !e.weight.is_finite() || e.weight < 0.0 {
        out.push(Violation::BadWeight { edge, weight: e.weight });
    } else if !weighted && e.weight != 1.0 {
        out.push(Violation::NonUnitWeight { edge, weight: e.weight });
    }
}

/// Every failed instance invariant, one record each; empty means valid.
pub fn validate_instance(inst: &Instance) -> Vec<Violation> {
    let mut out = Vec::new();
    if inst.rank_k < 2 {
        out.push(Violation::RankTooSmall { k: inst.rank_k });
    }
    for (pos, e) in inst.arrivals.iter().enumerate() {
        if e.id.0 != pos {
            out.push(Violation::IdMismatch { position: pos, id: e.id });
        }
        check_edge(e, inst.rank_k, inst.num_resources, inst.weighted, &mut out);
    }
    out
}

/// Vertex-arrival inputs may have rank 1; the reduction lifts them to rank 2.
pub fn validate_vertex_arrival(vinst: &VertexArrivalInstance) -> Vec<Violation> {
    let mut out = Vec::new();
    if vinst.rank_k < 1 {
        out.push(Violation::RankTooSmall { k: vinst.rank_k });
    }
    for (g, group) in vinst.groups.iter().enumerate() {
        if group.is_empty() {
            out.push(Violation::EmptyGroup { group: g });
        }
        for e in group {
            check_edge(e, vinst.rank_k, vinst.num_resources, vinst.weighted, &mut out);
        }
    }
    out
}
