//! Canonical JSON instance files.
//!
//! ```json
//! {"k": 3, "weighted": true, "num_resources": 6,
//!  "arrivals": [{"vertices": [0, 1, 2], "weight": 2.5}, ...]}
//! ```
//!
//! A missing `weight` means 1.0; edge ids are array positions. Vertex-arrival
//! files carry `{"k": .., "groups": [[edge, ...], ...]}` with the same edge
//! objects. Unknown fields are ignored, so annotated files (colors, phases)
//! parse as plain instances.

use serde::{Deserialize, Serialize};

use super::validate::{validate_instance, validate_vertex_arrival};
use super::{EdgeId, HyperEdge, Instance, ResourceId, VertexArrivalInstance};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
pub(crate) struct EdgeRecord {
    pub vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct InstanceFile {
    pub k: usize,
    #[serde(default)]
    pub weighted: bool,
    pub num_resources: usize,
    pub arrivals: Vec<EdgeRecord>,
}

#[derive(Serialize, Deserialize)]
struct VertexArrivalFile {
    k: usize,
    #[serde(default)]
    weighted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    num_resources: Option<usize>,
    groups: Vec<Vec<EdgeRecord>>,
}

fn to_record(e: &HyperEdge, weighted: bool) -> EdgeRecord {
    EdgeRecord {
        vertices: e.vertices.iter().map(|v| v.0).collect(),
        weight: weighted.then_some(e.weight),
    }
}

fn from_record(id: usize, r: &EdgeRecord) -> HyperEdge {
    HyperEdge {
        id: EdgeId(id),
        vertices: r.vertices.iter().copied().map(ResourceId).collect(),
        weight: r.weight.unwrap_or(1.0),
    }
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        InstanceFile {
            k: inst.rank_k,
            weighted: inst.weighted,
            num_resources: inst.num_resources,
            arrivals: inst.arrivals.iter().map(|e| to_record(e, inst.weighted)).collect(),
        }
    }
}

impl InstanceFile {
    pub(crate) fn into_instance(self) -> Result<Instance> {
        let inst = Instance {
            rank_k: self.k,
            num_resources: self.num_resources,
            arrivals: self
                .arrivals
                .iter()
                .enumerate()
                .map(|(i, r)| from_record(i, r))
                .collect(),
            weighted: self.weighted,
        };
        let violations = validate_instance(&inst);
        if violations.is_empty() {
            Ok(inst)
        } else {
            Err(Error::Invalid(violations))
        }
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(Error::from_json)?;
    file.into_instance()
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut s = serde_json::to_string_pretty(&InstanceFile::from(inst))
        .expect("instance serialization is infallible");
    s.push('\n');
    s
}

pub fn parse_vertex_arrival(text: &str) -> Result<VertexArrivalInstance> {
    let file: VertexArrivalFile = serde_json::from_str(text).map_err(Error::from_json)?;
    let num_resources = file.num_resources.unwrap_or_else(|| {
        file.groups
            .iter()
            .flatten()
            .flat_map(|r| r.vertices.iter().map(|v| v + 1))
            .max()
            .unwrap_or(0)
    });
    let vinst = VertexArrivalInstance {
        rank_k: file.k,
        num_resources,
        groups: file
            .groups
            .iter()
            .map(|g| g.iter().enumerate().map(|(i, r)| from_record(i, r)).collect())
            .collect(),
        weighted: file.weighted,
    };
    let violations = validate_vertex_arrival(&vinst);
    if violations.is_empty() {
        Ok(vinst)
    } else {
        Err(Error::Invalid(violations))
    }
}

pub fn serialize_vertex_arrival(vinst: &VertexArrivalInstance) -> String {
    let file = VertexArrivalFile {
        k: vinst.rank_k,
        weighted: vinst.weighted,
        num_resources: Some(vinst.num_resources),
        groups: vinst
            .groups
            .iter()
            .map(|g| g.iter().map(|e| to_record(e, vinst.weighted)).collect())
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("serialization is infallible");
    s.push('\n');
    s
}
