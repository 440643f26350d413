//! Online algorithms and the run driver.
//!
//! Three deterministic algorithms consume arrivals one at a time:
//! greedy integral matching, hypergraph water-filling (closed form) and
//! weighted water-filling with free disposal (event-driven). Every arrival
//! yields a [`Decision`] plus the dual increment it earned; a run collects
//! them into a [`Transcript`].

mod greedy;
mod price;
mod state;
mod stepfill;
mod waterfill;
mod weighted;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::duals::{DualCertificate, DualIncrement, DualMode};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, FractionalAllocation, HyperEdge, Instance, IntegralMatching};

pub use greedy::greedy_step;
pub use price::PriceBase;
pub use state::AlgorithmState;
pub use stepfill::StepFill;
pub use waterfill::{waterfill_price, waterfill_step};
pub use weighted::{weighted_price, weighted_waterfill_step, StopReason};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "greedy")]
    Greedy,
    #[serde(rename = "waterfill")]
    WaterFill,
    #[serde(rename = "weighted-waterfill")]
    WeightedWaterFill,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::WaterFill => "waterfill",
            Algorithm::WeightedWaterFill => "weighted-waterfill",
        }
    }

    pub fn is_fractional(self) -> bool {
        !matches!(self, Algorithm::Greedy)
    }

    pub fn dual_mode(self) -> Option<DualMode> {
        match self {
            Algorithm::Greedy => None,
            Algorithm::WaterFill => Some(DualMode::Unweighted),
            Algorithm::WeightedWaterFill => Some(DualMode::Weighted),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(Algorithm::Greedy),
            "waterfill" => Ok(Algorithm::WaterFill),
            "weighted-waterfill" => Ok(Algorithm::WeightedWaterFill),
            other => Err(Error::Parameter(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// What the algorithm did with one arriving edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub edge: EdgeId,
    #[serde(rename = "dy")]
    pub delta_y: f64,
    /// Fractions removed from earlier edges (weighted mode only).
    #[serde(rename = "displaced", default)]
    pub displacements: BTreeMap<EdgeId, f64>,
    #[serde(rename = "price")]
    pub price_at_stop: f64,
}

impl Decision {
    pub(crate) fn rejected(edge: EdgeId, price: f64) -> Self {
        Decision { edge, delta_y: 0.0, displacements: BTreeMap::new(), price_at_stop: price }
    }
}

/// One transcript line: `{"edge", "dy", "displaced", "price", "du", "dr"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrivalRecord {
    #[serde(flatten)]
    pub decision: Decision,
    #[serde(flatten)]
    pub duals: DualIncrement,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub algorithm: Algorithm,
    pub k: usize,
    pub records: Vec<ArrivalRecord>,
    /// `Σ y_e`, or `Σ w_e y_e` in weighted mode.
    pub objective: f64,
    /// Final `y`, indexed by edge id.
    pub allocation: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<DualCertificate>,
}

impl Transcript {
    pub fn allocation(&self) -> FractionalAllocation {
        FractionalAllocation::from_dense(&self.allocation)
    }

    /// Accepted edges of an integral run.
    pub fn matching(&self) -> IntegralMatching {
        IntegralMatching {
            chosen: self
                .allocation
                .iter()
                .enumerate()
                .filter(|(_, y)| **y >= 0.5)
                .map(|(i, _)| EdgeId(i))
                .collect(),
        }
    }

    /// Applies the recorded decisions to an empty allocation.
    pub fn replay_allocation(&self) -> Vec<f64> {
        let mut y = vec![0.0; self.records.len()];
        for rec in &self.records {
            let d = &rec.decision;
            if y.len() <= d.edge.0 {
                y.resize(d.edge.0 + 1, 0.0);
            }
            y[d.edge.0] = d.delta_y;
            for (v, amount) in &d.displacements {
                if let Some(slot) = y.get_mut(v.0) {
                    *slot -= amount;
                }
            }
        }
        y
    }

    /// Re-runs the algorithm on `inst` and compares every record and the
    /// final allocation bit for bit.
    pub fn check_replay(&self, inst: &Instance) -> Result<()> {
        let fresh = run_online(inst, self.algorithm)?;
        for (index, (a, b)) in self.records.iter().zip(&fresh.records).enumerate() {
            if a.decision != b.decision {
                return Err(Error::ReplayMismatch {
                    index,
                    detail: format!(
                        "recorded dy {} / displaced {:?}, recomputed dy {} / displaced {:?}",
                        a.decision.delta_y,
                        a.decision.displacements,
                        b.decision.delta_y,
                        b.decision.displacements
                    ),
                });
            }
        }
        if self.records.len() != fresh.records.len() {
            return Err(Error::ReplayMismatch {
                index: self.records.len().min(fresh.records.len()),
                detail: format!(
                    "{} records stored, {} arrivals in the instance",
                    self.records.len(),
                    fresh.records.len()
                ),
            });
        }
        let replayed = self.replay_allocation();
        if let Some(index) = (0..replayed.len().max(self.allocation.len())).find(|&i| {
            replayed.get(i).map(|v| v.to_bits()) != self.allocation.get(i).map(|v| v.to_bits())
        }) {
            return Err(Error::ReplayMismatch {
                index,
                detail: "replayed allocation differs from the stored final allocation".into(),
            });
        }
        Ok(())
    }
}

/// Incremental driver for adaptive adversaries that inspect the state
/// between arrivals.
#[derive(Clone, Debug)]
pub struct OnlineRun {
    algorithm: Algorithm,
    state: AlgorithmState,
    records: Vec<ArrivalRecord>,
    certificate: Option<DualCertificate>,
}

impl OnlineRun {
    pub fn new(algorithm: Algorithm, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::Parameter(format!("rank k must be at least 2, got {k}")));
        }
        Ok(OnlineRun {
            algorithm,
            state: AlgorithmState::new(k),
            records: Vec::new(),
            certificate: algorithm.dual_mode().map(|m| DualCertificate::new(k, m)),
        })
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn state(&self) -> &AlgorithmState {
        &self.state
    }

    /// Feeds the next edge; its id must be the next arrival index.
    pub fn arrive(&mut self, edge: &HyperEdge) -> Result<&ArrivalRecord> {
        if edge.id.0 != self.records.len() {
            return Err(Error::Parameter(format!(
                "edge id {} arrives at position {}",
                edge.id,
                self.records.len()
            )));
        }
        let (decision, duals) = match self.algorithm {
            Algorithm::Greedy => (greedy_step(&mut self.state, edge), DualIncrement::default()),
            Algorithm::WaterFill => waterfill_step(&mut self.state, edge),
            Algorithm::WeightedWaterFill => weighted_waterfill_step(&mut self.state, edge),
        };
        if let Some(cert) = &mut self.certificate {
            cert.apply(edge.id.0, &duals);
            for v in &edge.vertices {
                if cert.r.len() <= v.0 {
                    cert.r.resize(v.0 + 1, 0.0);
                }
            }
        }
        self.records.push(ArrivalRecord { decision, duals });
        Ok(self.records.last().expect("just pushed"))
    }

    pub fn allocation(&self, e: EdgeId) -> f64 {
        self.state.allocation(e)
    }

    pub fn objective(&self) -> f64 {
        self.state
            .y
            .iter()
            .zip(&self.state.weights)
            .map(|(y, w)| match self.algorithm {
                Algorithm::WeightedWaterFill => y * w,
                _ => *y,
            })
            .sum()
    }

    pub fn finish(self) -> Transcript {
        let objective = self.objective();
        let k = self.state.price_base().k();
        let mut allocation = self.state.y;
        allocation.resize(self.records.len(), 0.0);
        Transcript {
            algorithm: self.algorithm,
            k,
            records: self.records,
            objective,
            allocation,
            certificate: self.certificate,
        }
    }
}

/// Rejects algorithm/instance combinations the algorithms are not defined on.
pub fn check_compatible(inst: &Instance, algorithm: Algorithm) -> Result<()> {
    let fail = |reason: String| Err(Error::ModeMismatch { algorithm: algorithm.name(), reason });
    if inst.weighted && algorithm != Algorithm::WeightedWaterFill {
        return fail("instance is weighted; use weighted-waterfill".into());
    }
    if algorithm.is_fractional() {
        if let Some(e) = inst.arrivals.iter().find(|e| e.len() != inst.rank_k) {
            return fail(format!(
                "edge {} has {} vertices but the instance has rank {}; pad it first",
                e.id,
                e.len(),
                inst.rank_k
            ));
        }
    }
    Ok(())
}

pub fn run_online(inst: &Instance, algorithm: Algorithm) -> Result<Transcript> {
    check_compatible(inst, algorithm)?;
    let mut run = OnlineRun::new(algorithm, inst.rank_k)?;
    for e in &inst.arrivals {
        run.arrive(e)?;
    }
    let mut t = run.finish();
    if let Some(cert) = &mut t.certificate {
        if cert.r.len() < inst.num_resources {
            cert.r.resize(inst.num_resources, 0.0);
        }
    }
    Ok(t)
}
