//! Adaptive staircase adversary against deterministic fractional algorithms.
//!
//! Starting from `l` disjoint fresh `k`-edges, each round shrinks the edge
//! size to `m ← ⌊m/(1+δ)⌋`, re-partitions the surviving resources `U` into
//! size-`m` edges, and keeps only the `l` edges the algorithm covered most.
//! Every edge is padded with fresh dummy resources so the instance stays
//! `k`-uniform. Edges that are not kept are never touched again, so they form
//! a large matching the algorithm could not take advantage of.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, HyperEdge, Instance, IntegralMatching, ResourceId};
use crate::online::{Algorithm, OnlineRun, Transcript};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StaircaseParams {
    pub k: usize,
    pub l: usize,
    pub delta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StaircaseIteration {
    /// Number of surviving (non-dummy) resources in each edge of this round.
    pub m: usize,
    pub created: Vec<EdgeId>,
    pub selected: Vec<EdgeId>,
    /// `U` after selection, ascending.
    pub survivors: Vec<ResourceId>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StaircaseRun {
    pub params: StaircaseParams,
    pub instance: Instance,
    /// Round 0 is the initial batch of `l` disjoint edges.
    pub iterations: Vec<StaircaseIteration>,
}

impl StaircaseRun {
    /// Number of shrinking rounds after the initial batch.
    pub fn rounds(&self) -> usize {
        self.iterations.len() - 1
    }

    pub fn selected(&self) -> Vec<EdgeId> {
        self.iterations.iter().flat_map(|it| it.selected.iter().copied()).collect()
    }

    /// Created but never selected edges, in arrival order.
    pub fn non_selected(&self) -> Vec<EdgeId> {
        self.iterations
            .iter()
            .flat_map(|it| it.created.iter().filter(|e| !it.selected.contains(e)).copied())
            .collect()
    }

    pub fn non_selected_matching(&self) -> IntegralMatching {
        IntegralMatching { chosen: self.non_selected() }
    }

    /// `y(E*)`, the allocation on all selected edges.
    pub fn selected_allocation(&self, transcript: &Transcript) -> f64 {
        self.selected().iter().map(|e| transcript.allocation[e.0]).sum()
    }

    /// Lower bound on `y(E*)`: each round's top `l` edges hold at least an
    /// `l / created` share of that round's allocation.
    pub fn selected_allocation_bound(&self, transcript: &Transcript) -> f64 {
        self.iterations
            .iter()
            .map(|it| {
                let round: f64 = it.created.iter().map(|e| transcript.allocation[e.0]).sum();
                round * it.selected.len() as f64 / it.created.len() as f64
            })
            .sum()
    }
}

fn next_size(m: usize, delta: f64) -> usize {
    (m as f64 / (1.0 + delta)).floor() as usize
}

/// Runs the adversary against `algorithm` and returns the construction with
/// the algorithm's transcript.
pub fn run_staircase(
    k: usize,
    l: usize,
    delta: f64,
    algorithm: Algorithm,
) -> Result<(StaircaseRun, Transcript)> {
    if k < 2 || l < 2 || !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::Parameter(format!(
            "staircase needs k >= 2, l >= 2 and delta > 0 (got k={k}, l={l}, delta={delta})"
        )));
    }
    let mut run = OnlineRun::new(algorithm, k)?;
    let mut edges: Vec<HyperEdge> = Vec::new();
    let mut next = 0usize;
    let mut iterations = Vec::new();

    let feed = |core: &[usize], edges: &mut Vec<HyperEdge>, next: &mut usize, run: &mut OnlineRun| {
        let pad = k - core.len();
        let vs = core.iter().copied().chain(*next..*next + pad);
        *next += pad;
        let e = HyperEdge::new(edges.len(), vs, 1.0);
        run.arrive(&e)?;
        let id = e.id;
        edges.push(e);
        Ok::<EdgeId, Error>(id)
    };

    let mut created = Vec::with_capacity(l);
    let mut survivors = Vec::with_capacity(l * k);
    for _ in 0..l {
        let core: Vec<usize> = (next..next + k).collect();
        next += k;
        survivors.extend(core.iter().copied());
        created.push(feed(&core, &mut edges, &mut next, &mut run)?);
    }
    iterations.push(StaircaseIteration {
        m: k,
        selected: created.clone(),
        created,
        survivors: survivors.iter().copied().map(ResourceId).collect(),
    });

    let mut m = k;
    loop {
        m = next_size(m, delta);
        if m == 0 {
            break;
        }
        survivors.sort_unstable();
        let mut created = Vec::new();
        let mut cores: Vec<Vec<usize>> = Vec::new();
        for chunk in survivors.chunks_exact(m) {
            created.push(feed(chunk, &mut edges, &mut next, &mut run)?);
            cores.push(chunk.to_vec());
        }
        let mut ranked: Vec<usize> = (0..created.len()).collect();
        ranked.sort_by(|&a, &b| {
            run.allocation(created[b])
                .total_cmp(&run.allocation(created[a]))
                .then(created[a].cmp(&created[b]))
        });
        ranked.truncate(l);
        ranked.sort_unstable();
        let selected: Vec<EdgeId> = ranked.iter().map(|&i| created[i]).collect();
        survivors = ranked.iter().flat_map(|&i| cores[i].iter().copied()).collect();
        survivors.sort_unstable();
        iterations.push(StaircaseIteration {
            m,
            created,
            selected,
            survivors: survivors.iter().copied().map(ResourceId).collect(),
        });
    }

    let instance = Instance { rank_k: k, num_resources: next, arrivals: edges, weighted: false };
    let mut transcript = run.finish();
    if let Some(cert) = &mut transcript.certificate {
        cert.r.resize(instance.num_resources, 0.0);
    }
    Ok((StaircaseRun { params: StaircaseParams { k, l, delta }, instance, iterations }, transcript))
}
