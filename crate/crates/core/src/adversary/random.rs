use rand::seq::index::sample;
use rand::Rng as _;

use super::rng;
use crate::error::{Error, Result};
use crate::hypergraph::{HyperEdge, Instance, VertexArrivalInstance};

fn check(k: usize, resources: usize) -> Result<()> {
    if k < 2 || resources < k {
        return Err(Error::Parameter(format!(
            "random instances need k >= 2 and at least k resources (k={k}, resources={resources})"
        )));
    }
    Ok(())
}

fn pick(r: &mut super::Rng, resources: usize, k: usize) -> Vec<usize> {
    let mut vs = sample(r, resources, k).into_vec();
    vs.sort_unstable();
    vs
}

/// `k`-uniform instance whose edges are independent uniform `k`-subsets.
pub fn random_instance(k: usize, edges: usize, resources: usize, seed: u64) -> Result<Instance> {
    check(k, resources)?;
    let mut r = rng(seed);
    let e = (0..edges).map(|_| pick(&mut r, resources, k)).collect();
    Ok(Instance::unweighted(k, resources, e))
}

/// Like [`random_instance`] with weights log-uniform on `[lo, hi]`.
pub fn random_weighted_instance(
    k: usize,
    edges: usize,
    resources: usize,
    (lo, hi): (f64, f64),
    seed: u64,
) -> Result<Instance> {
    check(k, resources)?;
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(Error::Parameter(format!("weight range [{lo}, {hi}] must be positive")));
    }
    let mut r = rng(seed);
    let (a, b) = (lo.ln(), hi.ln());
    let e = (0..edges)
        .map(|_| {
            let vs = pick(&mut r, resources, k);
            let w = (a + (b - a) * r.random::<f64>()).exp();
            (vs, w)
        })
        .collect();
    Ok(Instance::weighted(k, resources, e))
}

/// Groups of 1 to `max_group` candidate edges with 1 to `k` resources each.
pub fn random_vertex_arrival(
    k: usize,
    groups: usize,
    max_group: usize,
    resources: usize,
    seed: u64,
) -> Result<VertexArrivalInstance> {
    if k < 1 || resources < k || max_group < 1 {
        return Err(Error::Parameter(format!(
            "vertex-arrival instances need k >= 1, max_group >= 1 and at least k resources \
             (k={k}, max_group={max_group}, resources={resources})"
        )));
    }
    let mut r = rng(seed);
    let groups = (0..groups)
        .map(|_| {
            let size = r.random_range(1..=max_group);
            (0..size)
                .map(|i| {
                    let len = r.random_range(1..=k);
                    HyperEdge::new(i, pick(&mut r, resources, len), 1.0)
                })
                .collect()
        })
        .collect();
    Ok(VertexArrivalInstance { rank_k: k, num_resources: resources, groups, weighted: false })
}

/// A `k`-edge followed by `k` disjoint edges, each meeting it in one
/// resource. Greedy must take the first edge and then nothing else, while
/// the later `k` edges form a matching.
pub fn greedy_tightness_gadget(k: usize) -> Result<Instance> {
    check(k, k)?;
    let mut edges = vec![(0..k).collect::<Vec<_>>()];
    let mut next = k;
    for i in 0..k {
        edges.push(std::iter::once(i).chain(next..next + k - 1).collect());
        next += k - 1;
    }
    Ok(Instance::unweighted(k, next, edges))
}
