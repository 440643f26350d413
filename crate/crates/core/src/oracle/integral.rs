use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Instance, IntegralMatching};

pub const INTEGRAL_EDGE_CAP: usize = 30;

/// Maximum-weight (or maximum-cardinality for unweighted instances) set of
/// disjoint edges, by exhaustive branch and bound on the conflict graph.
pub fn opt_integral(inst: &Instance) -> Result<(f64, IntegralMatching)> {
    opt_integral_with_cap(inst, INTEGRAL_EDGE_CAP)
}

pub fn opt_integral_with_cap(inst: &Instance, cap: usize) -> Result<(f64, IntegralMatching)> {
    let n = inst.num_edges();
    if n > cap.min(64) {
        return Err(Error::CapExceeded { what: "exact integral optimum edge count", size: n, cap: cap.min(64) });
    }
    let weight = |e: usize| if inst.weighted { inst.arrivals[e].weight } else { 1.0 };
    // Heavy edges first so good incumbents show up early.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| weight(b).total_cmp(&weight(a)).then(a.cmp(&b)));
    let w: Vec<f64> = order.iter().map(|&e| weight(e)).collect();
    let mut conflict = vec![0u64; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && inst.arrivals[order[i]].intersects(&inst.arrivals[order[j]]) {
                conflict[i] |= 1 << j;
            }
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = Search { w: &w, conflict: &conflict, best: 0.0, best_set: 0 };
    search.go(all, 0, 0.0);

    let mut chosen: Vec<EdgeId> = (0..n)
        .filter(|i| search.best_set >> i & 1 == 1)
        .map(|i| EdgeId(order[i]))
        .collect();
    chosen.sort();
    let m = IntegralMatching { chosen };
    debug_assert!(m.check_disjoint(inst).is_ok());
    let value = m.chosen.iter().map(|e| weight(e.0)).sum();
    Ok((value, m))
}

struct Search<'a> {
    w: &'a [f64],
    conflict: &'a [u64],
    best: f64,
    best_set: u64,
}

impl Search<'_> {
    fn go(&mut self, candidates: u64, chosen: u64, value: f64) {
        if value > self.best {
            self.best = value;
            self.best_set = chosen;
        }
        if candidates == 0 {
            return;
        }
        let mut bound = value;
        let mut c = candidates;
        while c != 0 {
            bound += self.w[c.trailing_zeros() as usize];
            c &= c - 1;
        }
        if bound <= self.best {
            return;
        }
        let i = candidates.trailing_zeros() as usize;
        let bit = 1u64 << i;
        self.go(candidates & !bit & !self.conflict[i], chosen | bit, value + self.w[i]);
        self.go(candidates & !bit, chosen, value);
    }
}

/// Value of a set of edges after checking that they are pairwise disjoint;
/// any such set lower-bounds the integral optimum.
pub fn disjoint_lower_bound(inst: &Instance, edges: &[EdgeId]) -> Result<f64> {
    let m = IntegralMatching { chosen: edges.to_vec() };
    m.check_disjoint(inst)?;
    Ok(if inst.weighted { m.weight(inst) } else { m.len() as f64 })
}
