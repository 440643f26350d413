//! Independent reference implementations used by the integration tests.
//!
//! The fine-step simulations below follow the continuous loops literally:
//! grow the arriving edge by a small `dx`, recompute every price and fill
//! from the raw allocation, repeat. They share no code with the library's
//! closed-form and event-driven implementations.

#![allow(dead_code)]

use hypermatch::Instance;

pub const FINE_STEP: f64 = 1e-6;

fn base(k: usize) -> f64 {
    let k = k as f64;
    k * k.ln()
}

/// Unweighted water-filling by fixed increments.
pub fn fine_waterfill(inst: &Instance, dx: f64) -> Vec<f64> {
    let b = base(inst.rank_k);
    let mut x = vec![0.0f64; inst.num_resources];
    let mut y = vec![0.0f64; inst.num_edges()];
    for e in &inst.arrivals {
        loop {
            let price: f64 = e.vertices.iter().map(|v| b.powf(x[v.0] - 1.0)).sum();
            if price >= 1.0 {
                break;
            }
            y[e.id.0] += dx;
            for v in &e.vertices {
                x[v.0] += dx;
            }
        }
    }
    y
}

/// Weighted water-filling with free disposal by fixed increments.
///
/// Each step: stop once `Σ_i ∫_0^{w_e} B^{f_i(t)-1} dt ≥ w_e`; otherwise
/// every resource of `e` that would overflow (and is not already relieved
/// by another chosen victim) picks its lightest other edge with positive
/// allocation. If that edge is not lighter than `e`, the arrival ends.
/// Distinct victims lose `dx` each and `e` gains `dx`.
pub fn fine_weighted_waterfill(inst: &Instance, dx: f64) -> Vec<f64> {
    let b = base(inst.rank_k);
    let n = inst.num_edges();
    let mut y = vec![0.0f64; n];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); inst.num_resources];
    let weight: Vec<f64> = inst.arrivals.iter().map(|e| e.weight).collect();

    for e in &inst.arrivals {
        let id = e.id.0;
        let w = e.weight;
        for v in &e.vertices {
            incident[v.0].push(id);
            incident[v.0].sort_by(|&a, &c| weight[a].total_cmp(&weight[c]).then(a.cmp(&c)));
        }
        let mut order: Vec<usize> = e.vertices.iter().map(|v| v.0).collect();
        order.sort_unstable();

        loop {
            let mut price = 0.0;
            for &i in &order {
                // pieces of f_i on (w_{j-1}, w_j], ascending weights
                let list = &incident[i];
                let mut suffix: f64 = list.iter().map(|&f| y[f]).sum();
                let mut lo = 0.0f64;
                for &f in list {
                    let hi = weight[f].min(w);
                    if hi > lo {
                        price += (hi - lo) * b.powf(suffix - 1.0);
                        lo = hi;
                    }
                    suffix -= y[f];
                }
                if w > lo {
                    price += (w - lo) / b;
                }
            }
            if price >= w {
                break;
            }

            let mut victims: Vec<usize> = Vec::new();
            let mut blocked = false;
            for &i in &order {
                let fill: f64 = incident[i].iter().map(|&f| y[f]).sum();
                if fill + dx <= 1.0 {
                    continue;
                }
                if victims.iter().any(|&v| inst.arrivals[v].vertices.iter().any(|r| r.0 == i)) {
                    continue;
                }
                match incident[i].iter().copied().find(|&f| f != id && y[f] > 0.0) {
                    Some(f) if weight[f] < w => victims.push(f),
                    _ => {
                        blocked = true;
                        break;
                    }
                }
            }
            if blocked {
                break;
            }
            y[id] += dx;
            for v in victims {
                y[v] = (y[v] - dx).max(0.0);
            }
        }
    }
    y
}

/// Maximum matching size by trying every subset (tiny instances only).
pub fn brute_force_opt(inst: &Instance) -> f64 {
    let n = inst.num_edges();
    assert!(n <= 20, "brute force limited to 20 edges");
    let mut best = 0.0f64;
    for mask in 0u32..(1 << n) {
        let edges: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let disjoint = edges.iter().enumerate().all(|(a, &i)| {
            edges[a + 1..].iter().all(|&j| !inst.arrivals[i].intersects(&inst.arrivals[j]))
        });
        if disjoint {
            let v: f64 = edges
                .iter()
                .map(|&i| if inst.weighted { inst.arrivals[i].weight } else { 1.0 })
                .sum();
            best = best.max(v);
        }
    }
    best
}

/// `(1 - 1/ln k) / (ln k + ln ln k)`, written out independently.
pub fn c_k(k: usize) -> f64 {
    let l = (k as f64).ln();
    (1.0 - 1.0 / l) / (l + l.ln())
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
