//! Samples the red/blue families and estimates greedy's expected value,
//! which stays near 2 while the optimum grows with k.
//!
//! ```text
//! cargo run --release --example redblue_lower_bound -- 2000
//! ```

use hypermatch::adversary::{expected_value_estimate, gen_gk, gen_hk, verify_redblue, Distribution};
use hypermatch::oracle::opt_integral;
use hypermatch::Algorithm;

fn main() -> hypermatch::Result<()> {
    let trials: usize = std::env::args().nth(1).map_or(1000, |s| s.parse().expect("trials"));

    let g = gen_gk(4, 1)?;
    println!("G_4, seed 1:");
    for (i, (a, b)) in g.phases.iter().enumerate() {
        let show = |e: &hypermatch::EdgeId| {
            let vs: Vec<usize> = g.instance.arrivals[e.0].vertices.iter().map(|v| v.0).collect();
            format!("{:>2} {:?} {:?}", e.0, g.colors[e], vs)
        };
        println!("  phase {i}: {}  |  {}", show(a), show(b));
    }
    assert!(verify_redblue(&g).is_empty());
    println!("  OPT = {}", opt_integral(&g.instance)?.0);
    println!();

    println!("family    k   OPT  E[greedy]  stderr");
    for k in [8, 16, 32, 64] {
        let e = expected_value_estimate(&Distribution::Gk { k }, Algorithm::Greedy, trials, 0)?;
        println!("G_k {k:>6} {:>5} {:>10.4} {:>7.4}", k / 2, e.mean, e.stderr);
    }
    for k in [4, 8, 16, 32] {
        let e = expected_value_estimate(&Distribution::Hk { k }, Algorithm::Greedy, trials, 0)?;
        let h = gen_hk(k, 0)?;
        println!("H_k {k:>6} {:>5} {:>10.4} {:>7.4}   ({} edges)", k, e.mean, e.stderr, h.instance.num_edges());
    }
    Ok(())
}
