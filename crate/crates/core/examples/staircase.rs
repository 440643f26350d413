//! Plays the staircase adversary against water-filling and prints how the
//! algorithm's value compares with the matching it was steered away from.
//!
//! ```text
//! cargo run --release --example staircase -- 1024 64 0.25
//! ```

use hypermatch::adversary::run_staircase;
use hypermatch::oracle::disjoint_lower_bound;
use hypermatch::Algorithm;

fn main() -> hypermatch::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let k: usize = args.first().map_or(Ok(256), |s| s.parse()).expect("k");
    let l: usize = args.get(1).map_or(Ok(16), |s| s.parse()).expect("l");
    let delta: f64 = args.get(2).map_or(Ok(0.25), |s| s.parse()).expect("delta");

    let (run, t) = run_staircase(k, l, delta, Algorithm::WaterFill)?;
    println!("round      m  created  y(round)  y(selected)");
    for (i, it) in run.iterations.iter().enumerate() {
        let y = |ids: &[hypermatch::EdgeId]| ids.iter().map(|e| t.allocation[e.0]).sum::<f64>();
        println!("{i:>5} {:>6} {:>8} {:>9.4} {:>12.4}", it.m, it.created.len(), y(&it.created), y(&it.selected));
    }
    let lb = disjoint_lower_bound(&run.instance, &run.non_selected())?;
    let first: f64 = run.iterations[0].selected.iter().map(|e| t.allocation[e.0]).sum();
    println!();
    println!("edges {}  rounds T = {}", run.instance.num_edges(), run.rounds());
    println!("ALG = {:.4}", t.objective);
    println!("y(E*) = {:.4} (without round 0: {:.4}), l = {l}", run.selected_allocation(&t), run.selected_allocation(&t) - first);
    println!("disjoint lower bound on OPT = {lb}  (T(δl-1) = {:.1})", run.rounds() as f64 * (delta * l as f64 - 1.0));
    println!("ALG / bound = {:.4}   2 / ln k = {:.4}", t.objective / lb, 2.0 / (k as f64).ln());
    Ok(())
}
