//! Greedy takes the first edge it can. On the gadget below it takes one
//! big edge and blocks k disjoint ones.
//!
//! ```text
//! cargo run --example greedy_tightness -- 6
//! ```

use hypermatch::adversary::greedy_tightness_gadget;
use hypermatch::oracle::opt_integral;
use hypermatch::{run_online, Algorithm};

fn main() -> hypermatch::Result<()> {
    let k: usize = std::env::args().nth(1).map_or(5, |s| s.parse().expect("k"));
    let inst = greedy_tightness_gadget(k)?;
    let t = run_online(&inst, Algorithm::Greedy)?;
    let (opt, m) = opt_integral(&inst)?;
    for e in &inst.arrivals {
        let taken = if t.allocation[e.id.0] > 0.0 { "greedy" } else if m.chosen.contains(&e.id) { "opt" } else { "" };
        let vs: Vec<usize> = e.vertices.iter().map(|v| v.0).collect();
        println!("edge {:>2} {:<30} {taken}", e.id.0, format!("{vs:?}"));
    }
    println!("greedy = {}  OPT = {opt}  ratio = 1/{}", t.objective, opt / t.objective);
    Ok(())
}
