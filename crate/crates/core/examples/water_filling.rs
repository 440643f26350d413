//! Water-filling on a small random instance, one line per arrival, then the
//! same run against the offline fractional optimum.
//!
//! ```text
//! cargo run --example water_filling -- 4 12 10 7
//! ```

use hypermatch::adversary::random_instance;
use hypermatch::online::{waterfill_price, AlgorithmState, PriceBase};
use hypermatch::oracle::{opt_fractional, LP_TOL};
use hypermatch::{run_online, Algorithm, OnlineRun};

fn arg(i: usize, default: u64) -> u64 {
    std::env::args().nth(i).map_or(default, |s| s.parse().expect("integer argument"))
}

fn main() -> hypermatch::Result<()> {
    let (k, edges, resources, seed) = (arg(1, 4) as usize, arg(2, 12) as usize, arg(3, 10) as usize, arg(4, 7));
    let inst = random_instance(k, edges, resources, seed)?;
    let base = PriceBase::new(k);
    println!("k = {k}, B = k ln k = {:.4}", base.base());

    // price before each edge, computed on a copy of the state
    let mut run = OnlineRun::new(Algorithm::WaterFill, k)?;
    let mut shadow = AlgorithmState::new(k);
    for e in &inst.arrivals {
        let before = waterfill_price(&shadow, e);
        let rec = run.arrive(e)?;
        hypermatch::online::waterfill_step(&mut shadow, e);
        let vs: Vec<usize> = e.vertices.iter().map(|v| v.0).collect();
        println!("edge {:>2} {:<16} price {before:.4} -> {:.4}  dy {:.5}", e.id.0, format!("{vs:?}"), rec.decision.price_at_stop, rec.decision.delta_y);
    }
    let fills = run.state().fills().to_vec();
    let t = run.finish();
    println!("fills: {}", fills.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(" "));

    let lp = opt_fractional(&inst, LP_TOL)?;
    let same = run_online(&inst, Algorithm::WaterFill)?;
    assert_eq!(same.allocation, t.allocation);
    println!("ALG = {:.5}  OPT_frac = {:.5}  ratio {:.4}", t.objective, lp.primal_value, t.objective / lp.primal_value);
    Ok(())
}
