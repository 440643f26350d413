//! Offline baselines: exact integral optimum, the LP in floating point and
//! in exact rationals, and the LP duals.
//!
//! ```text
//! cargo run --example offline_optima
//! ```

use hypermatch::adversary::random_weighted_instance;
use hypermatch::oracle::{opt_fractional, opt_fractional_exact, opt_integral, LP_TOL};
use hypermatch::Instance;

fn report(name: &str, inst: &Instance) -> hypermatch::Result<()> {
    let (int, m) = opt_integral(inst)?;
    let lp = opt_fractional(inst, LP_TOL)?;
    let exact = opt_fractional_exact(inst)?;
    println!("{name}: OPT_int = {int:.4} via {:?}", m.chosen.iter().map(|e| e.0).collect::<Vec<_>>());
    println!("  OPT_frac = {:.6} (exact {}), duality gap {:.1e}", lp.primal_value, exact.value, lp.gap);
    let y: Vec<String> = lp.primal.iter().filter(|(_, v)| **v > 1e-9).map(|(e, v)| format!("y{}={v:.3}", e.0)).collect();
    let z: Vec<String> = lp.dual.iter().filter(|(_, v)| **v > 1e-9).map(|(r, v)| format!("z{}={v:.3}", r.0)).collect();
    println!("  primal {}", y.join(" "));
    println!("  dual   {}", z.join(" "));
    Ok(())
}

fn main() -> hypermatch::Result<()> {
    // the Fano plane: every two lines meet, so OPT_int = 1 while OPT_frac = 7/3
    let fano = Instance::unweighted(
        3,
        7,
        vec![vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6], vec![1, 3, 5], vec![1, 4, 6], vec![2, 3, 6], vec![2, 4, 5]],
    );
    report("Fano plane", &fano)?;
    report("random weighted", &random_weighted_instance(3, 12, 9, (0.5, 4.0), 1)?)?;
    Ok(())
}
