//! Builds the dual certificate alongside a water-filling run, checks it,
//! then corrupts one revenue entry to show the check failing.
//!
//! ```text
//! cargo run --example certificate -- 5 3
//! ```

use hypermatch::adversary::random_instance;
use hypermatch::duals::certified_ratio;
use hypermatch::oracle::{opt_fractional, LP_TOL};
use hypermatch::{run_online, verify_certificate, Algorithm, Tolerances};

fn main() -> hypermatch::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer argument"));
    let k = args.next().unwrap_or(5) as usize;
    let seed = args.next().unwrap_or(3);
    let inst = random_instance(k, 30, 3 * k, seed)?;
    let t = run_online(&inst, Algorithm::WaterFill)?;
    let cert = t.certificate.clone().expect("water-filling carries duals");

    let rep = verify_certificate(&inst, &t, &cert, Tolerances::default())?;
    let c = certified_ratio(k)?;
    println!("ALG = {:.6}  dual total = {:.6}", t.objective, cert.total());
    println!("balance gap {:.2e}  min edge slack {:.3e}  pass {}", rep.balance_gap, rep.min_edge_slack, rep.pass);
    println!("c_k = {c:.6}  so OPT_frac <= ALG / c_k = {:.4}", t.objective / c);
    let lp = opt_fractional(&inst, LP_TOL)?;
    println!("actual OPT_frac = {:.4}", lp.primal_value);

    let mut bad = cert.clone();
    let i = bad.r.iter().position(|&r| r > 0.0).unwrap_or(0);
    bad.r[i] *= 0.5;
    let rep = verify_certificate(&inst, &t, &bad, Tolerances::default())?;
    println!("after halving r[{i}]: balance gap {:.2e}  min edge slack {:.3e}  pass {}", rep.balance_gap, rep.min_edge_slack, rep.pass);
    Ok(())
}
