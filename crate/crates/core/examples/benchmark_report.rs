//! A small benchmark through the library harness, written as CSV to stdout
//! with a summary on stderr.
//!
//! ```text
//! cargo run --release --example benchmark_report > rows.csv
//! ```

use hypermatch::harness::{bench, summarize, write_csv, AdversarySpec, ExperimentConfig, OptMode};
use hypermatch::Algorithm;

fn main() -> hypermatch::Result<()> {
    let mut rows = Vec::new();
    for alg in [Algorithm::Greedy, Algorithm::WaterFill] {
        for k in [3, 4, 6] {
            let mut cfg = ExperimentConfig::new(alg, AdversarySpec::Random { k, edges: 20, resources: 3 * k, weighted: false });
            cfg.trials = 25;
            cfg.opt = OptMode::Both;
            cfg.certify = alg.is_fractional();
            let batch = bench(&cfg)?;
            let s = summarize(&batch);
            if let (Some(a), Some(r)) = (s.alg, s.emp_ratio) {
                eprintln!("{:<10} k={k}  mean ALG {:.3}  mean ALG/OPT {:.3}  failed {}", alg.name(), a.mean, r.mean, s.failed);
            }
            rows.extend(batch);
        }
    }
    write_csv(&rows, std::io::stdout().lock())?;
    Ok(())
}
