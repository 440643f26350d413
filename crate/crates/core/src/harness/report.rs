use std::io::Write;

use serde::Serialize;

use super::ReportRow;
use crate::adversary::Estimate;
use crate::error::Result;

pub const CSV_HEADER: [&str; 12] = [
    "k", "adversary", "params", "seed", "alg", "ALG", "OPT_int", "OPT_frac", "cert_ratio", "emp_ratio", "cert_pass",
    "runtime_ms",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Rows in the fixed column order; absent values are empty fields.
pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.k.to_string(),
            r.adversary.clone(),
            r.params.clone(),
            r.seed.to_string(),
            r.alg.clone(),
            opt(r.alg_value),
            opt(r.opt_int),
            opt(r.opt_frac),
            opt(r.cert_ratio),
            opt(r.emp_ratio),
            opt(r.cert_pass),
            format!("{:.3}", r.runtime_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchSummary {
    pub trials: usize,
    pub failed: usize,
    pub alg: Option<Estimate>,
    pub emp_ratio: Option<Estimate>,
}

impl BenchSummary {
    /// `mean ≤ bound + 3·stderr` for the ALG column.
    pub fn alg_mean_within(&self, bound: f64) -> Option<bool> {
        let e = self.alg?;
        let slack = if e.stderr.is_nan() { 0.0 } else { 3.0 * e.stderr };
        Some(e.mean <= bound + slack)
    }
}

pub fn summarize(rows: &[ReportRow]) -> BenchSummary {
    let est = |v: Vec<f64>| (!v.is_empty()).then(|| Estimate::from_samples(&v));
    BenchSummary {
        trials: rows.len(),
        failed: rows.iter().filter(|r| !r.ok()).count(),
        alg: est(rows.iter().filter_map(|r| r.alg_value).collect()),
        emp_ratio: est(rows.iter().filter_map(|r| r.emp_ratio).collect()),
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    rows: &'a [ReportRow],
    summary: BenchSummary,
}

pub fn write_json<W: Write>(rows: &[ReportRow], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, &JsonReport { rows, summary: summarize(rows) })?;
    writeln!(out)?;
    Ok(())
}
