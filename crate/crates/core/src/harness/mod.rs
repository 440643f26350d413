//! Experiment runner behind the `hypermatch` binary.
//!
//! A trial samples one instance (or drives the staircase adversary), runs an
//! online algorithm, optionally checks its dual certificate and compares it
//! with offline optima. Trials are independent and run in parallel; rows
//! come back in trial order.

pub mod cli;
mod report;

pub use report::{summarize, write_csv, write_json, BenchSummary, CSV_HEADER};

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adversary::{gen_gk, gen_hk, random_instance, random_weighted_instance, run_staircase};
use crate::duals::{certified_ratio, in_proof_domain, verify_certificate, Tolerances};
use crate::error::{Error, Result};
use crate::hypergraph::Instance;
use crate::online::{run_online, Algorithm, Transcript};
use crate::oracle::{disjoint_lower_bound, opt_fractional, opt_integral, LP_TOL};

/// Instance source; serializes as `{"adversary": "gk", "k": 8, ...}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "adversary", rename_all = "lowercase")]
pub enum AdversarySpec {
    Gk { k: usize },
    Hk { k: usize },
    Staircase { k: usize, l: usize, delta: f64 },
    Random {
        k: usize,
        edges: usize,
        resources: usize,
        #[serde(default)]
        weighted: bool,
    },
}

impl AdversarySpec {
    pub fn name(&self) -> &'static str {
        match self {
            AdversarySpec::Gk { .. } => "gk",
            AdversarySpec::Hk { .. } => "hk",
            AdversarySpec::Staircase { .. } => "staircase",
            AdversarySpec::Random { .. } => "random",
        }
    }

    pub fn k(&self) -> usize {
        match *self {
            AdversarySpec::Gk { k }
            | AdversarySpec::Hk { k }
            | AdversarySpec::Staircase { k, .. }
            | AdversarySpec::Random { k, .. } => k,
        }
    }

    /// Checks the parameter domain without generating anything.
    pub fn validate(&self) -> Result<()> {
        match *self {
            AdversarySpec::Gk { k } if k < 2 || k % 2 == 1 => {
                Err(Error::Parameter(format!("k must be even and at least 2, got {k}")))
            }
            AdversarySpec::Hk { k } if k < 2 || !k.is_power_of_two() => {
                Err(Error::Parameter(format!("k must be a power of 2, got {k}")))
            }
            AdversarySpec::Staircase { k, l, delta } if k < 2 || l < 2 || !(delta > 0.0) => Err(
                Error::Parameter(format!("staircase needs k >= 2, l >= 2, delta > 0; got k={k}, l={l}, delta={delta}")),
            ),
            AdversarySpec::Random { k, resources, .. } if k < 2 || resources < k => Err(Error::Parameter(
                format!("random instances need k >= 2 and at least k resources; got k={k}, resources={resources}"),
            )),
            _ => Ok(()),
        }
    }

    /// Non-adaptive instance for `seed`; the staircase has none.
    pub fn sample(&self, seed: u64) -> Result<Instance> {
        match *self {
            AdversarySpec::Gk { k } => Ok(gen_gk(k, seed)?.instance),
            AdversarySpec::Hk { k } => Ok(gen_hk(k, seed)?.instance),
            AdversarySpec::Random { k, edges, resources, weighted: false } => random_instance(k, edges, resources, seed),
            AdversarySpec::Random { k, edges, resources, weighted: true } => {
                random_weighted_instance(k, edges, resources, (0.1, 10.0), seed)
            }
            AdversarySpec::Staircase { .. } => {
                Err(Error::Parameter("the staircase adversary is adaptive; it needs an algorithm".into()))
            }
        }
    }
}

impl fmt::Display for AdversarySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdversarySpec::Gk { k } | AdversarySpec::Hk { k } => write!(f, "k={k}"),
            AdversarySpec::Staircase { k, l, delta } => write!(f, "k={k};l={l};delta={delta}"),
            AdversarySpec::Random { k, edges, resources, weighted } => {
                write!(f, "k={k};edges={edges};resources={resources}")?;
                if *weighted {
                    write!(f, ";weighted")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptMode {
    #[default]
    None,
    Int,
    Frac,
    Both,
}

impl OptMode {
    pub fn integral(self) -> bool {
        matches!(self, OptMode::Int | OptMode::Both)
    }

    pub fn fractional(self) -> bool {
        matches!(self, OptMode::Frac | OptMode::Both)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub adversary: AdversarySpec,
    pub trials: usize,
    /// Trial `t` uses seed `seed + t`.
    pub seed: u64,
    pub certify: bool,
    pub opt: OptMode,
    pub tolerances: Tolerances,
    pub lp_tol: f64,
}

impl ExperimentConfig {
    pub fn new(algorithm: Algorithm, adversary: AdversarySpec) -> Self {
        ExperimentConfig {
            algorithm,
            adversary,
            trials: 1,
            seed: 0,
            certify: algorithm.is_fractional(),
            opt: OptMode::None,
            tolerances: Tolerances::default(),
            lp_tol: LP_TOL,
        }
    }
}

/// One line of a report. Oracle columns are `None` when not computed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub k: usize,
    pub adversary: String,
    pub params: String,
    pub seed: u64,
    pub alg: String,
    #[serde(rename = "ALG")]
    pub alg_value: Option<f64>,
    #[serde(rename = "OPT_int")]
    pub opt_int: Option<f64>,
    #[serde(rename = "OPT_frac")]
    pub opt_frac: Option<f64>,
    /// Certified disjoint-edge lower bound on OPT (staircase runs).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opt_lower_bound: Option<f64>,
    pub cert_ratio: Option<f64>,
    pub emp_ratio: Option<f64>,
    pub cert_pass: Option<bool>,
    pub runtime_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ReportRow {
    /// The proven guarantee of the algorithm holds against whichever
    /// optimum was computed (`None` if nothing to compare against).
    pub fn guarantee_holds(&self) -> Option<bool> {
        let alg = self.alg_value?;
        let ratio = self.cert_ratio?;
        let opt = match self.alg.as_str() {
            "greedy" => self.opt_int?,
            _ if in_proof_domain(self.k) => self.opt_frac?,
            _ => return None,
        };
        Some(alg >= ratio * opt - 1e-9 * opt.max(1.0))
    }

    /// False when the trial errored, its certificate failed or its
    /// guarantee was violated.
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.cert_pass != Some(false) && self.guarantee_holds() != Some(false)
    }
}

/// The guarantee the row's algorithm is compared against: `1/k` for greedy
/// and the certified ratio for the water-filling variants.
pub fn guarantee_ratio(algorithm: Algorithm, k: usize) -> Option<f64> {
    match algorithm {
        Algorithm::Greedy => Some(1.0 / k as f64),
        _ => certified_ratio(k).ok(),
    }
}

/// Fills the algorithm, certificate and oracle columns for a finished run.
pub fn evaluate(
    cfg: &ExperimentConfig,
    inst: &Instance,
    transcript: &Transcript,
    row: &mut ReportRow,
) -> Result<()> {
    row.k = inst.rank_k;
    row.alg_value = Some(transcript.objective);
    row.cert_ratio = guarantee_ratio(cfg.algorithm, inst.rank_k);
    if cfg.certify {
        if let Some(cert) = &transcript.certificate {
            row.cert_pass = Some(verify_certificate(inst, transcript, cert, cfg.tolerances)?.pass);
        }
    }
    if cfg.opt.integral() {
        row.opt_int = Some(opt_integral(inst)?.0);
    }
    if cfg.opt.fractional() {
        row.opt_frac = Some(opt_fractional(inst, cfg.lp_tol)?.primal_value);
    }
    let denom = row.opt_frac.or(row.opt_int).or(row.opt_lower_bound);
    row.emp_ratio = denom.filter(|d| *d > 0.0).map(|d| transcript.objective / d);
    Ok(())
}

fn blank_row(cfg: &ExperimentConfig, seed: u64) -> ReportRow {
    ReportRow {
        k: cfg.adversary.k(),
        adversary: cfg.adversary.name().into(),
        params: cfg.adversary.to_string(),
        seed,
        alg: cfg.algorithm.name().into(),
        alg_value: None,
        opt_int: None,
        opt_frac: None,
        opt_lower_bound: None,
        cert_ratio: None,
        emp_ratio: None,
        cert_pass: None,
        runtime_ms: 0.0,
        error: None,
    }
}

/// Runs one trial; failures are reported in the row rather than returned.
pub fn run_trial(cfg: &ExperimentConfig, seed: u64) -> ReportRow {
    let start = Instant::now();
    let mut row = blank_row(cfg, seed);
    let outcome = (|| -> Result<()> {
        let (inst, transcript) = match cfg.adversary {
            AdversarySpec::Staircase { k, l, delta } => {
                let (run, t) = run_staircase(k, l, delta, cfg.algorithm)?;
                row.opt_lower_bound = Some(disjoint_lower_bound(&run.instance, &run.non_selected())?);
                (run.instance, t)
            }
            _ => {
                let inst = cfg.adversary.sample(seed)?;
                let t = run_online(&inst, cfg.algorithm)?;
                (inst, t)
            }
        };
        evaluate(cfg, &inst, &transcript, &mut row)
    })();
    if let Err(e) = outcome {
        row.error = Some(e.to_string());
    }
    row.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    row
}

/// All trials of `cfg`, in trial order.
pub fn bench(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    if cfg.trials == 0 {
        return Err(Error::Parameter("trials must be at least 1".into()));
    }
    cfg.adversary.validate()?;
    Ok((0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(cfg, cfg.seed.wrapping_add(t)))
        .collect())
}
