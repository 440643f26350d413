//! Argument parsing and subcommands. Exit codes: 0 success, 1 a check
//! failed, 2 usage, parse or input errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use super::{bench, evaluate, summarize, write_csv, write_json, AdversarySpec, ExperimentConfig, OptMode, ReportRow};
use crate::adversary::{gen_gk, gen_hk, random_vertex_arrival, run_staircase};
use crate::duals::{verify_certificate, Tolerances};
use crate::error::{Error, Result};
use crate::hypergraph::{
    lift_edge_decisions, parse_instance, parse_vertex_arrival, reduce_vertex_to_edge_arrival, serialize_instance,
    serialize_vertex_arrival, ReductionMap,
};
use crate::online::{run_online, Algorithm, Transcript};
use crate::oracle::{opt_fractional, opt_fractional_exact, opt_integral, opt_integral_with_cap, LP_TOL};

#[derive(Parser, Debug)]
#[command(name = "hypermatch", version, about = "Online hypergraph matching experiments")]
struct Cli {
    /// Base seed for generators and trials.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Tolerance for LP optimality and certificate edge slack.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AdversaryKind {
    Gk,
    Hk,
    Random,
    Staircase,
    /// Random vertex-arrival groups (input for `reduce`).
    RandomVertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgArg {
    Greedy,
    Waterfill,
    WeightedWaterfill,
}

impl From<AlgArg> for Algorithm {
    fn from(a: AlgArg) -> Self {
        match a {
            AlgArg::Greedy => Algorithm::Greedy,
            AlgArg::Waterfill => Algorithm::WaterFill,
            AlgArg::WeightedWaterfill => Algorithm::WeightedWaterFill,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OptArg {
    None,
    Int,
    Frac,
    Both,
}

impl From<OptArg> for OptMode {
    fn from(o: OptArg) -> Self {
        match o {
            OptArg::None => OptMode::None,
            OptArg::Int => OptMode::Int,
            OptArg::Frac => OptMode::Frac,
            OptArg::Both => OptMode::Both,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct AdversaryArgs {
    #[arg(long, value_enum)]
    adversary: AdversaryKind,
    #[arg(long)]
    k: usize,
    /// Edges per random instance.
    #[arg(long, default_value_t = 20)]
    edges: usize,
    /// Resources per random instance.
    #[arg(long, default_value_t = 30)]
    resources: usize,
    /// Log-uniform weights in [0.1, 10] for random instances.
    #[arg(long)]
    weighted: bool,
    /// Staircase: edges kept per round.
    #[arg(long, default_value_t = 8)]
    l: usize,
    /// Staircase: shrink factor is 1 + delta.
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    /// Random vertex arrival: number of online vertices.
    #[arg(long, default_value_t = 10)]
    groups: usize,
    /// Random vertex arrival: maximum candidate edges per vertex.
    #[arg(long, default_value_t = 3)]
    max_group: usize,
}

impl AdversaryArgs {
    fn spec(&self) -> Result<AdversarySpec> {
        let spec = match self.adversary {
            AdversaryKind::Gk => AdversarySpec::Gk { k: self.k },
            AdversaryKind::Hk => AdversarySpec::Hk { k: self.k },
            AdversaryKind::Random => AdversarySpec::Random {
                k: self.k,
                edges: self.edges,
                resources: self.resources,
                weighted: self.weighted,
            },
            AdversaryKind::Staircase => AdversarySpec::Staircase { k: self.k, l: self.l, delta: self.delta },
            AdversaryKind::RandomVertex => {
                return Err(Error::Parameter("random-vertex instances are only available from gen".into()))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance file.
    Gen {
        #[command(flatten)]
        adversary: AdversaryArgs,
        /// Algorithm the staircase adversary plays against.
        #[arg(long, value_enum, default_value_t = AlgArg::Waterfill)]
        alg: AlgArg,
    },
    /// Run an algorithm on an instance file.
    Run {
        instance: PathBuf,
        #[arg(long, value_enum)]
        alg: AlgArg,
        /// Verify the dual certificate.
        #[arg(long)]
        certify: bool,
        #[arg(long, value_enum, default_value_t = OptArg::None)]
        opt: OptArg,
    },
    /// Run many seeded trials and report one row per trial.
    Bench {
        #[command(flatten)]
        adversary: AdversaryArgs,
        #[arg(long, value_enum)]
        alg: AlgArg,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = OptArg::None)]
        opt: OptArg,
        /// Skip certificate verification.
        #[arg(long)]
        no_certify: bool,
    },
    /// Re-verify a stored run (replay plus certificate).
    Certify { run: PathBuf },
    /// Reduce a vertex-arrival file to edge arrivals, or lift a run back.
    Reduce {
        /// Vertex-arrival input file.
        input: Option<PathBuf>,
        /// Run file of the reduced instance to lift.
        #[arg(long, requires = "mapping")]
        lift: Option<PathBuf>,
        /// Mapping file written by a previous reduce.
        #[arg(long)]
        mapping: Option<PathBuf>,
    },
    /// Offline optima of an instance.
    Opt {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = OptKind::Both)]
        mode: OptKind,
        /// Edge cap for the exact integral search.
        #[arg(long, default_value_t = crate::oracle::INTEGRAL_EDGE_CAP)]
        int_cap: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OptKind {
    Int,
    Frac,
    Both,
    /// Exact rational LP (at most 12 edges).
    Exact,
}

/// Stored by `run --out` and read back by `certify`.
#[derive(Serialize, Deserialize)]
pub struct RunFile {
    pub instance: serde_json::Value,
    pub transcript: Transcript,
    pub report: ReportRow,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::Invalid(_)
        | Error::Parameter(_)
        | Error::ModeMismatch { .. }
        | Error::Io(_)
        | Error::Json(_)
        | Error::Csv(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn sidecar(out: &Path, suffix: &str) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn render_rows(rows: &[ReportRow], format: Format) -> Result<String> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => write_csv(rows, &mut buf)?,
        Format::Json => write_json(rows, &mut buf)?,
    }
    Ok(String::from_utf8(buf).expect("reports are utf-8"))
}

fn tolerances(cli: &Cli) -> Tolerances {
    let mut t = Tolerances::default();
    if let Some(tol) = cli.tol {
        t.slack = tol;
    }
    t
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Gen { adversary, alg } => cmd_gen(cli.seed, out, adversary, (*alg).into()),
        Command::Run { instance, alg, certify, opt } => {
            let mut cfg = ExperimentConfig::new((*alg).into(), AdversarySpec::Gk { k: 2 });
            cfg.certify = *certify;
            cfg.opt = (*opt).into();
            cfg.tolerances = tolerances(cli);
            cfg.lp_tol = cli.tol.unwrap_or(LP_TOL);
            cmd_run(instance, &cfg, cli.format, out)
        }
        Command::Bench { adversary, alg, trials, opt, no_certify } => {
            let mut cfg = ExperimentConfig::new((*alg).into(), adversary.spec()?);
            cfg.trials = *trials;
            cfg.seed = cli.seed;
            cfg.opt = (*opt).into();
            cfg.certify = !no_certify && cfg.algorithm.is_fractional();
            cfg.tolerances = tolerances(cli);
            cfg.lp_tol = cli.tol.unwrap_or(LP_TOL);
            let rows = bench(&cfg)?;
            emit(out, &render_rows(&rows, cli.format)?)?;
            let summary = summarize(&rows);
            if let Some(e) = summary.alg {
                eprintln!("trials {}  failed {}  mean ALG {:.6} (stderr {:.6})", e.trials, summary.failed, e.mean, e.stderr);
            }
            if let Some(e) = summary.emp_ratio {
                eprintln!("mean empirical ratio {:.6} (stderr {:.6})", e.mean, e.stderr);
            }
            for r in rows.iter().filter(|r| r.error.is_some()) {
                eprintln!("trial seed {} failed: {}", r.seed, r.error.as_deref().unwrap_or_default());
            }
            Ok(if summary.failed == 0 { 0 } else { 1 })
        }
        Command::Certify { run } => cmd_certify(run, tolerances(cli)),
        Command::Reduce { input, lift, mapping } => match (input, lift, mapping) {
            (None, Some(run), Some(map)) => cmd_lift(run, map, out),
            (Some(input), None, _) => cmd_reduce(input, out),
            _ => Err(Error::Parameter("reduce takes either an input file or --lift RUN --mapping MAP".into())),
        },
        Command::Opt { instance, mode, int_cap } => cmd_opt(instance, *mode, *int_cap, cli.tol.unwrap_or(LP_TOL), out),
    }
}

fn cmd_gen(seed: u64, out: Option<&Path>, a: &AdversaryArgs, alg: Algorithm) -> Result<i32> {
    match a.adversary {
        AdversaryKind::Gk | AdversaryKind::Hk => {
            let ci = if a.adversary == AdversaryKind::Gk { gen_gk(a.k, seed)? } else { gen_hk(a.k, seed)? };
            emit(out, &serialize_instance(&ci.instance))?;
            if let Some(p) = out {
                fs::write(sidecar(p, ".colors.json"), ci.colors_json())?;
            }
        }
        AdversaryKind::Random => {
            let inst = a.spec()?.sample(seed)?;
            emit(out, &serialize_instance(&inst))?;
        }
        AdversaryKind::Staircase => {
            a.spec()?;
            let (run, _) = run_staircase(a.k, a.l, a.delta, alg)?;
            emit(out, &serialize_instance(&run.instance))?;
            if let Some(p) = out {
                let meta = serde_json::json!({
                    "params": run.params,
                    "algorithm": alg,
                    "iterations": run.iterations,
                });
                fs::write(sidecar(p, ".staircase.json"), serde_json::to_string_pretty(&meta)? + "\n")?;
            }
        }
        AdversaryKind::RandomVertex => {
            let v = random_vertex_arrival(a.k, a.groups, a.max_group, a.resources, seed)?;
            emit(out, &serialize_vertex_arrival(&v))?;
        }
    }
    Ok(0)
}

fn cmd_run(path: &Path, cfg: &ExperimentConfig, format: Format, out: Option<&Path>) -> Result<i32> {
    let text = read(path)?;
    let inst = parse_instance(&text)?;
    if cfg.algorithm == Algorithm::WeightedWaterFill && !inst.weighted {
        eprintln!("warning: instance is unweighted; weighted-waterfill runs with unit weights");
    }
    let start = std::time::Instant::now();
    let transcript = run_online(&inst, cfg.algorithm)?;
    let mut row = ReportRow {
        k: inst.rank_k,
        adversary: "file".into(),
        params: path.display().to_string(),
        seed: 0,
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
    };
    evaluate(cfg, &inst, &transcript, &mut row)?;
    row.runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    let ok = row.ok();
    let rendered = render_rows(std::slice::from_ref(&row), format)?;
    match out {
        Some(p) => {
            let file = RunFile {
                instance: serde_json::from_str(&serialize_instance(&inst))?,
                transcript,
                report: row,
            };
            fs::write(p, serde_json::to_string_pretty(&file)? + "\n")?;
            io::stdout().write_all(rendered.as_bytes())?;
        }
        None => io::stdout().write_all(rendered.as_bytes())?,
    }
    if !ok {
        eprintln!("check failed");
    }
    Ok(if ok { 0 } else { 1 })
}

fn cmd_certify(path: &Path, tol: Tolerances) -> Result<i32> {
    let file: RunFile = serde_json::from_str(&read(path)?).map_err(Error::from_json)?;
    let inst = parse_instance(&file.instance.to_string())?;
    file.transcript.check_replay(&inst)?;
    let cert = file
        .transcript
        .certificate
        .as_ref()
        .ok_or_else(|| Error::MissingDuals("a certificate (greedy runs have none)".into()))?;
    let report = verify_certificate(&inst, &file.transcript, cert, tol)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    if !report.pass {
        eprintln!(
            "certificate failed: balance gap {:e}, min edge slack {:e}",
            report.balance_gap, report.min_edge_slack
        );
    }
    Ok(if report.pass { 0 } else { 1 })
}

fn cmd_reduce(path: &Path, out: Option<&Path>) -> Result<i32> {
    let vinst = parse_vertex_arrival(&read(path)?)?;
    let (inst, map) = reduce_vertex_to_edge_arrival(&vinst);
    emit(out, &serialize_instance(&inst))?;
    if let Some(p) = out {
        fs::write(sidecar(p, ".mapping.json"), serde_json::to_string_pretty(&map)? + "\n")?;
    }
    Ok(0)
}

fn cmd_lift(run: &Path, mapping: &Path, out: Option<&Path>) -> Result<i32> {
    let file: RunFile = serde_json::from_str(&read(run)?).map_err(Error::from_json)?;
    let map: ReductionMap = serde_json::from_str(&read(mapping)?).map_err(Error::from_json)?;
    if file.transcript.algorithm != Algorithm::Greedy {
        return Err(Error::Parameter("only integral (greedy) runs can be lifted".into()));
    }
    let choice = lift_edge_decisions(&map, &file.transcript.matching())?;
    let matched = choice.iter().filter(|c| c.is_some()).count();
    let json = serde_json::json!({ "choices": choice, "matched": matched });
    emit(out, &(serde_json::to_string_pretty(&json)? + "\n"))?;
    Ok(0)
}

fn cmd_opt(path: &Path, mode: OptKind, int_cap: usize, tol: f64, out: Option<&Path>) -> Result<i32> {
    let inst = parse_instance(&read(path)?)?;
    let mut json = serde_json::Map::new();
    if matches!(mode, OptKind::Int | OptKind::Both) {
        let (value, m) = if int_cap == crate::oracle::INTEGRAL_EDGE_CAP {
            opt_integral(&inst)?
        } else {
            opt_integral_with_cap(&inst, int_cap)?
        };
        json.insert("opt_int".into(), value.into());
        json.insert("matching".into(), serde_json::to_value(&m.chosen)?);
    }
    if matches!(mode, OptKind::Frac | OptKind::Both) {
        let lp = opt_fractional(&inst, tol)?;
        json.insert("opt_frac".into(), lp.primal_value.into());
        json.insert("lp".into(), serde_json::to_value(&lp)?);
    }
    if mode == OptKind::Exact {
        let exact = opt_fractional_exact(&inst)?;
        json.insert("opt_frac_exact".into(), exact.value.to_string().into());
        json.insert("lp".into(), serde_json::to_value(exact.to_solution(&inst))?);
    }
    emit(out, &(serde_json::to_string_pretty(&json)? + "\n"))?;
    Ok(0)
}
