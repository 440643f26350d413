use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn hypermatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypermatch")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen_random(dir: &Path, seed: &str) -> PathBuf {
    let inst = path(dir, "inst.json");
    let o = hypermatch(&[
        "gen", "--adversary", "random", "--k", "3", "--edges", "15", "--resources", "12", "--seed", seed, "--out",
        s(&inst),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    inst
}

fn run_to_file(dir: &Path, inst: &Path, alg: &str) -> PathBuf {
    let run = path(dir, &format!("{alg}.run.json"));
    let o = hypermatch(&["run", s(inst), "--alg", alg, "--certify", "--opt", "both", "--out", s(&run)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    run
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&hypermatch(&[])), 2);
    assert_eq!(code(&hypermatch(&["run"])), 2);
    assert_eq!(code(&hypermatch(&["bench", "--adversary", "gk", "--k", "4", "--alg", "nope"])), 2);
}

#[test]
fn bad_parameters_exit_2() {
    let o = hypermatch(&["gen", "--adversary", "hk", "--k", "6"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("error"));
    let o = hypermatch(&["bench", "--adversary", "gk", "--k", "8", "--alg", "greedy", "--trials", "0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn missing_and_malformed_files_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&hypermatch(&["run", s(&path(dir.path(), "absent.json")), "--alg", "greedy"])), 2);
    let bad = path(dir.path(), "bad.json");
    std::fs::write(&bad, "{\"k\": 3, \"arrivals\": [").unwrap();
    assert_eq!(code(&hypermatch(&["run", s(&bad), "--alg", "greedy"])), 2);
    let invalid = path(dir.path(), "invalid.json");
    std::fs::write(&invalid, r#"{"k": 2, "num_resources": 3, "arrivals": [{"vertices": [0, 1, 2]}]}"#).unwrap();
    assert_eq!(code(&hypermatch(&["run", s(&invalid), "--alg", "waterfill"])), 2);
}

#[test]
fn gen_gk_writes_colors() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "g.json");
    let o = hypermatch(&["gen", "--adversary", "gk", "--k", "8", "--seed", "4", "--out", s(&inst)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let colors: Value =
        serde_json::from_str(&std::fs::read_to_string(path(dir.path(), "g.json.colors.json")).unwrap()).unwrap();
    assert!(colors.to_string().contains("red"));
    let opt = hypermatch(&["opt", s(&inst), "--mode", "int"]);
    let v: Value = serde_json::from_slice(&opt.stdout).unwrap();
    assert_eq!(v["opt_int"], 4.0);
}

#[test]
fn run_and_certify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen_random(dir.path(), "11");
    for alg in ["waterfill", "weighted-waterfill"] {
        let run = run_to_file(dir.path(), &inst, alg);
        let o = hypermatch(&["certify", s(&run)]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let report: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(report["pass"], true);
    }
}

#[test]
fn weighted_on_unweighted_warns() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen_random(dir.path(), "2");
    let o = hypermatch(&["run", s(&inst), "--alg", "weighted-waterfill"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("warning"));
}

fn first_positive(records: &[Value]) -> usize {
    records.iter().position(|r| r["dy"].as_f64().unwrap() > 0.0).unwrap()
}

#[test]
fn tampered_allocation_fails_replay() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen_random(dir.path(), "5");
    let run = run_to_file(dir.path(), &inst, "waterfill");
    let mut file: Value = serde_json::from_str(&std::fs::read_to_string(&run).unwrap()).unwrap();
    let records = file["transcript"]["records"].as_array_mut().unwrap();
    let i = first_positive(records);
    let dy = records[i]["dy"].as_f64().unwrap();
    records[i]["dy"] = (dy * 1.01).into();
    std::fs::write(&run, file.to_string()).unwrap();
    let o = hypermatch(&["certify", s(&run)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains(&format!("arrival {i}")), "{}", stderr(&o));
}

#[test]
fn tampered_duals_fail_balance() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen_random(dir.path(), "6");
    let run = run_to_file(dir.path(), &inst, "waterfill");
    let mut file: Value = serde_json::from_str(&std::fs::read_to_string(&run).unwrap()).unwrap();
    let r = file["transcript"]["certificate"]["r"].as_array_mut().unwrap();
    let j = r.iter().position(|v| v.as_f64().unwrap() > 0.0).unwrap();
    r[j] = (r[j].as_f64().unwrap() + 0.5).into();
    std::fs::write(&run, file.to_string()).unwrap();
    let o = hypermatch(&["certify", s(&run)]);
    assert_eq!(code(&o), 1);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["pass"], false);
    assert!(report["balance_gap"].as_f64().unwrap() > 0.1);
}

#[test]
fn greedy_run_cannot_be_certified() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen_random(dir.path(), "8");
    let run = path(dir.path(), "g.run.json");
    assert_eq!(code(&hypermatch(&["run", s(&inst), "--alg", "greedy", "--out", s(&run)])), 0);
    assert_eq!(code(&hypermatch(&["certify", s(&run)])), 1);
}

#[test]
fn reduce_then_lift() {
    let dir = tempfile::tempdir().unwrap();
    let vinst = path(dir.path(), "v.json");
    let o = hypermatch(&["gen", "--adversary", "random-vertex", "--k", "2", "--groups", "8", "--resources", "9", "--out", s(&vinst)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let reduced = path(dir.path(), "r.json");
    assert_eq!(code(&hypermatch(&["reduce", s(&vinst), "--out", s(&reduced)])), 0);
    let mapping = path(dir.path(), "r.json.mapping.json");
    assert!(mapping.exists());
    let run = path(dir.path(), "r.run.json");
    assert_eq!(code(&hypermatch(&["run", s(&reduced), "--alg", "greedy", "--out", s(&run)])), 0);
    let o = hypermatch(&["reduce", "--lift", s(&run), "--mapping", s(&mapping)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let lifted: Value = serde_json::from_slice(&o.stdout).unwrap();
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&run).unwrap()).unwrap();
    assert_eq!(lifted["matched"].as_f64(), file["transcript"]["objective"].as_f64());
    assert_eq!(lifted["choices"].as_array().unwrap().len(), 8);
}

#[test]
fn opt_modes() {
    let dir = tempfile::tempdir().unwrap();
    let tri = path(dir.path(), "tri.json");
    std::fs::write(
        &tri,
        r#"{"k": 2, "num_resources": 3, "arrivals": [{"vertices": [0, 1]}, {"vertices": [1, 2]}, {"vertices": [0, 2]}]}"#,
    )
    .unwrap();
    let v: Value = serde_json::from_slice(&hypermatch(&["opt", s(&tri)]).stdout).unwrap();
    assert_eq!(v["opt_int"], 1.0);
    assert!((v["opt_frac"].as_f64().unwrap() - 1.5).abs() < 1e-9);
    let v: Value = serde_json::from_slice(&hypermatch(&["opt", s(&tri), "--mode", "exact"]).stdout).unwrap();
    assert_eq!(v["opt_frac_exact"], "3/2");
    assert_eq!(code(&hypermatch(&["opt", s(&tri), "--int-cap", "2"])), 1);
}

#[test]
fn bench_is_deterministic_csv() {
    let args = ["bench", "--adversary", "random", "--k", "3", "--alg", "waterfill", "--trials", "6", "--opt", "both", "--seed", "3"];
    let a = hypermatch(&args);
    let b = hypermatch(&args);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    let text = String::from_utf8(a.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(header, "k,adversary,params,seed,alg,ALG,OPT_int,OPT_frac,cert_ratio,emp_ratio,cert_pass,runtime_ms");
    assert_eq!(text.lines().count(), 7);
    // everything but the runtime column is reproducible
    let strip = |t: &str| t.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect::<Vec<_>>();
    assert_eq!(strip(&text), strip(&String::from_utf8(b.stdout).unwrap()));
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")));
}

#[test]
fn bench_json_summary() {
    let o = hypermatch(&["bench", "--adversary", "gk", "--k", "16", "--alg", "greedy", "--trials", "20", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 20);
    assert_eq!(v["summary"]["alg"]["mean"], 2.0);
}

#[test]
fn staircase_gen_writes_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "st.json");
    let o = hypermatch(&["gen", "--adversary", "staircase", "--k", "16", "--l", "4", "--delta", "0.5", "--out", s(&inst)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(path(dir.path(), "st.json.staircase.json").exists());
}

#[test]
fn waterfill_on_gk_certifies_above_ck() {
    let dir = tempfile::tempdir().unwrap();
    let inst = path(dir.path(), "g10.json");
    assert_eq!(code(&hypermatch(&["gen", "--adversary", "gk", "--k", "10", "--seed", "7", "--out", s(&inst)])), 0);
    let o = hypermatch(&["run", s(&inst), "--alg", "waterfill", "--certify", "--opt", "frac", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let row = &v["rows"][0];
    assert_eq!(row["cert_pass"], true);
    let lk = 10f64.ln();
    assert!(row["emp_ratio"].as_f64().unwrap() >= (1.0 - 1.0 / lk) / (lk + lk.ln()));
}

#[test]
fn reduce_empty_groups() {
    let dir = tempfile::tempdir().unwrap();
    let vinst = path(dir.path(), "empty.json");
    std::fs::write(&vinst, r#"{"k": 2, "groups": []}"#).unwrap();
    let o = hypermatch(&["reduce", s(&vinst)]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["k"], 3);
    assert_eq!(v["arrivals"].as_array().unwrap().len(), 0);
}
