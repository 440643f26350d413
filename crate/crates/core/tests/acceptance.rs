//! Acceptance gate: eight end-to-end criteria, one PASS/FAIL line each.
//! Runs without the libtest harness so the lines always reach the output.

mod support;

use std::time::{Duration, Instant};

use rand::Rng as _;
use hypermatch::adversary::{rng, 
    gen_gk, gen_hk, greedy_tightness_gadget, random_instance, random_vertex_arrival, random_weighted_instance,
    run_staircase, verify_redblue,
};
use hypermatch::duals::{certified_ratio, verify_certificate, DualMode, Tolerances};
use hypermatch::hypergraph::{lift_edge_decisions, pad_to_uniform, reduce_vertex_to_edge_arrival, EPS_FEAS};
use hypermatch::online::{waterfill_step, AlgorithmState};
use hypermatch::oracle::{disjoint_lower_bound, opt_fractional, opt_integral, LP_TOL};
use hypermatch::{run_online, Algorithm, HyperEdge, Instance, IntegralMatching, OnlineRun};

use support::{brute_force_opt, c_k, fine_waterfill, fine_weighted_waterfill, max_abs_diff, FINE_STEP};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Random `k`-uniform instance shapes used by several criteria.
fn random_shape(i: u64, ks: &[usize], max_edges: usize) -> Instance {
    let k = ks[(i as usize) % ks.len()];
    let edges = 4 + (i as usize * 7) % (max_edges - 3);
    let resources = k + 2 + (i as usize * 5) % (2 * k + 8);
    random_instance(k, edges, resources, 1000 + i).expect("valid shape")
}

/// Weighted edges on one or two of `hubs` shared resources, padded with
/// fresh dummies to rank `k`. At `k >= 8` the hubs saturate and heavier
/// arrivals displace lighter edges.
fn hub_instance(k: usize, edges: usize, hubs: usize, seed: u64) -> Instance {
    let mut r = rng(seed);
    let e = (0..edges)
        .map(|_| {
            let first = r.random_range(0..hubs);
            let mut vs = vec![first];
            if r.random_bool(0.3) {
                let other = r.random_range(0..hubs);
                if other != first {
                    vs.push(other);
                }
            }
            (vs, (r.random_range(-4.6f64..4.6)).exp())
        })
        .collect();
    pad_to_uniform(&Instance::weighted(k, hubs, e))
}

fn c1_fresh_edge() -> Outcome {
    let inst = Instance::unweighted(10, 10, vec![(0..10).collect()]);
    let y = run_online(&inst, Algorithm::WaterFill).map_err(err)?.allocation[0];
    let lk = 10f64.ln();
    let expected = lk.ln() / (lk + lk.ln());
    ensure((y - expected).abs() <= 1e-9, || format!("k=10 fresh edge y={y:.10}, expected {expected:.10}"))?;

    let mut fills = vec![0.0; 100];
    fills[..22].iter_mut().for_each(|x| *x = 0.5);
    let mut state = AlgorithmState::with_fills(100, fills);
    let (d, duals) = waterfill_step(&mut state, &HyperEdge::new(0, 0..100, 1.0));
    ensure(d.delta_y == 0.0 && duals.is_zero(), || format!("k=100 half-full edge got y={}", d.delta_y))?;
    Ok(format!(
        "k=10 y={y:.10} (closed form {expected:.10}, |diff| {:.1e}); k=100 scenario y=0 exactly, price {:.6}",
        (y - expected).abs(),
        d.price_at_stop
    ))
}

fn check_waterfill_ratio(inst: &Instance, label: &str) -> Result<f64, String> {
    let t = run_online(inst, Algorithm::WaterFill).map_err(err)?;
    let cert = t.certificate.as_ref().ok_or("missing certificate")?;
    let rep = verify_certificate(inst, &t, cert, Tolerances::default()).map_err(err)?;
    ensure(rep.pass, || {
        format!("{label}: certificate failed (gap {:e}, slack {:e})", rep.balance_gap, rep.min_edge_slack)
    })?;
    let lp = opt_fractional(inst, LP_TOL).map_err(err)?;
    let c = c_k(inst.rank_k);
    ensure((c - rep.certified_ratio).abs() < 1e-12, || format!("{label}: ratio constant mismatch"))?;
    ensure(t.objective >= c * lp.primal_value - 1e-9, || {
        format!("{label}: ALG {} < c_k * OPT_frac = {}", t.objective, c * lp.primal_value)
    })?;
    Ok(t.objective / lp.primal_value.max(f64::MIN_POSITIVE))
}

fn c2_certified_ratio() -> Outcome {
    let mut worst = f64::INFINITY;
    for i in 0..500u64 {
        let inst = random_shape(i, &[3, 4, 5], 30);
        if inst.arrivals.is_empty() {
            continue;
        }
        worst = worst.min(check_waterfill_ratio(&inst, &format!("random #{i}"))?);
    }
    let gk = [4usize, 6, 8, 10, 12, 14, 16];
    let hk = [4usize, 8, 16];
    for s in 0..50u64 {
        let k = gk[s as usize % gk.len()];
        let inst = gen_gk(k, s).map_err(err)?.instance;
        worst = worst.min(check_waterfill_ratio(&inst, &format!("G_{k} seed {s}"))?);
        let k = hk[s as usize % hk.len()];
        let inst = gen_hk(k, s).map_err(err)?.instance;
        worst = worst.min(check_waterfill_ratio(&inst, &format!("H_{k} seed {s}"))?);
    }
    Ok(format!("600 instances certified; worst ALG/OPT_frac {worst:.4} (c_3 = {:.4})", c_k(3)))
}

fn c3_greedy() -> Outcome {
    let mut checked = 0;
    let mut check = |inst: &Instance, label: &str| -> Result<(), String> {
        let alg = run_online(inst, Algorithm::Greedy).map_err(err)?.objective;
        let (opt, m) = opt_integral(inst).map_err(err)?;
        m.check_disjoint(inst).map_err(err)?;
        if inst.num_edges() <= 16 {
            let bf = brute_force_opt(inst);
            ensure(bf == opt, || format!("{label}: branch and bound {opt} vs brute force {bf}"))?;
        }
        ensure(alg >= opt / inst.rank_k as f64, || format!("{label}: greedy {alg} < OPT {opt} / k"))?;
        checked += 1;
        Ok(())
    };
    for i in 0..500u64 {
        check(&random_shape(i, &[2, 3, 4, 5], 30), &format!("random #{i}"))?;
    }
    for s in 0..20u64 {
        check(&gen_gk(8, s).map_err(err)?.instance, "G_8")?;
        check(&gen_hk(8, s).map_err(err)?.instance, "H_8")?;
    }
    let gadget = greedy_tightness_gadget(5).map_err(err)?;
    let alg = run_online(&gadget, Algorithm::Greedy).map_err(err)?.objective;
    let opt = opt_integral(&gadget).map_err(err)?.0;
    ensure(alg == 1.0 && opt == 5.0 && brute_force_opt(&gadget) == 5.0, || {
        format!("gadget: greedy {alg}, OPT {opt}")
    })?;
    Ok(format!("{checked} instances with greedy >= OPT_int/k; k=5 gadget greedy 1 vs OPT 5"))
}

fn mean_stderr(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn c4_lower_bound_distributions() -> Outcome {
    let mut lines = Vec::new();
    for (family, ks) in [("G", [8usize, 16, 32]), ("H", [4, 8, 16])] {
        for k in ks {
            let mut values = Vec::with_capacity(2000);
            for seed in 0..2000u64 {
                let ci = if family == "G" { gen_gk(k, seed) } else { gen_hk(k, seed) }.map_err(err)?;
                let v = verify_redblue(&ci);
                ensure(v.is_empty(), || format!("{family}_{k} seed {seed}: {v:?}"))?;
                let reds = IntegralMatching { chosen: ci.red_edges() };
                reds.check_disjoint(&ci.instance).map_err(err)?;
                let expected = if family == "G" { k / 2 } else { k };
                ensure(reds.len() == expected, || format!("{family}_{k}: {} red edges", reds.len()))?;
                if k <= 8 && seed < 50 {
                    let opt = opt_integral(&ci.instance).map_err(err)?.0;
                    ensure(opt == expected as f64, || format!("{family}_{k} seed {seed}: OPT {opt}"))?;
                }
                values.push(run_online(&ci.instance, Algorithm::Greedy).map_err(err)?.objective);
            }
            let (mean, se) = mean_stderr(&values);
            ensure(mean <= 2.0 + 3.0 * se, || format!("{family}_{k}: mean greedy {mean} > 2 + 3*{se}"))?;
            lines.push(format!("{family}_{k} mean {mean:.3}"));
        }
    }
    Ok(format!("2000 samples each ({}), structural OPT k/2 and k", lines.join(", ")))
}

fn c5_staircase() -> Outcome {
    let (l, delta) = (64usize, 0.25);
    let mut ratios = Vec::new();
    let mut detail = Vec::new();
    for k in [256usize, 1024] {
        let (run, t) = run_staircase(k, l, delta, Algorithm::WaterFill).map_err(err)?;
        let y_star = run.selected_allocation(&t);
        ensure(y_star <= l as f64 + 1e-6, || format!("k={k}: y(E*) = {y_star} > l"))?;
        ensure(y_star >= run.selected_allocation_bound(&t) - 1e-9, || format!("k={k}: y(E*) below its share bound"))?;
        let non_selected = run.non_selected();
        let lb = disjoint_lower_bound(&run.instance, &non_selected).map_err(err)?;
        let need = run.rounds() as f64 * (delta * l as f64 - 1.0);
        ensure(lb >= need, || format!("k={k}: {lb} disjoint edges < T(δl-1) = {need}"))?;
        let ratio = t.objective / lb;
        let cap = 2.0 / (k as f64).ln();
        ensure(ratio <= cap, || format!("k={k}: ratio {ratio} > 2/ln k = {cap}"))?;
        ratios.push(ratio);
        detail.push(format!("k={k}: y(E*)={y_star:.3}, T={}, LB={lb}, ratio={ratio:.4} <= {cap:.4}", run.rounds()));
    }
    ensure(ratios[1] < ratios[0], || format!("ratio not decreasing: {ratios:?}"))?;
    Ok(detail.join("; "))
}

fn c6_weighted() -> Outcome {
    let mut slack = f64::INFINITY;
    let mut unit_diff = 0.0f64;
    let mut displaced = 0usize;
    for i in 0..200u64 {
        let k = 3 + (i as usize % 2);
        let edges = 5 + (i as usize * 7) % 26;
        let resources = k + 2 + (i as usize * 3) % 12;
        let inst = if i % 2 == 0 {
            random_weighted_instance(k, edges, resources, (0.1, 10.0), 5000 + i).map_err(err)?
        } else {
            hub_instance(8 << (i / 2 % 2), edges, 2 + (i as usize % 3), 5000 + i)
        };
        let mut run = OnlineRun::new(Algorithm::WeightedWaterFill, inst.rank_k).map_err(err)?;
        let mut last = 0.0;
        for e in &inst.arrivals {
            let rec = run.arrive(e).map_err(err)?;
            displaced += usize::from(!rec.decision.displacements.is_empty());
            let over = run.state().fills().iter().fold(0.0f64, |m, x| m.max(*x));
            ensure(over <= 1.0 + EPS_FEAS, || format!("instance {i}: fill {over} after edge {}", e.id))?;
            let obj = run.objective();
            ensure(obj >= last - 1e-12, || format!("instance {i}: objective fell from {last} to {obj}"))?;
            last = obj;
        }
        let mut t = run.finish();
        let cert = t.certificate.as_mut().ok_or("missing certificate")?;
        cert.r.resize(inst.num_resources, 0.0);
        let cert = cert.clone();
        ensure(cert.mode == DualMode::Weighted, || "wrong dual mode".into())?;
        let rep = verify_certificate(&inst, &t, &cert, Tolerances::default()).map_err(err)?;
        ensure(rep.pass, || format!("instance {i}: gap {:e}, slack {:e}", rep.balance_gap, rep.min_edge_slack))?;
        slack = slack.min(rep.min_edge_slack);

        let unit = random_instance(k, edges, resources, 7000 + i).map_err(err)?;
        let a = run_online(&unit, Algorithm::WaterFill).map_err(err)?;
        let b = run_online(&unit, Algorithm::WeightedWaterFill).map_err(err)?;
        let d = max_abs_diff(&a.allocation, &b.allocation);
        ensure(d <= 1e-9, || format!("unit instance {i}: allocations differ by {d}"))?;
        unit_diff = unit_diff.max(d);
    }
    Ok(format!(
        "200 instances (half on saturating hubs at k = 8, 16), {displaced} arrivals with displacement, min slack {slack:.2e}, unit-weight diff {unit_diff:.1e}"
    ))
}

fn c7_fine_step() -> Outcome {
    let mut worst1 = 0.0f64;
    let mut worst2 = 0.0f64;
    let mut displaced = 0usize;
    for i in 0..50u64 {
        let k = 3 + (i as usize % 2);
        let unit = random_instance(k, 10, 6 + (i as usize % 4), 9000 + i).map_err(err)?;
        let exact = run_online(&unit, Algorithm::WaterFill).map_err(err)?.allocation;
        let d = max_abs_diff(&exact, &fine_waterfill(&unit, FINE_STEP));
        ensure(d <= 1e-4, || format!("unweighted instance {i}: max |dy| {d}"))?;
        worst1 = worst1.max(d);

        let weighted = if i % 2 == 0 {
            random_weighted_instance(k, 10, 6 + (i as usize % 4), (0.1, 10.0), 9500 + i).map_err(err)?
        } else {
            hub_instance(8, 8, 2, 9500 + i)
        };
        let t = run_online(&weighted, Algorithm::WeightedWaterFill).map_err(err)?;
        displaced += t.records.iter().filter(|a| !a.decision.displacements.is_empty()).count();
        let exact = t.allocation;
        let d = max_abs_diff(&exact, &fine_weighted_waterfill(&weighted, FINE_STEP));
        ensure(d <= 1e-4, || format!("weighted instance {i}: max |dy| {d}"))?;
        worst2 = worst2.max(d);
    }
    Ok(format!(
        "50 + 50 instances ({displaced} displacing arrivals); worst |y - y_fine|: closed form {worst1:.2e}, event-driven {worst2:.2e}"
    ))
}

fn c8_reduction() -> Outcome {
    let mut total = 0;
    for i in 0..100u64 {
        let k = 2 + (i as usize % 3);
        let vinst = random_vertex_arrival(k, 5 + (i as usize % 10), 4, k + 4 + (i as usize % 8), 300 + i).map_err(err)?;
        let (inst, map) = reduce_vertex_to_edge_arrival(&vinst);
        ensure(inst.rank_k == k + 1, || format!("instance {i}: reduced rank {}", inst.rank_k))?;
        let t = run_online(&inst, Algorithm::Greedy).map_err(err)?;
        let m = t.matching();
        m.check_disjoint(&inst).map_err(err)?;
        let lifted = lift_edge_decisions(&map, &m).map_err(err)?;
        let chosen: Vec<&HyperEdge> = lifted
            .iter()
            .enumerate()
            .filter_map(|(g, c)| c.map(|l| &vinst.groups[g][l]))
            .collect();
        ensure(chosen.len() == m.len(), || format!("instance {i}: lifted {} vs {}", chosen.len(), m.len()))?;
        for (a, e) in chosen.iter().enumerate() {
            for f in &chosen[a + 1..] {
                ensure(!e.intersects(f), || format!("instance {i}: lifted edges share a resource"))?;
            }
        }
        total += chosen.len();
    }
    Ok(format!("100 round trips, {total} matched online vertices, all valid"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 water-filling fresh-edge fraction", c1_fresh_edge, 1),
        ("2 certified competitive ratio", c2_certified_ratio, 300),
        ("3 greedy guarantee and tightness", c3_greedy, 120),
        ("4 integral lower-bound distributions", c4_lower_bound_distributions, 300),
        ("5 fractional staircase upper bound", c5_staircase, 600),
        ("6 weighted free disposal", c6_weighted, 300),
        ("7 continuous-dynamics oracle equivalence", c7_fine_step, 300),
        ("8 reduction round trip", c8_reduction, 60),
    ];
    assert!(certified_ratio(3).is_ok());
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > Duration::from_secs(limit) => Err(format!("{d}; took {took:.1?} > {limit} s")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {name} [{took:.2?}]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} [{took:.2?}]: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 8 acceptance criteria passed");
}
