//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sinkchase::engine::write_jsonl;
use sinkchase::experiment::{batch_metrics, default_sweep_values, paired_config};
use sinkchase::*;

const MASTER_SEED: u64 = 1;
const RUNS: u64 = 100;
const RANDOM_INSTANCES: usize = 10_000;

struct Report {
    failures: usize,
}

impl Report {
    fn check(&mut self, id: &str, name: &str, ok: bool, detail: String) {
        println!("[{}] {id} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failures += 1;
        }
    }
}

fn defaults() -> WorldConfig {
    WorldConfig::default()
}

fn with_alg(alg: Algorithm) -> WorldConfig {
    let mut c = defaults();
    c.tracker.algorithm = alg;
    c
}

fn big(n: u64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Rational-arithmetic reference for the heuristic update condition.
fn condition_oracle(d_it: u32, d_si: u32, d_st: u32, dt: u32, v_s: u32, alpha: Ratio, beta: Ratio) -> bool {
    let threshold = |r: Ratio| (!r.is_infinite()).then(|| BigRational::new(r.numer().into(), r.denom().into()));
    let drift = if d_si > 0 {
        threshold(alpha).is_some_and(|a| BigRational::new(u64::from(d_it).into(), u64::from(d_si).into()) > a)
    } else {
        d_it > 0
    };
    let stale = if d_st > 0 {
        let travel = BigRational::new(u64::from(d_st).into(), u64::from(v_s).into());
        threshold(beta).is_some_and(|b| big(u64::from(dt)) / travel > b)
    } else {
        true
    };
    drift || stale
}

fn property_suite(rng: &mut ChaCha8Rng) -> Vec<(&'static str, bool, String)> {
    let grid = GridConfig::default();
    let coord = |rng: &mut ChaCha8Rng| SegmentCoord::new(rng.random_range(0..200), rng.random_range(0..200));
    let mut out = Vec::new();

    let mut ok = true;
    for _ in 0..RANDOM_INSTANCES {
        let (a, b, c) = (coord(rng), coord(rng), coord(rng));
        ok &= distance(a, b) == distance(b, a)
            && (distance(a, b) == 0) == (a == b)
            && distance(a, c) <= distance(a, b) + distance(b, c);
    }
    out.push(("metric axioms", ok, format!("{RANDOM_INSTANCES} triples")));

    let mut ok = true;
    for r in 0..=40u32 {
        for _ in 0..10 {
            let c = SegmentCoord::new(rng.random_range(r..200 - r), rng.random_range(r..200 - r));
            ok &= grid.ball(c, r).len() as u64 == 2 * u64::from(r * r) + 2 * u64::from(r) + 1;
        }
    }
    out.push(("interior ball size 2r^2+2r+1", ok, "r = 0..40".into()));

    let mut ok = true;
    for _ in 0..RANDOM_INSTANCES {
        let sink = SinkState { position: coord(rng), velocity: rng.random_range(1..10) };
        let goal = coord(rng);
        let new = sink_step(sink, goal);
        if sink.position == goal {
            ok &= new == goal;
            continue;
        }
        let (sx, sy, v) = (i64::from(sink.position.x), i64::from(sink.position.y), i64::from(sink.velocity));
        let dist = |p: (i64, i64)| (p.0 - i64::from(goal.x)).abs() + (p.1 - i64::from(goal.y)).abs();
        let candidates = [(sx + v, sy), (sx - v, sy), (sx, sy + v), (sx, sy - v)];
        let best = candidates.iter().map(|&p| dist(p)).min().unwrap();
        let dir = ((i64::from(new.x) - sx).signum(), (i64::from(new.y) - sy).signum());
        let chosen = (sx + dir.0 * v, sy + dir.1 * v);
        ok &= dist(chosen) == best && distance(new, sink.position) <= sink.velocity;
    }
    out.push(("sink move optimal over candidate set", ok, format!("{RANDOM_INSTANCES} instances")));

    let mut ok = true;
    let mut fired = 0;
    let sweep_values = default_sweep_values();
    for i in 0..RANDOM_INSTANCES {
        let pick = |rng: &mut ChaCha8Rng| match rng.random_range(0..3) {
            0 => sweep_values[rng.random_range(0..sweep_values.len())],
            1 => Ratio::new(rng.random_range(0..50), rng.random_range(1..50)),
            _ => Ratio::new(rng.random_range(0..5), 1),
        };
        let small = i % 2 == 0;
        let span = if small { 8 } else { 400 };
        let (d_it, d_si) = (rng.random_range(0..span / 4), rng.random_range(0..span));
        let d_st = rng.random_range(0..span);
        let dt = rng.random_range(0..if small { 8 } else { 12 });
        let v_s = rng.random_range(1..8);
        let alpha = pick(rng);
        let beta = if i % 97 == 0 { Ratio::INFINITY } else { pick(rng) };
        let got = heuristic_update(d_it, d_si, d_st, dt, v_s, alpha, beta);
        fired += usize::from(got);
        ok &= got == condition_oracle(d_it, d_si, d_st, dt, v_s, alpha, beta);
    }
    out.push(("heuristic condition equals rational oracle", ok, format!("{RANDOM_INSTANCES} tuples, {fired} fired")));

    let mut degenerate = with_alg(Algorithm::Heuristic);
    degenerate.tracker.alpha = Ratio::ZERO;
    degenerate.tracker.beta = Ratio::INFINITY;
    let a3 = batch_metrics(&degenerate, RUNS, MASTER_SEED, Execution::default()).unwrap();
    let a1 = batch_metrics(&with_alg(Algorithm::Prediction), RUNS, MASTER_SEED, Execution::default()).unwrap();
    let mismatches = a1.iter().zip(&a3).filter(|(x, y)| x.transfers_to_sink != y.transfers_to_sink).count();
    out.push(("alpha=0 transfers equal prediction tracking", mismatches == 0, format!("{mismatches} of {RUNS} paired runs differ")));

    let mut ok_det = true;
    let mut ok_replay = true;
    for alg in Algorithm::ALL {
        for k in 0..20 {
            let cfg = paired_config(&with_alg(alg), MASTER_SEED, k);
            let a = run(&cfg, true).unwrap();
            let b = run(&cfg, true).unwrap();
            let (mut ba, mut bb) = (Vec::new(), Vec::new());
            write_jsonl(a.trace.as_deref().unwrap(), &mut ba).unwrap();
            write_jsonl(b.trace.as_deref().unwrap(), &mut bb).unwrap();
            ok_det &= ba == bb && a.metrics == b.metrics;
            ok_replay &= replay(a.trace.as_deref().unwrap(), false) == a.metrics;
        }
    }
    out.push(("bit-identical traces on repeated seeds", ok_det, "60 runs".into()));
    out.push(("metrics equal fold of trace events", ok_replay, "60 runs".into()));
    out
}

fn main() -> ExitCode {
    let mut report = Report { failures: 0 };
    let exec = Execution::default();
    let metrics: Vec<Vec<RunMetrics>> = Algorithm::ALL
        .iter()
        .map(|&a| batch_metrics(&with_alg(a), RUNS, MASTER_SEED, exec).expect("valid defaults"))
        .collect();
    let summaries: Vec<BatchSummary> = Algorithm::ALL
        .iter()
        .zip(&metrics)
        .map(|(&a, m)| BatchSummary::from_runs(&with_alg(a), MASTER_SEED, m))
        .collect();
    let (s1, s2, s3) = (&summaries[0], &summaries[1], &summaries[2]);

    let hop_ratio = s3.hop_count.mean / s1.hop_count.mean;
    report.check(
        "C1",
        "hop-count reduction",
        (0.15..=0.40).contains(&hop_ratio),
        format!("mean hops alg3/alg1 = {:.1}/{:.1} = {hop_ratio:.4}, required [0.15, 0.40]", s3.hop_count.mean, s1.hop_count.mean),
    );

    let ttc_ratio = s3.time_to_catch.mean / s1.time_to_catch.mean;
    report.check(
        "C2",
        "time-to-catch parity",
        ttc_ratio <= 1.10,
        format!("mean ttc alg3/alg1 = {:.2}/{:.2} = {ttc_ratio:.4}, required <= 1.10", s3.time_to_catch.mean, s1.time_to_catch.mean),
    );

    report.check(
        "C3",
        "algorithm ordering",
        s2.time_to_catch.mean > s1.time_to_catch.mean && s2.time_to_catch.mean > s3.time_to_catch.mean,
        format!(
            "mean ttc alg1 {:.2}, alg2 {:.2}, alg3 {:.2}; alg2 must be strictly largest",
            s1.time_to_catch.mean, s2.time_to_catch.mean, s3.time_to_catch.mean
        ),
    );

    let window: Vec<u64> = metrics[0]
        .iter()
        .filter(|m| m.caught && (50..=90).contains(&m.time_to_catch))
        .map(|m| m.hop_count)
        .collect();
    let (lo, hi) = (window.iter().min().copied(), window.iter().max().copied());
    report.check(
        "C4",
        "alg1 hop magnitude",
        !window.is_empty() && window.iter().all(|h| (3000..=12000).contains(h)),
        format!("{} runs caught in 50..=90 steps, hops min {lo:?} max {hi:?}, required within [3000, 12000]", window.len()),
    );

    let values = default_sweep_values();
    let sw = sweep(&defaults(), &values, &values, RUNS, MASTER_SEED, exec).expect("valid sweep");
    let ttc_min = sw.cells.iter().map(|c| c.time_to_catch.mean).fold(f64::INFINITY, f64::min);
    let eligible: Vec<&BatchSummary> = sw.cells.iter().filter(|c| c.time_to_catch.mean <= 1.05 * ttc_min).collect();
    let mut hops: Vec<f64> = eligible.iter().map(|c| c.hop_count.mean).collect();
    hops.sort_by(f64::total_cmp);
    let quartile = hops[(hops.len() - 1) / 4];
    let cell = sw.find(Ratio::new(20, 100), Ratio::new(25, 100)).expect("default sweep contains (0.20, 0.25)");
    let cell_eligible = cell.time_to_catch.mean <= 1.05 * ttc_min;
    let below = hops.iter().filter(|&&h| h < cell.hop_count.mean).count();
    report.check(
        "C5",
        "sweep shape",
        cell_eligible && cell.hop_count.mean <= quartile,
        format!(
            "{} of {} cells within 5% of min ttc {ttc_min:.2}; (0.20,0.25) ttc {:.2} hops {:.1}, {below} eligible cells lower, lowest-quartile bound {quartile:.1}",
            eligible.len(),
            sw.cells.len(),
            cell.time_to_catch.mean,
            cell.hop_count.mean
        ),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED);
    let props = property_suite(&mut rng);
    for (name, ok, detail) in &props {
        println!("    [{}] {name}: {detail}", if *ok { "ok" } else { "FAILED" });
    }
    let failed = props.iter().filter(|p| !p.1).count();
    report.check("C6", "property suite", failed == 0, format!("{} of {} properties hold", props.len() - failed, props.len()));

    let caught: Vec<u64> = summaries.iter().map(|s| s.caught).collect();
    report.check(
        "C7",
        "termination",
        caught.iter().all(|&c| c >= 99),
        format!("caught of {RUNS} runs (alg1, alg2, alg3) = {caught:?}, required >= 99 each"),
    );

    if report.failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", report.failures);
        ExitCode::FAILURE
    }
}
