// SPDX-License-Identifier: Apache-2.0

//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line
//! straight to stderr, bypassing the harness's output capture, then asserts.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use statrs::distribution::{ChiSquared, ContinuousCDF};

use smoothcast_core::decomposition::{decompose, validate};
use smoothcast_core::harness::{fit_exponent, run_sweep, Aggregate, DistKind, PhaseRule, SweepGrid, TopologyKind};
use smoothcast_core::predecessor::{construct_path_over, verify_replay, PathGraphs, ReplayVerdict};
use smoothcast_core::randomness::{smoothing_stream, KeyedStream};
use smoothcast_core::topology::{grid_graph, line_graph, random_connected_graph, star_graph};
use smoothcast_core::{BitAssignment, DynamicSchedule, MasterSeed, NodeId, TokenAssignment};

use rand::Rng;

fn report(id: &str, what: &str, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!("[{verdict}] {id} {what}: {detail}\n");
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(pass, "{id} {what}: {detail}");
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn grid(
    topology: TopologyKind,
    dist: DistKind,
    n: &[usize],
    k: usize,
    ell: &[usize],
    trials: usize,
    seed: u64,
) -> SweepGrid {
    SweepGrid {
        topology,
        extra: 0,
        dist,
        p: 0.5,
        src: 0,
        n: n.to_vec(),
        k: vec![k],
        ell: ell.to_vec(),
        trials,
        seed,
        max_rounds: None,
        phases: false,
        phase_rule: PhaseRule::Reciprocal,
        delta: None,
        gamma: None,
        wall_clock: false,
    }
}

/// Means per grid point; every trial must have completed.
fn means(g: &SweepGrid) -> (Vec<Aggregate>, Duration) {
    let started = Instant::now();
    let result = run_sweep(g, jobs()).expect("sweep");
    let elapsed = started.elapsed();
    for a in &result.aggregates {
        assert_eq!(a.completed, a.trials, "n={} ell={}: some trials did not complete", a.n, a.ell);
    }
    (result.aggregates, elapsed)
}

fn slope(aggs: &[Aggregate]) -> f64 {
    let pts: Vec<(f64, f64)> = aggs.iter().map(|a| (a.n as f64, a.mean)).collect();
    fit_exponent(&pts).unwrap().slope
}

fn fmt_means(aggs: &[Aggregate]) -> String {
    aggs.iter().map(|a| format!("T({})={:.1}", a.n, a.mean)).collect::<Vec<_>>().join(" ")
}

#[test]
fn c01_worst_case_line_baseline() {
    let g = grid(TopologyKind::Line, DistKind::LineWorst, &[64], 8, &[0], 200, 1001);
    let (aggs, elapsed) = means(&g);
    let target = 8.0 * 63.0;
    let mean = aggs[0].mean;
    let in_band = (0.75 * target..=1.25 * target).contains(&mean);
    let fast = elapsed <= Duration::from_secs(10);
    report(
        "C1",
        "worst-case line baseline",
        in_band && fast,
        format!(
            "mean {mean:.1} vs band [{:.0}, {:.0}], {:.2}s (limit 10s)",
            0.75 * target,
            1.25 * target,
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn c02_static_one_smoothing_exponent() {
    let g = grid(TopologyKind::Line, DistKind::LineWorst, &[256, 1024, 4096], 8, &[1], 50, 2002);
    let (aggs, elapsed) = means(&g);
    let s = slope(&aggs);
    let ok = (0.40..=0.70).contains(&s) && elapsed <= Duration::from_secs(300);
    report(
        "C2",
        "static 1-smoothing exponent",
        ok,
        format!("slope {s:.3} vs [0.40, 0.70]; {}; {:.1}s (limit 300s)", fmt_means(&aggs), elapsed.as_secs_f64()),
    );
}

#[test]
fn c03_dynamic_star_exponent() {
    let g = grid(TopologyKind::CyclicStar, DistKind::StarWorst, &[256, 1024, 4096], 8, &[1], 50, 3003);
    let (aggs, elapsed) = means(&g);
    let s = slope(&aggs);
    let ok = (0.55..=0.85).contains(&s) && elapsed <= Duration::from_secs(600);
    report(
        "C3",
        "dynamic-star smoothing exponent",
        ok,
        format!("slope {s:.3} vs [0.55, 0.85]; {}; {:.1}s (limit 600s)", fmt_means(&aggs), elapsed.as_secs_f64()),
    );
}

#[test]
fn c04_ell_scaling_direction() {
    let g = grid(TopologyKind::CyclicStar, DistKind::StarWorst, &[4096], 8, &[1, 8, 64], 50, 4004);
    let (aggs, _) = means(&g);
    let t: Vec<f64> = aggs.iter().map(|a| a.mean).collect();
    let decreasing = t.windows(2).all(|w| w[1] < w[0]);
    let ratio = t[0] / t[2];
    let target = 64f64.cbrt();
    let ok = decreasing && (target / 2.0..=target * 2.0).contains(&ratio);
    report(
        "C4",
        "smoothing-level direction",
        ok,
        format!("T(1)={:.1} T(8)={:.1} T(64)={:.1}; ratio {ratio:.2} vs [2, 8]", t[0], t[1], t[2]),
    );
}

#[test]
fn c05_p_mixed_near_independence() {
    let (k, p) = (16usize, 0.5);
    let mut g = grid(TopologyKind::Line, DistKind::PMixed, &[256, 1024, 4096], k, &[0], 50, 5005);
    g.p = p;
    let (aggs, _) = means(&g);
    let c: Vec<f64> = aggs.iter().map(|a| a.mean / ((k as f64 / p) * (a.n as f64).ln())).collect();
    let ratio = c[2] / c[0];
    let ok = (0.5..=2.0).contains(&ratio);
    report(
        "C5",
        "p-mixed near n-independence",
        ok,
        format!("C(256)={:.3} C(1024)={:.3} C(4096)={:.3}; C(4096)/C(256) {ratio:.3} vs [0.5, 2]", c[0], c[1], c[2]),
    );
}

/// `(path length, z / 2k)` for the 1000 line instances.
fn path_lengths() -> (Vec<usize>, f64, usize) {
    let (n, k) = (64usize, 4usize);
    let z = (32.0 * k as f64 * (n as f64).ln()).ceil() as u64;
    let sched = DynamicSchedule::static_line(n).unwrap();
    let lens = (0..1000u64)
        .map(|seed| {
            let ba = BitAssignment::new(MasterSeed(seed), n, k).unwrap();
            let u = (seed % n as u64) as NodeId;
            let t = 1 + (seed % k as u64) as u32;
            let path = construct_path_over(&sched, &ba, u, t, 1, 1 + z, PathGraphs::Adversarial).unwrap();
            path.check_structure().unwrap();
            path.len()
        })
        .collect();
    (lens, z as f64 / (2 * k) as f64, n)
}

#[test]
fn c06_path_length_law() {
    let (lens, bound, n) = path_lengths();
    let violations = lens.iter().filter(|&&l| l as f64 <= bound).count();
    let rate = violations as f64 / lens.len() as f64;
    let longest = lens.iter().max().unwrap();
    report(
        "C6",
        "path length exceeds z/(2k)",
        rate <= 0.01,
        format!(
            "violation rate {:.1}% vs 1%; z/(2k)={bound:.1} but a path has at most n-1={} entries (longest seen {longest})",
            100.0 * rate,
            n - 1
        ),
    );
}

#[test]
fn c06b_path_length_law_saturation_aware() {
    // a path cannot outgrow n - 1 distinct nodes; count saturation as success
    let (lens, bound, n) = path_lengths();
    let violations = lens.iter().filter(|&&l| l as f64 <= bound && l < n - 1).count();
    let rate = violations as f64 / lens.len() as f64;
    report(
        "C6b",
        "path length exceeds min(z/(2k), n-1)",
        rate <= 0.01,
        format!(
            "violation rate {:.1}% vs 1%; saturated {}/{}",
            100.0 * rate,
            lens.iter().filter(|&&l| l == n - 1).count(),
            lens.len()
        ),
    );
}

#[test]
fn c07_replay_guarantee() {
    let mut tally = [[0usize; 3]; 2];
    for (li, ell) in [0usize, 1].into_iter().enumerate() {
        for case in 0..500u64 {
            let mut rng = KeyedStream::new(MasterSeed(7007), 0, case, ell as u64);
            let n = rng.gen_range(2..=32usize);
            let seed = MasterSeed(rng.gen());
            let sched = match case % 3 {
                0 => DynamicSchedule::static_line(n).unwrap(),
                1 => {
                    let room = n * (n - 1) / 2 - (n - 1);
                    DynamicSchedule::random_connected(n, rng.gen_range(0..=room.min(n)), seed).unwrap()
                }
                _ => DynamicSchedule::cyclic_dynamic_star(n).unwrap(),
            };
            let k = rng.gen_range(1..=4usize);
            let ba = BitAssignment::new(seed, n, k).unwrap();
            let u = rng.gen_range(0..n) as NodeId;
            let t = rng.gen_range(1..=k) as u32;
            let r = rng.gen_range(1..=4u64);
            let rp = r + rng.gen_range(1..=48u64);
            let graphs = if ell == 0 { PathGraphs::Adversarial } else { PathGraphs::Smoothed { ell } };
            let path = construct_path_over(&sched, &ba, u, t, r, rp, graphs).unwrap();
            if path.is_empty() {
                tally[li][2] += 1;
                continue;
            }
            let (entry, _) = path.entries[rng.gen_range(0..path.len())];
            // t starts only at the chosen entry; other tokens anywhere
            let holders = (1..=k as u32)
                .map(|tok| if tok == t { vec![entry] } else { vec![rng.gen_range(0..n) as NodeId] })
                .collect();
            let placement = TokenAssignment::new(n, k, holders).unwrap();
            match verify_replay(&sched, &ba, &placement, &path, ell).unwrap() {
                ReplayVerdict::Delivered => tally[li][0] += 1,
                ReplayVerdict::NotDelivered => tally[li][1] += 1,
                ReplayVerdict::Vacuous => tally[li][2] += 1,
            }
        }
    }
    let ok = tally.iter().all(|t| t[1] == 0 && t[0] > 0);
    report(
        "C7",
        "replay guarantee",
        ok,
        format!(
            "ell=0: {}/{} delivered ({} vacuous); ell=1: {}/{} delivered ({} vacuous)",
            tally[0][0],
            tally[0][0] + tally[0][1],
            tally[0][2],
            tally[1][0],
            tally[1][0] + tally[1][1],
            tally[1][2]
        ),
    );
}

#[test]
fn c08_decomposition_certificates() {
    let mut graphs = Vec::new();
    for i in 0..100u64 {
        let mut rng = KeyedStream::new(MasterSeed(8008), 0, i, 0);
        let n = rng.gen_range(2..=4096usize);
        let room = n * (n - 1) / 2 - (n - 1);
        let extra = rng.gen_range(0..=room.min(2 * n));
        graphs.push((format!("random n={n}"), random_connected_graph(n, extra, MasterSeed(i)).unwrap()));
    }
    graphs.push(("line 4096".into(), line_graph(4096)));
    graphs.push(("star 4096".into(), star_graph(4096, 0)));
    graphs.push(("grid 64x64".into(), grid_graph(64, 64)));
    let failures: Vec<String> = graphs
        .iter()
        .filter_map(|(name, g)| {
            let rep = validate(g, &decompose(g).unwrap());
            (!rep.all_pass()).then(|| format!("{name}: {rep:?}"))
        })
        .collect();
    report(
        "C8",
        "decomposition certificates",
        failures.is_empty(),
        format!(
            "{}/{} graphs pass all four certificates {}",
            graphs.len() - failures.len(),
            graphs.len(),
            failures.join("; ")
        ),
    );
}

fn chi_square(counts: &[u64], expected: f64) -> (f64, f64) {
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let critical = ChiSquared::new((counts.len() - 1) as f64).unwrap().inverse_cdf(1.0 - 1e-3);
    (stat, critical)
}

#[test]
fn c09_uniformity() {
    let samples = 100_000u64;
    let n = 32usize;
    let pairs = n * (n - 1) / 2;
    let mut pair_counts = vec![0u64; pairs];
    for r in 1..=samples {
        let (a, b) = smoothing_stream(MasterSeed(9009), r, 1, n).unwrap()[0];
        let (a, b) = (a as usize, b as usize);
        // index of (a, b), a < b, in row-major upper-triangle order
        pair_counts[a * (2 * n - a - 1) / 2 + (b - a - 1)] += 1;
    }
    let (pair_stat, pair_crit) = chi_square(&pair_counts, samples as f64 / pairs as f64);

    let ba = BitAssignment::new(MasterSeed(9010), 1000, 8).unwrap();
    let known = [2u32, 3, 5, 8];
    let mut choice_counts = [0u64; 4];
    for i in 0..samples {
        let t = ba.choose((i % 1000) as NodeId, 1 + i / 1000, &known).unwrap().unwrap();
        choice_counts[known.iter().position(|&x| x == t).unwrap()] += 1;
    }
    let (choice_stat, choice_crit) = chi_square(&choice_counts, samples as f64 / 4.0);
    report(
        "C9",
        "smoothing and choice uniformity",
        pair_stat < pair_crit && choice_stat < choice_crit,
        format!(
            "pairs chi2 {pair_stat:.1} < {pair_crit:.1} (df {}); |S|=4 choice chi2 {choice_stat:.2} < {choice_crit:.2} (df 3)",
            pairs - 1
        ),
    );
}

/// Runs the binary in a fresh directory holding `g.edges` and returns
/// every file it wrote.
fn invoke(edges: &str, args: &[&str]) -> Vec<(String, Vec<u8>)> {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("g.edges"), edges).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_smoothcast")).current_dir(dir.path()).args(args).status().unwrap();
    assert!(status.success(), "{args:?} exited with {status}");
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| !p.ends_with("g.edges"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

#[test]
fn c10_cli_determinism() {
    let edges = random_connected_graph(200, 150, MasterSeed(3)).unwrap().to_edge_list();
    let runs: Vec<Vec<&str>> = vec![
        vec![
            "run",
            "--topology",
            "random",
            "--n",
            "60",
            "--extra",
            "20",
            "--k",
            "4",
            "--ell",
            "2",
            "--dist",
            "p-mixed",
            "--seed",
            "7",
            "--trace",
            "full",
            "--out",
            "run.out",
            "--dot",
            "run.dot",
            "--dot-round",
            "3",
            "--export-assignment",
            "assign.json",
        ],
        vec![
            "run",
            "--topology",
            "cyclic-star",
            "--n",
            "32",
            "--k",
            "3",
            "--dist",
            "star-worst",
            "--ell",
            "1",
            "--seed",
            "11",
            "--out",
            "star.out",
        ],
        vec![
            "sweep",
            "--topology",
            "line",
            "--dist",
            "line-worst",
            "--n",
            "32,64",
            "--k",
            "2,4",
            "--ell",
            "0,1",
            "--trials",
            "4",
            "--seed",
            "5",
            "--phases",
            "--jobs",
            "3",
            "--out",
            "sweep.out",
            "--summary",
            "sweep.json",
        ],
        vec!["decompose", "--graph", "g.edges", "--report", "--out", "dec.out", "--dot", "dec.dot"],
        vec!["decompose", "--topology", "random", "--n", "500", "--extra", "100", "--seed", "2", "--out", "rnd.out"],
        vec![
            "path",
            "--topology",
            "line",
            "--n",
            "16",
            "--k",
            "2",
            "--u",
            "3",
            "--t",
            "1",
            "--r",
            "1",
            "--rp",
            "60",
            "--seed",
            "3",
            "--ell",
            "1",
            "--over-smoothed",
            "--verify",
            "--dist",
            "line-worst",
            "--out",
            "path.out",
        ],
        vec!["probe", "--n", "32", "--k", "4", "--ell", "1", "--trials", "20", "--seed", "9", "--out", "probe.out"],
    ];
    let mut mismatched = Vec::new();
    let mut compared = 0;
    for args in &runs {
        let first = invoke(&edges, args);
        let second = invoke(&edges, args);
        compared += first.len();
        if first != second {
            mismatched.push(args[0]);
        }
    }
    // thread count must not leak into sweep output
    let one = invoke(
        &edges,
        &[
            "sweep",
            "--topology",
            "random",
            "--extra",
            "5",
            "--n",
            "40",
            "--k",
            "3",
            "--ell",
            "1",
            "--trials",
            "6",
            "--seed",
            "1",
            "--jobs",
            "1",
            "--out",
            "j.out",
        ],
    );
    let many = invoke(
        &edges,
        &[
            "sweep",
            "--topology",
            "random",
            "--extra",
            "5",
            "--n",
            "40",
            "--k",
            "3",
            "--ell",
            "1",
            "--trials",
            "6",
            "--seed",
            "1",
            "--jobs",
            "4",
            "--out",
            "j.out",
        ],
    );
    if one != many {
        mismatched.push("sweep --jobs");
    }
    report(
        "C10",
        "byte-identical CLI output",
        mismatched.is_empty(),
        format!(
            "{} invocations run twice, {compared} file snapshots compared, mismatches: {mismatched:?}",
            runs.len() + 1
        ),
    );
}
