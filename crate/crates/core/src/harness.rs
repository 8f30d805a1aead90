// SPDX-License-Identifier: Apache-2.0

//! Seeded Monte-Carlo sweeps, phase instrumentation, power-law fits and the
//! rotating-star probe.
//!
//! Trial `i` of every grid point runs with seed `base + i`. Rows come back
//! ordered by grid point and then trial index regardless of how many worker
//! threads ran them, so CSV output is a pure function of the grid.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{run, ExecutionTrace, Outcome, RunOptions};
use crate::error::{Error, Result};
use crate::randomness::MasterSeed;
use crate::tokens::{self, TokenAssignment};
use crate::topology::DynamicSchedule;
use crate::{NodeId, Round, TokenId};

/// Existential constants from the phase analysis, exposed as multipliers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseConstants {
    /// Error exponent `x`.
    pub x: f64,
    /// Spread-phase multiplier, `8(x + 1)` by default.
    pub c1: f64,
    /// Interval multiplier for the p-mixed path argument.
    pub alpha: f64,
}

impl Default for PhaseConstants {
    fn default() -> Self {
        PhaseConstants { x: 4.0, c1: 40.0, alpha: 32.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum TopologyKind {
    Line,
    Star,
    Complete,
    /// Near-square grid; `n` must factor as `rows × cols` with `rows = ⌊√n⌋`.
    Grid,
    /// Random spanning tree plus `extra` random edges, redrawn per trial.
    Random,
    DynamicStar,
    CyclicStar,
}

impl TopologyKind {
    pub const NAMES: &'static [&'static str] =
        &["line", "star", "complete", "grid", "random", "dynamic-star", "cyclic-star"];

    pub fn name(self) -> &'static str {
        match self {
            TopologyKind::Line => "line",
            TopologyKind::Star => "star",
            TopologyKind::Complete => "complete",
            TopologyKind::Grid => "grid",
            TopologyKind::Random => "random",
            TopologyKind::DynamicStar => "dynamic-star",
            TopologyKind::CyclicStar => "cyclic-star",
        }
    }

    pub fn build(self, n: usize, extra: usize, seed: MasterSeed) -> Result<DynamicSchedule> {
        match self {
            TopologyKind::Line => DynamicSchedule::static_line(n),
            TopologyKind::Star => DynamicSchedule::static_star(n),
            TopologyKind::Complete => DynamicSchedule::static_complete(n),
            TopologyKind::Grid => {
                let rows = ((n as f64).sqrt() as usize).max(1);
                if !n.is_multiple_of(rows) {
                    return Err(Error::usage(format!("grid topology needs n divisible by ⌊√n⌋ = {rows}")));
                }
                DynamicSchedule::static_grid(rows, n / rows)
            }
            TopologyKind::Random => DynamicSchedule::random_connected(n, extra, seed),
            TopologyKind::DynamicStar => DynamicSchedule::dynamic_star(n),
            TopologyKind::CyclicStar => DynamicSchedule::cyclic_dynamic_star(n),
        }
    }
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TopologyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "line" => TopologyKind::Line,
            "star" => TopologyKind::Star,
            "complete" => TopologyKind::Complete,
            "grid" => TopologyKind::Grid,
            "random" => TopologyKind::Random,
            "dynamic-star" => TopologyKind::DynamicStar,
            "cyclic-star" => TopologyKind::CyclicStar,
            _ => {
                return Err(Error::usage(format!("unknown topology {s:?}; valid: {}", TopologyKind::NAMES.join(", "))))
            }
        })
    }
}

impl TryFrom<String> for TopologyKind {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<TopologyKind> for String {
    fn from(k: TopologyKind) -> String {
        k.name().to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum DistKind {
    Single,
    LineWorst,
    StarWorst,
    PMixed,
}

impl DistKind {
    pub const NAMES: &'static [&'static str] = &["single", "line-worst", "star-worst", "p-mixed"];

    pub fn name(self) -> &'static str {
        match self {
            DistKind::Single => "single",
            DistKind::LineWorst => "line-worst",
            DistKind::StarWorst => "star-worst",
            DistKind::PMixed => "p-mixed",
        }
    }

    pub fn build(self, n: usize, k: usize, p: f64, src: NodeId, seed: MasterSeed) -> Result<TokenAssignment> {
        match self {
            DistKind::Single => tokens::single_source(n, k, src),
            DistKind::LineWorst => tokens::line_worstcase(n, k),
            DistKind::StarWorst => tokens::star_worstcase(n, k),
            DistKind::PMixed => tokens::p_mixed(n, k, p, seed),
        }
    }
}

impl fmt::Display for DistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "single" => DistKind::Single,
            "line-worst" => DistKind::LineWorst,
            "star-worst" => DistKind::StarWorst,
            "p-mixed" => DistKind::PMixed,
            _ => {
                return Err(Error::usage(format!("unknown distribution {s:?}; valid: {}", DistKind::NAMES.join(", "))))
            }
        })
    }
}

impl TryFrom<String> for DistKind {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<DistKind> for String {
    fn from(k: DistKind) -> String {
        k.name().to_string()
    }
}

/// How δ and γ are chosen when not given explicitly.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseRule {
    /// δ = 1/k, γ = 1/k².
    #[default]
    Reciprocal,
    /// δ = (ln n / (nℓ))^{1/3}, γ = ℓ^{1/3} (ln n / n)^{2/3}.
    Optimal,
}

impl FromStr for PhaseRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reciprocal" => Ok(PhaseRule::Reciprocal),
            "optimal" => Ok(PhaseRule::Optimal),
            _ => Err(Error::usage(format!("unknown phase rule {s:?}; valid: reciprocal, optimal"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseParams {
    pub delta: f64,
    pub gamma: f64,
}

impl PhaseParams {
    pub fn from_rule(rule: PhaseRule, n: usize, k: usize, ell: usize) -> Self {
        let ln_n = (n as f64).ln();
        match rule {
            PhaseRule::Reciprocal => PhaseParams { delta: 1.0 / k as f64, gamma: 1.0 / (k * k) as f64 },
            PhaseRule::Optimal => {
                let l = ell.max(1) as f64;
                PhaseParams {
                    delta: (ln_n / (n as f64 * l)).cbrt().min(1.0),
                    gamma: (l.cbrt() * (ln_n / n as f64).powf(2.0 / 3.0)).min(1.0),
                }
            }
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let lo = (n as f64).ln() / n as f64;
        if !(self.delta >= lo - 1e-12 && self.delta <= 1.0) {
            return Err(Error::usage(format!("delta must lie in [ln(n)/n, 1] = [{lo:.6}, 1], got {}", self.delta)));
        }
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return Err(Error::usage(format!("gamma must lie in (0, 1], got {}", self.gamma)));
        }
        Ok(())
    }
}

/// One grid point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub topology: TopologyKind,
    /// Extra edges for [`TopologyKind::Random`].
    pub extra: usize,
    pub dist: DistKind,
    pub p: f64,
    pub src: NodeId,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub trials: usize,
    pub seed: MasterSeed,
    pub max_rounds: Option<Round>,
    pub phase: Option<PhaseParams>,
}

impl ExperimentConfig {
    pub fn new(topology: TopologyKind, dist: DistKind, n: usize, k: usize, ell: usize) -> Self {
        ExperimentConfig {
            topology,
            extra: 0,
            dist,
            p: 0.5,
            src: 0,
            n,
            k,
            ell,
            trials: 1,
            seed: MasterSeed(0),
            max_rounds: None,
            phase: None,
        }
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = MasterSeed(seed);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::usage("trials must be at least 1"));
        }
        if self.n == 0 || self.k == 0 {
            return Err(Error::usage("n and k must be positive"));
        }
        if self.max_rounds == Some(0) {
            return Err(Error::usage("max_rounds must be at least 1"));
        }
        if matches!(self.dist, DistKind::LineWorst | DistKind::StarWorst) && self.k < 2 {
            return Err(Error::usage("worst-case distributions need k >= 2"));
        }
        if self.dist == DistKind::PMixed && !(self.p > 0.0 && self.p <= 1.0) {
            return Err(Error::usage(format!("p must lie in (0, 1], got {}", self.p)));
        }
        if self.src as usize >= self.n {
            return Err(Error::usage(format!("source node {} outside 0..{}", self.src, self.n)));
        }
        if let Some(p) = &self.phase {
            p.validate(self.n)?;
        }
        Ok(())
    }

    pub fn schedule(&self, trial_seed: MasterSeed) -> Result<DynamicSchedule> {
        self.topology.build(self.n, self.extra, trial_seed)
    }

    pub fn assignment(&self, trial_seed: MasterSeed) -> Result<TokenAssignment> {
        self.dist.build(self.n, self.k, self.p, self.src, trial_seed)
    }

    /// Executes trial `trial` and returns its trace.
    pub fn run_trial(&self, trial: usize) -> Result<ExecutionTrace> {
        let seed = self.seed.for_trial(trial as u64);
        let schedule = self.schedule(seed)?;
        let assignment = self.assignment(seed)?;
        let mut opts = RunOptions::new(self.ell, seed);
        opts.max_rounds = self.max_rounds;
        run(&schedule, &assignment, &opts)
    }
}

/// Cartesian product over `n × k × ell`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub topology: TopologyKind,
    #[serde(default)]
    pub extra: usize,
    pub dist: DistKind,
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default)]
    pub src: NodeId,
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    #[serde(default)]
    pub ell: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub max_rounds: Option<Round>,
    /// Phase columns: explicit parameters win over the rule.
    #[serde(default)]
    pub phases: bool,
    #[serde(default)]
    pub phase_rule: PhaseRule,
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default)]
    pub gamma: Option<f64>,
    /// Record wall time per trial. Off by default so output is reproducible.
    #[serde(default)]
    pub wall_clock: bool,
}

fn default_p() -> f64 {
    0.5
}

impl SweepGrid {
    pub fn points(&self) -> Result<Vec<ExperimentConfig>> {
        let ells = if self.ell.is_empty() { vec![0] } else { self.ell.clone() };
        if self.n.is_empty() || self.k.is_empty() {
            return Err(Error::usage("grid needs at least one n and one k"));
        }
        let mut out = Vec::new();
        for &n in &self.n {
            for &k in &self.k {
                for &ell in &ells {
                    let phase = self.phases.then(|| {
                        let base = PhaseParams::from_rule(self.phase_rule, n, k, ell);
                        PhaseParams { delta: self.delta.unwrap_or(base.delta), gamma: self.gamma.unwrap_or(base.gamma) }
                    });
                    let cfg = ExperimentConfig {
                        topology: self.topology,
                        extra: self.extra,
                        dist: self.dist,
                        p: self.p,
                        src: self.src,
                        n,
                        k,
                        ell,
                        trials: self.trials,
                        seed: MasterSeed(self.seed),
                        max_rounds: self.max_rounds,
                        phase,
                    };
                    cfg.validate()?;
                    out.push(cfg);
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRow {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub topology: TopologyKind,
    pub dist: DistKind,
    pub completion: Option<Round>,
    pub outcome: Outcome,
    pub smoothed_deliveries: usize,
    pub wall_ms: u64,
    pub phase: Option<PhaseReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub trials: usize,
    pub completed: usize,
    pub mean: f64,
    pub median: f64,
    pub stddev: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub rows: Vec<TrialRow>,
    pub aggregates: Vec<Aggregate>,
}

pub const CSV_HEADER: [&str; 10] =
    ["trial", "seed", "n", "k", "ell", "topology", "dist", "completion", "smoothed_deliveries", "wall_ms"];
pub const PHASE_HEADER: [&str; 5] = ["phase_token", "spread_round", "first_seed_round", "seed_events", "sink_rounds"];

fn opt(v: Option<Round>) -> String {
    v.map_or_else(|| "-1".to_string(), |r| r.to_string())
}

impl SweepResult {
    /// CSV with the fixed header; phase columns are appended when `phases`.
    pub fn write_csv(&self, out: impl std::io::Write, phases: bool) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<&str> = CSV_HEADER.to_vec();
        if phases {
            header.extend_from_slice(&PHASE_HEADER);
        }
        w.write_record(&header)?;
        for r in &self.rows {
            let mut rec = vec![
                r.trial.to_string(),
                r.seed.to_string(),
                r.n.to_string(),
                r.k.to_string(),
                r.ell.to_string(),
                r.topology.to_string(),
                r.dist.to_string(),
                opt(r.completion),
                r.smoothed_deliveries.to_string(),
                r.wall_ms.to_string(),
            ];
            if phases {
                match &r.phase {
                    Some(p) => rec.extend([
                        p.token.to_string(),
                        opt(p.spread_round),
                        opt(p.first_seeding),
                        p.seeding_rounds.len().to_string(),
                        opt(p.sink_rounds),
                    ]),
                    None => rec.extend(std::iter::repeat_n(String::new(), PHASE_HEADER.len())),
                }
            }
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn summarize(values: &[f64]) -> (f64, f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    let median = if sorted.len().is_multiple_of(2) { (sorted[mid - 1] + sorted[mid]) / 2.0 } else { sorted[mid] };
    let var = if values.len() > 1 { values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
    (mean, median, var.sqrt())
}

fn trial_row(cfg: &ExperimentConfig, trial: usize, wall_clock: bool) -> Result<TrialRow> {
    let started = Instant::now();
    let trace = cfg.run_trial(trial)?;
    let wall_ms = if wall_clock { started.elapsed().as_millis() as u64 } else { 0 };
    let phase = cfg.phase.map(|p| phase_metrics(&trace, trace.bottleneck_token(), p.delta, p.gamma));
    Ok(TrialRow {
        trial,
        seed: cfg.seed.for_trial(trial as u64).0,
        n: cfg.n,
        k: cfg.k,
        ell: cfg.ell,
        topology: cfg.topology,
        dist: cfg.dist,
        completion: trace.completion(),
        outcome: trace.outcome,
        smoothed_deliveries: trace.smoothed_deliveries(),
        wall_ms,
        phase,
    })
}

/// Runs every trial of every grid point on up to `jobs` threads.
pub fn run_sweep(grid: &SweepGrid, jobs: usize) -> Result<SweepResult> {
    let points = grid.points()?;
    let work: Vec<(usize, usize)> =
        points.iter().enumerate().flat_map(|(pi, cfg)| (0..cfg.trials).map(move |t| (pi, t))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::usage(format!("cannot start {jobs} worker threads: {e}")))?;
    let rows: Vec<TrialRow> = pool.install(|| {
        work.par_iter().map(|&(pi, t)| trial_row(&points[pi], t, grid.wall_clock)).collect::<Result<Vec<_>>>()
    })?;
    let aggregates = points
        .iter()
        .map(|cfg| {
            let done: Vec<f64> = rows
                .iter()
                .filter(|r| r.n == cfg.n && r.k == cfg.k && r.ell == cfg.ell)
                .filter_map(|r| r.completion.map(|c| c as f64))
                .collect();
            let (mean, median, stddev) = summarize(&done);
            Aggregate {
                n: cfg.n,
                k: cfg.k,
                ell: cfg.ell,
                trials: cfg.trials,
                completed: done.len(),
                mean,
                median,
                stddev,
            }
        })
        .collect();
    Ok(SweepResult { rows, aggregates })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub slope: f64,
    pub intercept: f64,
}

impl PowerLawFit {
    pub fn predict(&self, n: f64) -> f64 {
        (self.intercept + self.slope * n.ln()).exp()
    }
}

/// Least-squares fit of `ln T = intercept + slope · ln n`.
pub fn fit_exponent(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 2 {
        return Err(Error::usage("exponent fit needs at least 2 points"));
    }
    if points.iter().any(|&(n, t)| !(n > 0.0 && t > 0.0)) {
        return Err(Error::usage("exponent fit needs positive values"));
    }
    let m = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::usage("exponent fit needs at least two distinct n"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Ok(PowerLawFit { slope, intercept: my - slope * mx })
}

/// Round budgets the phase analysis assigns, for comparison with the
/// measured marks. `seed` is `None` without smoothing.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseBudgets {
    pub spread: f64,
    pub seed: Option<f64>,
    pub sink: f64,
}

impl PhaseBudgets {
    pub fn new(n: usize, k: usize, ell: usize, delta: f64, gamma: f64, c: &PhaseConstants) -> Self {
        let (n, k) = (n as f64, k as f64);
        PhaseBudgets {
            spread: c.c1 * k * delta * n,
            seed: (ell > 0).then(|| 2.0 * c.x * (gamma / delta) * k * n / ell as f64),
            sink: (8.0 * c.x * k * n.ln() / gamma).ceil(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseReport {
    pub token: TokenId,
    pub delta: f64,
    pub gamma: f64,
    /// First round by whose end `⌈δn⌉` nodes know the token.
    pub spread_round: Option<Round>,
    /// Every round in which the token crossed a smoothed edge.
    pub smoothed_rounds: Vec<Round>,
    /// Smoothed deliveries at or after the spread mark.
    pub seeding_rounds: Vec<Round>,
    pub first_seeding: Option<Round>,
    pub completion: Option<Round>,
    /// Rounds from the last seeding event to the token's completion.
    pub sink_rounds: Option<Round>,
    pub budgets: PhaseBudgets,
}

pub fn phase_metrics(trace: &ExecutionTrace, t: TokenId, delta: f64, gamma: f64) -> PhaseReport {
    let spread_round = trace.spread_time(t, delta);
    let smoothed_rounds: Vec<Round> = trace
        .acquisitions
        .iter()
        .filter(|a| a.token == t && a.provenance == crate::engine::Provenance::Smoothed)
        .map(|a| a.round)
        .collect();
    let seeding_rounds: Vec<Round> = match spread_round {
        Some(s) => smoothed_rounds.iter().copied().filter(|&r| r >= s).collect(),
        None => Vec::new(),
    };
    let completion = trace.token_completion(t);
    let sink_rounds = match (seeding_rounds.last(), completion) {
        (Some(&last), Some(c)) => Some(c - last),
        _ => None,
    };
    PhaseReport {
        token: t,
        delta,
        gamma,
        spread_round,
        first_seeding: seeding_rounds.first().copied(),
        smoothed_rounds,
        seeding_rounds,
        completion,
        sink_rounds,
        budgets: PhaseBudgets::new(trace.n, trace.k, trace.ell, delta, gamma, &PhaseConstants::default()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeResult {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub trials: usize,
    pub seed: u64,
    /// Per-trial completion round, `None` if the round limit was hit.
    pub completions: Vec<Option<Round>>,
    /// Per trial: completed within the first `n` rounds, where the rotating
    /// star has not yet wrapped around.
    pub within_horizon: Vec<bool>,
    pub mean: f64,
    pub median: f64,
    /// Rounds past `n` are the cyclic extension of the instance.
    pub cyclic_extension: bool,
}

/// Completion of the worst-case placement on the rotating star, run on its
/// cyclic extension so every trial can finish.
pub fn lower_bound_probe(n: usize, k: usize, ell: usize, trials: usize, seed: u64) -> Result<ProbeResult> {
    if trials == 0 {
        return Err(Error::usage("trials must be at least 1"));
    }
    let schedule = DynamicSchedule::cyclic_dynamic_star(n)?;
    let assignment = tokens::star_worstcase(n, k)?;
    let base = MasterSeed(seed);
    let completions: Vec<Option<Round>> = (0..trials)
        .into_par_iter()
        .map(|i| run(&schedule, &assignment, &RunOptions::new(ell, base.for_trial(i as u64))).map(|t| t.completion()))
        .collect::<Result<_>>()?;
    let within_horizon = completions.iter().map(|c| c.is_some_and(|r| r <= n as Round)).collect();
    let done: Vec<f64> = completions.iter().flatten().map(|&r| r as f64).collect();
    let (mean, median, _) = summarize(&done);
    Ok(ProbeResult { n, k, ell, trials, seed, completions, within_horizon, mean, median, cyclic_extension: true })
}
