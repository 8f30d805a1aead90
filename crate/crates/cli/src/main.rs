// SPDX-License-Identifier: Apache-2.0

//! `smoothcast`: run, sweep, decompose, path and probe from the shell.
//!
//! Exit status is 0 on success, 2 when arguments are rejected and 1 when
//! a run fails after its inputs were accepted.

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use smoothcast_core::decomposition::{decompose, validate};
use smoothcast_core::harness::{lower_bound_probe, run_sweep, DistKind, PhaseRule, SweepGrid, TopologyKind};
use smoothcast_core::predecessor::{construct_path_over, verify_replay, PathGraphs, ReplayVerdict};
use smoothcast_core::smoothing::smooth;
use smoothcast_core::{
    run, BitAssignment, DynamicSchedule, Error, Graph, MasterSeed, NodeId, Round, RunOptions, TokenAssignment, TokenId,
    TraceLevel,
};

#[derive(Parser, Debug)]
#[command(name = "smoothcast", version, about = "Random-broadcast simulator for smoothed dynamic networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate one execution and write its trace as JSONL
    Run(RunArgs),
    /// Run a Monte-Carlo grid and write one CSV row per trial
    Sweep(SweepArgs),
    /// Split a static connected graph into √n-sized low-diameter components
    Decompose(DecomposeArgs),
    /// Build a predecessor path and optionally check it by replay
    Path(PathArgs),
    /// Completion statistics on the rotating-star instance
    Probe(ProbeArgs),
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Topology generator: line, star, complete, grid, random, dynamic-star, cyclic-star
    #[arg(long, value_parser = parse_topology, conflicts_with = "graph")]
    topology: Option<TopologyKind>,
    /// Static graph from an edge-list file (`n m` header, then `a b` lines)
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Extra random edges for the random topology
    #[arg(long, default_value_t = 0)]
    extra: usize,
    /// Number of nodes (inferred from --graph when omitted)
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct TokenArgs {
    /// Number of tokens (inferred from --assignment when omitted)
    #[arg(long)]
    k: Option<usize>,
    /// Initial placement: single, line-worst, star-worst, p-mixed
    #[arg(long, value_parser = parse_dist, default_value = "single")]
    dist: DistKind,
    /// Inclusion probability for p-mixed
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Source node for the single placement
    #[arg(long, default_value_t = 0)]
    src: NodeId,
    /// Read the initial placement from a JSON file instead of --dist
    #[arg(long)]
    assignment: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TraceArg {
    Summary,
    Full,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    tokens: TokenArgs,
    /// Smoothed edges sampled per round
    #[arg(long, default_value_t = 0)]
    ell: usize,
    /// Master seed (decimal u64)
    #[arg(long)]
    seed: u64,
    /// Round cap [default: 64·k·n]
    #[arg(long)]
    max_rounds: Option<Round>,
    /// Trace verbosity
    #[arg(long, value_enum, default_value_t = TraceArg::Summary)]
    trace: TraceArg,
    /// Output file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the initial placement as JSON
    #[arg(long)]
    export_assignment: Option<PathBuf>,
    /// Also write one round's graph, smoothed edges included, as DOT
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Round rendered by --dot
    #[arg(long, default_value_t = 1, requires = "dot")]
    dot_round: Round,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Grid file (TOML, or JSON by .json extension); replaces the grid flags
    #[arg(long, conflicts_with_all = ["topology", "dist", "n", "k", "ell", "seed", "trials"])]
    config: Option<PathBuf>,
    /// Topology generator: line, star, complete, grid, random, dynamic-star, cyclic-star
    #[arg(long, value_parser = parse_topology)]
    topology: Option<TopologyKind>,
    /// Extra random edges for the random topology
    #[arg(long, default_value_t = 0)]
    extra: usize,
    /// Initial placement: single, line-worst, star-worst, p-mixed
    #[arg(long, value_parser = parse_dist, default_value = "single")]
    dist: DistKind,
    /// Inclusion probability for p-mixed
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Source node for the single placement
    #[arg(long, default_value_t = 0)]
    src: NodeId,
    /// Node counts, comma separated
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Token counts, comma separated
    #[arg(long, value_delimiter = ',')]
    k: Vec<usize>,
    /// Smoothing levels, comma separated
    #[arg(long, value_delimiter = ',', default_value = "0")]
    ell: Vec<usize>,
    /// Trials per grid point
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Master seed; trial i uses seed + i
    #[arg(long)]
    seed: Option<u64>,
    /// Round cap [default: 64·k·n]
    #[arg(long)]
    max_rounds: Option<Round>,
    /// Append phase columns for the bottleneck token
    #[arg(long)]
    phases: bool,
    /// How δ and γ are chosen when not given
    #[arg(long, value_enum, default_value_t = PhaseRuleArg::Reciprocal)]
    phase_rule: PhaseRuleArg,
    /// Spread fraction δ (overrides --phase-rule)
    #[arg(long)]
    delta: Option<f64>,
    /// Seeding fraction γ (overrides --phase-rule)
    #[arg(long)]
    gamma: Option<f64>,
    /// Fill wall_ms with measured time; output is then not reproducible
    #[arg(long)]
    wall_clock: bool,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Output file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write per-point aggregates as JSON
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PhaseRuleArg {
    Reciprocal,
    Optimal,
}

impl From<PhaseRuleArg> for PhaseRule {
    fn from(r: PhaseRuleArg) -> Self {
        match r {
            PhaseRuleArg::Reciprocal => PhaseRule::Reciprocal,
            PhaseRuleArg::Optimal => PhaseRule::Optimal,
        }
    }
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Seed for the random topology
    #[arg(long)]
    seed: Option<u64>,
    /// Include per-component certificates and the validation report
    #[arg(long)]
    report: bool,
    /// Output file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the graph coloured by component as DOT
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PathArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    tokens: TokenArgs,
    /// Target node
    #[arg(long)]
    u: NodeId,
    /// Token id (1-based)
    #[arg(long)]
    t: TokenId,
    /// First round of the window
    #[arg(long)]
    r: Round,
    /// Deadline round r'
    #[arg(long)]
    rp: Round,
    /// Master seed
    #[arg(long)]
    seed: u64,
    /// Smoothing level used by --over-smoothed and --verify
    #[arg(long, default_value_t = 0)]
    ell: usize,
    /// Walk the smoothed graphs instead of the adversary's
    #[arg(long)]
    over_smoothed: bool,
    /// Replay the engine from the placement and report the verdict
    #[arg(long)]
    verify: bool,
    /// Output file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ProbeArgs {
    /// Number of nodes
    #[arg(long)]
    n: usize,
    /// Number of tokens
    #[arg(long)]
    k: usize,
    /// Smoothed edges sampled per round
    #[arg(long, default_value_t = 0)]
    ell: usize,
    /// Trials
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Master seed; trial i uses seed + i
    #[arg(long)]
    seed: u64,
    /// Output file [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_topology(s: &str) -> Result<TopologyKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_dist(s: &str) -> Result<DistKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> ExitCode {
    let usage = e.chain().any(|c| c.downcast_ref::<Error>().is_some_and(Error::is_usage));
    ExitCode::from(if usage { 2 } else { 1 })
}

fn execute(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Path(a) => cmd_path(a),
        Command::Probe(a) => cmd_probe(a),
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Error::usage(msg).into()
}

/// Opens `--out` or stdout. Files are created only after validation.
fn output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(Graph::read_edge_list(BufReader::new(file))?)
}

fn read_assignment(path: &Path) -> anyhow::Result<TokenAssignment> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(TokenAssignment::from_json(&text)?)
}

/// Resolves `--graph`/`--topology` and `--n` into a schedule.
fn schedule(g: &GraphArgs, seed: Option<u64>) -> anyhow::Result<DynamicSchedule> {
    match (&g.graph, g.topology) {
        (Some(path), _) => {
            let graph = read_graph(path)?;
            if let Some(n) = g.n.filter(|&n| n != graph.n()) {
                return Err(usage(format!("--n {n} disagrees with {} nodes in {}", graph.n(), path.display())));
            }
            Ok(DynamicSchedule::static_graph(graph)?)
        }
        (None, Some(kind)) => {
            let n = g.n.ok_or_else(|| usage("--n is required with --topology"))?;
            if kind == TopologyKind::Random && seed.is_none() {
                return Err(usage("--seed is required with the random topology"));
            }
            Ok(kind.build(n, g.extra, MasterSeed(seed.unwrap_or(0)))?)
        }
        (None, None) => Err(usage(format!(
            "one of --topology or --graph is required; topologies: {}",
            TopologyKind::NAMES.join(", ")
        ))),
    }
}

fn assignment(t: &TokenArgs, n: usize, seed: u64) -> anyhow::Result<TokenAssignment> {
    if let Some(path) = &t.assignment {
        let a = read_assignment(path)?;
        if a.n() != n {
            return Err(usage(format!("assignment has {} nodes, schedule has {n}", a.n())));
        }
        if let Some(k) = t.k.filter(|&k| k != a.k()) {
            return Err(usage(format!("--k {k} disagrees with {} tokens in {}", a.k(), path.display())));
        }
        return Ok(a);
    }
    let k = t.k.ok_or_else(|| usage("--k is required unless --assignment is given"))?;
    if t.dist == DistKind::Single && t.src as usize >= n {
        return Err(usage(format!("--src {} outside 0..{n}", t.src)));
    }
    Ok(t.dist.build(n, k, t.p, t.src, MasterSeed(seed))?)
}

fn cmd_run(a: RunArgs) -> anyhow::Result<()> {
    if a.max_rounds == Some(0) {
        return Err(usage("--max-rounds must be at least 1"));
    }
    let sched = schedule(&a.graph, Some(a.seed))?;
    let placement = assignment(&a.tokens, sched.n(), a.seed)?;
    if a.dot.is_some() {
        if a.dot_round == 0 {
            return Err(usage("--dot-round must be at least 1"));
        }
        if sched.horizon().is_some_and(|h| a.dot_round > h) {
            return Err(usage(format!("--dot-round {} is past the schedule horizon", a.dot_round)));
        }
    }
    let level = match a.trace {
        TraceArg::Summary => TraceLevel::Summary,
        TraceArg::Full => TraceLevel::Full,
    };
    let mut opts = RunOptions::new(a.ell, MasterSeed(a.seed)).level(level);
    opts.max_rounds = a.max_rounds;

    let trace = run(&sched, &placement, &opts)?;
    if let Some(path) = &a.export_assignment {
        write_file(path, &(placement.to_json()? + "\n"))?;
    }
    if let Some(path) = &a.dot {
        let base = sched.snapshot(a.dot_round)?;
        let g = if a.ell > 0 && sched.n() >= 2 {
            smooth(base, a.dot_round, a.ell, opts.seed)?.realized()
        } else {
            base.into_owned()
        };
        write_file(path, &g.to_dot(None))?;
    }
    let mut out = output(a.out.as_deref())?;
    trace.write_jsonl(&mut out)?;
    out.flush()?;
    Ok(())
}

fn load_grid(path: &Path) -> anyhow::Result<SweepGrid> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let grid = if json {
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
    } else {
        toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
    };
    Ok(grid)
}

fn cmd_sweep(a: SweepArgs) -> anyhow::Result<()> {
    if a.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    let grid = match &a.config {
        Some(path) => {
            let mut grid = load_grid(path)?;
            grid.wall_clock |= a.wall_clock;
            grid.phases |= a.phases;
            grid
        }
        None => {
            let topology = a
                .topology
                .ok_or_else(|| usage(format!("--topology is required; valid: {}", TopologyKind::NAMES.join(", "))))?;
            let seed = a.seed.ok_or_else(|| usage("--seed is required"))?;
            if a.n.is_empty() || a.k.is_empty() {
                return Err(usage("--n and --k are required"));
            }
            SweepGrid {
                topology,
                extra: a.extra,
                dist: a.dist,
                p: a.p,
                src: a.src,
                n: a.n,
                k: a.k,
                ell: a.ell,
                trials: a.trials,
                seed,
                max_rounds: a.max_rounds,
                phases: a.phases,
                phase_rule: a.phase_rule.into(),
                delta: a.delta,
                gamma: a.gamma,
                wall_clock: a.wall_clock,
            }
        }
    };
    if (grid.delta.is_some() || grid.gamma.is_some()) && !grid.phases {
        return Err(usage("--delta and --gamma only apply with --phases"));
    }
    // validates every point before any trial runs
    grid.points()?;
    let result = run_sweep(&grid, a.jobs)?;
    let mut out = output(a.out.as_deref())?;
    result.write_csv(&mut out, grid.phases)?;
    out.flush()?;
    if let Some(path) = &a.summary {
        write_file(path, &(serde_json::to_string_pretty(&result.aggregates)? + "\n"))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct DecomposeReport<'a> {
    components: &'a [Vec<NodeId>],
    certificates: &'a [smoothcast_core::decomposition::Certificate],
    validation: smoothcast_core::decomposition::CertificateReport,
}

fn cmd_decompose(a: DecomposeArgs) -> anyhow::Result<()> {
    if a.graph.topology.is_some_and(|t| matches!(t, TopologyKind::DynamicStar | TopologyKind::CyclicStar)) {
        return Err(usage("decompose needs a static topology"));
    }
    let sched = schedule(&a.graph, a.seed)?;
    let g = sched.snapshot(1)?.into_owned();
    let d = decompose(&g)?;
    let text = if a.report {
        serde_json::to_string(&DecomposeReport {
            components: &d.components,
            certificates: &d.certificates,
            validation: validate(&g, &d),
        })?
    } else {
        d.to_json()?
    };
    if let Some(path) = &a.dot {
        write_file(path, &d.to_dot(&g))?;
    }
    let mut out = output(a.out.as_deref())?;
    writeln!(out, "{text}")?;
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct VerifiedPath<'a> {
    #[serde(flatten)]
    path: &'a smoothcast_core::predecessor::PredecessorPath,
    replay: &'static str,
}

fn cmd_path(a: PathArgs) -> anyhow::Result<()> {
    let sched = schedule(&a.graph, Some(a.seed))?;
    let n = sched.n();
    let placement =
        if a.verify || a.tokens.assignment.is_some() { Some(assignment(&a.tokens, n, a.seed)?) } else { None };
    let k = match (&placement, a.tokens.k) {
        (Some(p), _) => p.k(),
        (None, Some(k)) => k,
        (None, None) => return Err(usage("--k is required")),
    };
    if let Some(h) = sched.horizon().filter(|&h| a.rp > h + 1) {
        return Err(usage(format!("--rp {} needs rounds past the schedule horizon {h}", a.rp)));
    }
    let ba = BitAssignment::new(MasterSeed(a.seed), n, k)?;
    let graphs = if a.over_smoothed { PathGraphs::Smoothed { ell: a.ell } } else { PathGraphs::Adversarial };
    let path = construct_path_over(&sched, &ba, a.u, a.t, a.r, a.rp, graphs)?;
    let text = match &placement {
        Some(p) if a.verify => {
            let verdict = verify_replay(&sched, &ba, p, &path, a.ell)?;
            let replay = match verdict {
                ReplayVerdict::Delivered => "delivered",
                ReplayVerdict::NotDelivered => "not-delivered",
                ReplayVerdict::Vacuous => "vacuous",
            };
            serde_json::to_string(&VerifiedPath { path: &path, replay })?
        }
        _ => path.to_json()?,
    };
    let mut out = output(a.out.as_deref())?;
    writeln!(out, "{text}")?;
    out.flush()?;
    Ok(())
}

fn cmd_probe(a: ProbeArgs) -> anyhow::Result<()> {
    if a.k < 2 {
        return Err(usage("the star instance needs k >= 2"));
    }
    if a.n < 2 {
        return Err(usage("the star instance needs n >= 2"));
    }
    let result = lower_bound_probe(a.n, a.k, a.ell, a.trials, a.seed)?;
    let mut out = output(a.out.as_deref())?;
    writeln!(out, "{}", serde_json::to_string(&result)?)?;
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("smoothcast").chain(args.iter().copied())).unwrap()
    }

    fn run_to_string(args: &[&str]) -> anyhow::Result<String> {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("out");
        let mut argv: Vec<&str> = args.to_vec();
        let out_s = out.to_str().unwrap().to_string();
        argv.extend(["--out", &out_s]);
        execute(parse(&argv))?;
        Ok(fs::read_to_string(out).unwrap())
    }

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn help_lists_defaults() {
        let mut cmd = Cli::command();
        let help = cmd.find_subcommand_mut("sweep").unwrap().render_long_help().to_string();
        assert!(help.contains("--jobs"));
        assert!(help.contains("[default: 1]"));
        assert!(help.contains("[default: single]"));
    }

    #[test]
    fn run_emits_summary_with_completion() {
        let text = run_to_string(&[
            "run",
            "--topology",
            "line",
            "--n",
            "64",
            "--k",
            "8",
            "--ell",
            "1",
            "--dist",
            "line-worst",
            "--seed",
            "7",
        ])
        .unwrap();
        let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
        assert!(last["completion"].as_i64().unwrap() > 0);
        assert_eq!(last["n"], 64);
        assert_eq!(last["seed"], 7);
    }

    #[test]
    fn full_trace_has_round_lines() {
        let text =
            run_to_string(&["run", "--topology", "line", "--n", "4", "--k", "1", "--seed", "1", "--trace", "full"])
                .unwrap();
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first["round"], 1);
        assert!(first["broadcasts"].is_array());
    }

    #[test]
    fn path_k1_grows() {
        let text = run_to_string(&[
            "path",
            "--topology",
            "line",
            "--n",
            "8",
            "--k",
            "1",
            "--u",
            "0",
            "--t",
            "1",
            "--r",
            "1",
            "--rp",
            "5",
            "--seed",
            "3",
        ])
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(!v["entries"].as_array().unwrap().is_empty());
        assert_eq!(v["rp"], 5);
    }

    #[test]
    fn usage_errors_map_to_two() {
        let e = execute(parse(&["run", "--topology", "line", "--k", "2", "--seed", "1"])).unwrap_err();
        assert_eq!(exit_code(&e), ExitCode::from(2));
        let e = execute(parse(&["sweep", "--topology", "line", "--n", "8", "--k", "2"])).unwrap_err();
        assert_eq!(exit_code(&e), ExitCode::from(2));
        assert!(Cli::try_parse_from(["smoothcast", "run", "--topology", "ring"]).is_err());
    }

    #[test]
    fn missing_file_is_runtime_error() {
        let e = execute(parse(&["decompose", "--graph", "/nonexistent/g.edges"])).unwrap_err();
        assert_eq!(exit_code(&e), ExitCode::from(1));
    }

    #[test]
    fn decompose_from_file_covers_all_nodes() {
        let dir = tempfile::tempdir().unwrap();
        let g = dir.path().join("g.edges");
        fs::write(&g, smoothcast_core::topology::grid_graph(5, 6).to_edge_list()).unwrap();
        let text = run_to_string(&["decompose", "--graph", g.to_str().unwrap(), "--report"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let covered: usize = v["components"].as_array().unwrap().iter().map(|c| c.as_array().unwrap().len()).sum();
        assert_eq!(covered, 30);
        assert_eq!(v["validation"]["diameter"], true);
    }

    #[test]
    fn sweep_config_matches_flags() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("grid.toml");
        fs::write(
            &cfg,
            "topology = \"line\"\ndist = \"line-worst\"\nn = [16, 32]\nk = [2]\nell = [0, 1]\ntrials = 3\nseed = 9\n",
        )
        .unwrap();
        let from_file = run_to_string(&["sweep", "--config", cfg.to_str().unwrap()]).unwrap();
        let from_flags = run_to_string(&[
            "sweep",
            "--topology",
            "line",
            "--dist",
            "line-worst",
            "--n",
            "16,32",
            "--k",
            "2",
            "--ell",
            "0,1",
            "--trials",
            "3",
            "--seed",
            "9",
            "--jobs",
            "3",
        ])
        .unwrap();
        assert_eq!(from_file, from_flags);
        assert_eq!(from_file.lines().count(), 1 + 2 * 2 * 3);
    }

    #[test]
    fn assignment_round_trip_through_files() {
        let dir = tempfile::tempdir().unwrap();
        let exported = dir.path().join("a.json");
        let first = run_to_string(&[
            "run",
            "--topology",
            "line",
            "--n",
            "20",
            "--k",
            "3",
            "--dist",
            "p-mixed",
            "--p",
            "0.3",
            "--seed",
            "4",
            "--export-assignment",
            exported.to_str().unwrap(),
        ])
        .unwrap();
        let second = run_to_string(&[
            "run",
            "--topology",
            "line",
            "--assignment",
            exported.to_str().unwrap(),
            "--n",
            "20",
            "--seed",
            "4",
        ])
        .unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn verify_reports_a_verdict() {
        let text = run_to_string(&[
            "path",
            "--topology",
            "line",
            "--n",
            "6",
            "--k",
            "2",
            "--u",
            "5",
            "--t",
            "1",
            "--r",
            "1",
            "--rp",
            "40",
            "--seed",
            "2",
            "--verify",
            "--dist",
            "single",
        ])
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(["delivered", "vacuous"].contains(&v["replay"].as_str().unwrap()));
    }
}
