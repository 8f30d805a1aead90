// SPDX-License-Identifier: Apache-2.0

//! Synchronous random-broadcast simulator.
//!
//! In round `r` every node that knows at least one token broadcasts the
//! first token of its `(u, r)` permutation that it knows. All choices are
//! taken from the state at the start of the round; every neighbour in the
//! realized (base plus smoothed) graph receives the broadcast at the end of
//! the round. Completion is global and omniscient.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::randomness::{BitAssignment, MasterSeed};
use crate::smoothing::added_edges_into;
use crate::tokens::TokenAssignment;
use crate::topology::DynamicSchedule;
use crate::{NodeId, Round, TokenId};

/// Per-node known-token sets `T_u(r)`, as a packed bitset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeState {
    n: usize,
    k: usize,
    words: usize,
    bits: Vec<u64>,
    counts: Vec<u32>,
    total: usize,
}

impl NodeState {
    pub fn empty(n: usize, k: usize) -> Self {
        let words = k.div_ceil(64);
        NodeState { n, k, words, bits: vec![0; n * words], counts: vec![0; n], total: 0 }
    }

    pub fn from_assignment(a: &TokenAssignment) -> Self {
        let mut s = Self::empty(a.n(), a.k());
        for t in 1..=a.k() as TokenId {
            for &u in a.holders(t) {
                s.insert(u, t);
            }
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn knows(&self, u: NodeId, t: TokenId) -> bool {
        let i = (t - 1) as usize;
        self.bits[u as usize * self.words + i / 64] >> (i % 64) & 1 == 1
    }

    /// Adds `t` to `u`'s set; true if it was new.
    #[inline]
    pub fn insert(&mut self, u: NodeId, t: TokenId) -> bool {
        let i = (t - 1) as usize;
        let w = &mut self.bits[u as usize * self.words + i / 64];
        let mask = 1u64 << (i % 64);
        if *w & mask != 0 {
            return false;
        }
        *w |= mask;
        self.counts[u as usize] += 1;
        self.total += 1;
        true
    }

    pub fn known_count(&self, u: NodeId) -> usize {
        self.counts[u as usize] as usize
    }

    pub fn known_tokens(&self, u: NodeId) -> Vec<TokenId> {
        (1..=self.k as TokenId).filter(|&t| self.knows(u, t)).collect()
    }

    /// Number of nodes knowing `t`.
    pub fn holders_of(&self, t: TokenId) -> usize {
        (0..self.n as NodeId).filter(|&u| self.knows(u, t)).count()
    }

    pub fn is_complete(&self) -> bool {
        self.total == self.n * self.k
    }

    /// True if every token of `self` is also known in `later`.
    pub fn is_subset_of(&self, later: &NodeState) -> bool {
        self.bits.iter().zip(&later.bits).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Provenance {
    #[serde(rename = "adv")]
    Adversarial,
    #[serde(rename = "smooth")]
    Smoothed,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Adversarial => "adv",
            Provenance::Smoothed => "smooth",
        }
    }
}

/// Node `node` first learned `token` at the end of `round`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Acquisition {
    pub node: NodeId,
    pub token: TokenId,
    pub round: Round,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundRecord {
    pub round: Round,
    /// Smoothed edges present this round (not in the adversary's graph).
    pub added: Vec<(NodeId, NodeId)>,
    /// `(node, token)` for every broadcasting node, ascending by node.
    pub broadcasts: Vec<(NodeId, TokenId)>,
    pub acquired: Vec<Acquisition>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TraceLevel {
    /// Acquisition events and the outcome only.
    #[default]
    Summary,
    /// Also every round's smoothed edges and broadcasts.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// Every node knew every token at the end of this round (0 if at the start).
    Completed(Round),
    MaxRoundsExhausted {
        rounds: Round,
    },
    HorizonExhausted {
        horizon: Round,
    },
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub ell: usize,
    pub seed: MasterSeed,
    /// Defaults to `64·k·n` when `None`.
    pub max_rounds: Option<Round>,
    pub level: TraceLevel,
}

impl RunOptions {
    pub fn new(ell: usize, seed: MasterSeed) -> Self {
        RunOptions { ell, seed, max_rounds: None, level: TraceLevel::Summary }
    }

    pub fn max_rounds(mut self, rounds: Round) -> Self {
        self.max_rounds = Some(rounds);
        self
    }

    pub fn level(mut self, level: TraceLevel) -> Self {
        self.level = level;
        self
    }
}

pub fn default_max_rounds(n: usize, k: usize) -> Round {
    64 * k as Round * n as Round
}

/// One execution.
#[derive(Clone, Debug)]
pub struct ExecutionTrace {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub seed: MasterSeed,
    /// `n_t(1)` for `t = 1..=k`.
    pub initial_counts: Vec<usize>,
    /// All acquisitions in round order.
    pub acquisitions: Vec<Acquisition>,
    /// Per-round records; empty unless run at [`TraceLevel::Full`].
    pub rounds: Vec<RoundRecord>,
    pub rounds_executed: Round,
    pub outcome: Outcome,
}

impl ExecutionTrace {
    pub fn completion(&self) -> Option<Round> {
        match self.outcome {
            Outcome::Completed(r) => Some(r),
            _ => None,
        }
    }

    pub fn smoothed_deliveries(&self) -> usize {
        self.acquisitions.iter().filter(|a| a.provenance == Provenance::Smoothed).count()
    }

    /// `n_t(r)` for `r = 1..=rounds_executed + 1`; `counts[t - 1][r - 1]`.
    pub fn token_counts(&self) -> Vec<Vec<usize>> {
        let len = self.rounds_executed as usize + 1;
        let mut deltas = vec![vec![0usize; len]; self.k];
        for a in &self.acquisitions {
            deltas[a.token as usize - 1][a.round as usize] += 1;
        }
        deltas
            .into_iter()
            .zip(&self.initial_counts)
            .map(|(d, &init)| {
                let mut acc = init;
                d.into_iter()
                    .map(|x| {
                        acc += x;
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// Round at whose end token `t` reached every node; `Some(0)` if it
    /// started everywhere.
    pub fn token_completion(&self, t: TokenId) -> Option<Round> {
        let init = self.initial_counts[t as usize - 1];
        if init == self.n {
            return Some(0);
        }
        let mut count = init;
        for a in self.acquisitions.iter().filter(|a| a.token == t) {
            count += 1;
            if count == self.n {
                return Some(a.round);
            }
        }
        None
    }

    /// First round by whose end at least `⌈delta·n⌉` nodes know `t`.
    /// Returns 1 when the threshold already holds at the start.
    pub fn spread_time(&self, t: TokenId, delta: f64) -> Option<Round> {
        let target = threshold(delta, self.n);
        let mut count = self.initial_counts[t as usize - 1];
        if count >= target {
            return Some(1);
        }
        for a in self.acquisitions.iter().filter(|a| a.token == t) {
            count += 1;
            if count >= target {
                return Some(a.round);
            }
        }
        None
    }

    /// Token that completes last (lowest id on ties); incomplete tokens
    /// count as latest.
    pub fn bottleneck_token(&self) -> TokenId {
        (1..=self.k as TokenId)
            .max_by_key(|&t| (self.token_completion(t).unwrap_or(Round::MAX), std::cmp::Reverse(t)))
            .unwrap_or(1)
    }

    pub fn summary(&self) -> TraceSummary {
        TraceSummary {
            completion: self.completion().map_or(-1, |r| r as i64),
            n: self.n,
            k: self.k,
            ell: self.ell,
            seed: self.seed.0,
            status: match self.outcome {
                Outcome::Completed(_) => "completed",
                Outcome::MaxRoundsExhausted { .. } => "max-rounds",
                Outcome::HorizonExhausted { .. } => "horizon",
            },
            rounds: self.rounds_executed,
            smoothed_deliveries: self.smoothed_deliveries(),
        }
    }

    /// JSON-lines export: one record per round (full traces only), then
    /// the summary line.
    pub fn write_jsonl(&self, mut out: impl std::io::Write) -> Result<()> {
        for rec in &self.rounds {
            let line = RoundJson {
                round: rec.round,
                added: rec.added.iter().map(|&(a, b)| [a, b]).collect(),
                broadcasts: rec.broadcasts.iter().map(|&(u, t)| [u, t]).collect(),
                acquired: rec.acquired.iter().map(|a| (a.node, a.token, a.provenance)).collect(),
            };
            serde_json::to_writer(&mut out, &line)?;
            out.write_all(b"\n")?;
        }
        serde_json::to_writer(&mut out, &self.summary())?;
        out.write_all(b"\n")?;
        Ok(())
    }
}

#[derive(Serialize)]
struct RoundJson {
    round: Round,
    added: Vec<[NodeId; 2]>,
    broadcasts: Vec<[u32; 2]>,
    acquired: Vec<(NodeId, TokenId, Provenance)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceSummary {
    pub completion: i64,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub seed: u64,
    pub status: &'static str,
    pub rounds: Round,
    pub smoothed_deliveries: usize,
}

pub(crate) fn threshold(delta: f64, n: usize) -> usize {
    // guard against 0.1 * 30 = 3.0000000000000004
    let x = delta * n as f64;
    let c = x.ceil();
    if c - x > 1.0 - 1e-9 { x.floor() as usize } else { c as usize }.max(1)
}

/// Round-by-round driver holding reusable buffers.
pub struct Simulation<'a> {
    schedule: &'a DynamicSchedule,
    ba: BitAssignment,
    ell: usize,
    state: NodeState,
    next_round: Round,
    choice: Vec<TokenId>,
    perm_scratch: Vec<TokenId>,
    samples: Vec<(NodeId, NodeId)>,
    added: Vec<(NodeId, NodeId)>,
}

impl<'a> Simulation<'a> {
    pub fn new(
        schedule: &'a DynamicSchedule,
        assignment: &TokenAssignment,
        ell: usize,
        seed: MasterSeed,
    ) -> Result<Self> {
        Self::from_state(schedule, NodeState::from_assignment(assignment), 1, ell, seed)
    }

    /// Resumes from `state` at the start of round `round`.
    pub fn from_state(
        schedule: &'a DynamicSchedule,
        state: NodeState,
        round: Round,
        ell: usize,
        seed: MasterSeed,
    ) -> Result<Self> {
        if state.n() != schedule.n() {
            return Err(Error::usage(format!(
                "token state covers {} nodes but the schedule has {}",
                state.n(),
                schedule.n()
            )));
        }
        if round == 0 {
            return Err(Error::usage("rounds start at 1"));
        }
        let ba = BitAssignment::new(seed, state.n(), state.k())?;
        Ok(Simulation {
            schedule,
            ba,
            ell,
            choice: vec![0; state.n()],
            state,
            next_round: round,
            perm_scratch: Vec::new(),
            samples: Vec::new(),
            added: Vec::new(),
        })
    }

    pub fn state(&self) -> &NodeState {
        &self.state
    }

    pub fn into_state(self) -> NodeState {
        self.state
    }

    /// The round the next call to [`Simulation::step`] executes.
    pub fn next_round(&self) -> Round {
        self.next_round
    }

    pub fn bit_assignment(&self) -> &BitAssignment {
        &self.ba
    }

    /// Executes one round. With `detailed` false the record's `added` and
    /// `broadcasts` are left empty.
    pub fn step(&mut self, detailed: bool) -> Result<RoundRecord> {
        let r = self.next_round;
        let base = self.schedule.snapshot(r)?;
        added_edges_into(&base, r, self.ell, self.ba.seed, &mut self.samples, &mut self.added);

        let k = self.state.k;
        for u in 0..self.state.n as NodeId {
            let c = self.state.counts[u as usize] as usize;
            self.choice[u as usize] = if c == 0 {
                0
            } else if c == k {
                self.ba.primary_unchecked(u, r)
            } else {
                let state = &self.state;
                self.ba.choose_unchecked(u, r, &mut self.perm_scratch, |t| state.knows(u, t)).unwrap_or(0)
            };
        }

        // Receptions are applied in place: choices are already fixed, and an
        // insert that returns false means the token was known at the start
        // or already arrived this round. Adversarial edges go first so that
        // a token arriving over both kinds is credited to the adversary.
        let mut acquired = Vec::new();
        let choice = &self.choice;
        let state = &mut self.state;
        let mut deliver = |from: NodeId, to: NodeId, provenance: Provenance| {
            let t = choice[from as usize];
            if t != 0 && state.insert(to, t) {
                acquired.push(Acquisition { node: to, token: t, round: r, provenance });
            }
        };
        for &(a, b) in base.edges() {
            deliver(a, b, Provenance::Adversarial);
            deliver(b, a, Provenance::Adversarial);
        }
        for &(a, b) in &self.added {
            deliver(a, b, Provenance::Smoothed);
            deliver(b, a, Provenance::Smoothed);
        }
        acquired.sort_unstable_by_key(|a| (a.node, a.token));

        self.next_round += 1;
        let mut rec = RoundRecord { round: r, acquired, ..Default::default() };
        if detailed {
            rec.added = self.added.clone();
            rec.broadcasts =
                self.choice.iter().enumerate().filter(|(_, &t)| t != 0).map(|(u, &t)| (u as NodeId, t)).collect();
        }
        Ok(rec)
    }
}

/// Functional single round: the state after round `r` and its record.
pub fn step(
    state: &NodeState,
    r: Round,
    schedule: &DynamicSchedule,
    ell: usize,
    seed: MasterSeed,
) -> Result<(NodeState, RoundRecord)> {
    let mut sim = Simulation::from_state(schedule, state.clone(), r, ell, seed)?;
    let rec = sim.step(true)?;
    Ok((sim.into_state(), rec))
}

/// Runs until completion, the round limit, or the schedule's horizon.
pub fn run(schedule: &DynamicSchedule, assignment: &TokenAssignment, opts: &RunOptions) -> Result<ExecutionTrace> {
    let max_rounds = opts.max_rounds.unwrap_or_else(|| default_max_rounds(assignment.n(), assignment.k()));
    if max_rounds == 0 {
        return Err(Error::usage("max_rounds must be at least 1"));
    }
    let mut sim = Simulation::new(schedule, assignment, opts.ell, opts.seed)?;
    let initial_counts = assignment.all_holders().iter().map(Vec::len).collect();
    let mut trace = ExecutionTrace {
        n: assignment.n(),
        k: assignment.k(),
        ell: opts.ell,
        seed: opts.seed,
        initial_counts,
        acquisitions: Vec::new(),
        rounds: Vec::new(),
        rounds_executed: 0,
        outcome: Outcome::Completed(0),
    };
    if sim.state().is_complete() {
        return Ok(trace);
    }
    let detailed = opts.level == TraceLevel::Full;
    trace.outcome = Outcome::MaxRoundsExhausted { rounds: max_rounds };
    for r in 1..=max_rounds {
        let rec = match sim.step(detailed) {
            Ok(rec) => rec,
            Err(Error::Horizon { horizon, .. }) => {
                trace.outcome = Outcome::HorizonExhausted { horizon };
                break;
            }
            Err(e) => return Err(e),
        };
        trace.rounds_executed = r;
        trace.acquisitions.extend_from_slice(&rec.acquired);
        if detailed {
            trace.rounds.push(rec);
        }
        if sim.state().is_complete() {
            trace.outcome = Outcome::Completed(r);
            break;
        }
    }
    Ok(trace)
}
