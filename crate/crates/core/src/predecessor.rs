// SPDX-License-Identifier: Apache-2.0

//! Predecessor paths: built backwards in time over a fixed schedule and
//! bit assignment, then checked by replaying the engine.
//!
//! Walking `i` from `r'` down to `r + 1`, the construction takes the cut of
//! the current set `S` (initially `{u}`) in `G_{i-1}`, keeps the cut nodes
//! whose primary token in round `i - 1` is `t`, and if any remain adds the
//! lowest-id one to `S` and prepends `(v, i - 1)` to the path. Whenever such
//! a `v` knows `t` at the start of round `i - 1` it broadcasts `t` to a
//! neighbour already in `S`, so `t` reaching any entry in time reaches `u`
//! by the end of round `r' - 1`.

use std::borrow::Cow;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::engine::{NodeState, Simulation};
use crate::error::{Error, Result};
use crate::randomness::BitAssignment;
use crate::smoothing::smooth;
use crate::tokens::TokenAssignment;
use crate::topology::{DynamicSchedule, Graph};
use crate::{NodeId, Round, TokenId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredecessorPath {
    pub u: NodeId,
    pub t: TokenId,
    pub r: Round,
    pub rp: Round,
    /// `(node, round)` with strictly increasing rounds.
    pub entries: Vec<(NodeId, Round)>,
}

impl PredecessorPath {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Checks the structural invariants: rounds strictly increasing inside
    /// `[r, rp - 1]`, nodes pairwise distinct and different from `u`.
    pub fn check_structure(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        seen.insert(self.u);
        let mut last: Option<Round> = None;
        for &(v, round) in &self.entries {
            if round < self.r || round >= self.rp {
                return Err(Error::validation(format!("entry round {round} outside [{}, {}]", self.r, self.rp - 1)));
            }
            if last.is_some_and(|l| round <= l) {
                return Err(Error::validation("entry rounds not strictly increasing"));
            }
            if !seen.insert(v) {
                return Err(Error::validation(format!("node {v} repeated in path")));
            }
            last = Some(round);
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// Nodes outside `s` adjacent to some node of `s` in `graph`.
pub fn predecessor_cut(graph: &Graph, s: &BTreeSet<NodeId>) -> Result<BTreeSet<NodeId>> {
    if s.is_empty() {
        return Err(Error::usage("predecessor cut of an empty set"));
    }
    if let Some(&bad) = s.iter().find(|&&v| v as usize >= graph.n()) {
        return Err(Error::usage(format!("node {bad} outside 0..{}", graph.n())));
    }
    let mut member = vec![false; graph.n()];
    for &v in s {
        member[v as usize] = true;
    }
    let mut out = Vec::new();
    cut_into(graph, &member, s.iter().copied(), &mut out);
    Ok(out.into_iter().collect())
}

fn cut_into(graph: &Graph, member: &[bool], s: impl Iterator<Item = NodeId>, out: &mut Vec<NodeId>) {
    out.clear();
    for v in s {
        for &w in graph.neighbors(v) {
            if !member[w as usize] {
                out.push(w);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
}

/// Which graphs the construction walks over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PathGraphs {
    /// The adversary's snapshots only.
    #[default]
    Adversarial,
    /// Snapshots plus the smoothed edges of each round at this level.
    Smoothed { ell: usize },
}

/// Builds `P_{u,t}(r, rp)` with lowest-id tie-breaking.
pub fn construct_path(
    schedule: &DynamicSchedule,
    ba: &BitAssignment,
    u: NodeId,
    t: TokenId,
    r: Round,
    rp: Round,
) -> Result<PredecessorPath> {
    construct_path_over(schedule, ba, u, t, r, rp, PathGraphs::Adversarial)
}

pub fn construct_path_over(
    schedule: &DynamicSchedule,
    ba: &BitAssignment,
    u: NodeId,
    t: TokenId,
    r: Round,
    rp: Round,
    graphs: PathGraphs,
) -> Result<PredecessorPath> {
    if r == 0 || r >= rp {
        return Err(Error::usage(format!("need 1 <= r < r', got r={r}, r'={rp}")));
    }
    let n = schedule.n();
    if u as usize >= n || ba.n != n {
        return Err(Error::usage(format!("node {u} outside 0..{n} or bit assignment size mismatch")));
    }
    if t == 0 || t as usize > ba.k {
        return Err(Error::usage(format!("token {t} outside 1..={}", ba.k)));
    }
    let mut member = vec![false; n];
    member[u as usize] = true;
    let mut s: Vec<NodeId> = vec![u];
    let mut cut = Vec::new();
    let mut entries = Vec::new();
    let mut i = rp;
    while i > r {
        let round = i - 1;
        if s.len() < n {
            let base = schedule.snapshot(round)?;
            let g: Cow<'_, Graph> = match graphs {
                PathGraphs::Adversarial => base,
                PathGraphs::Smoothed { ell } => Cow::Owned(smooth(base, round, ell, ba.seed)?.realized()),
            };
            cut_into(&g, &member, s.iter().copied(), &mut cut);
            // cut is sorted, so the first match is the lowest id
            if let Some(&v) = cut.iter().find(|&&v| ba.primary_unchecked(v, round) == t) {
                member[v as usize] = true;
                s.push(v);
                entries.push((v, round));
            }
        } else {
            // S = V: every later cut is empty; still honour the horizon
            schedule.snapshot(round)?;
        }
        i -= 1;
    }
    entries.reverse();
    Ok(PredecessorPath { u, t, r, rp, entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReplayVerdict {
    /// The target knew `t` by the end of round `rp - 1`.
    Delivered,
    NotDelivered,
    /// No entry held `t` at the start of its round, so the path promises nothing.
    Vacuous,
}

/// Runs the engine with `ba`'s seed from round 1 and checks the path's
/// delivery promise.
pub fn verify_replay(
    schedule: &DynamicSchedule,
    ba: &BitAssignment,
    assignment: &TokenAssignment,
    path: &PredecessorPath,
    ell: usize,
) -> Result<ReplayVerdict> {
    if assignment.k() != ba.k || assignment.n() != schedule.n() {
        return Err(Error::usage("assignment does not match the bit assignment or schedule"));
    }
    let mut sim = Simulation::from_state(schedule, NodeState::from_assignment(assignment), 1, ell, ba.seed)?;
    let mut precondition = false;
    let mut delivered = false;
    let mut next_entry = 0;
    // the last round that can carry t to u is rp - 1
    while sim.next_round() < path.rp {
        let round = sim.next_round();
        while next_entry < path.entries.len() && path.entries[next_entry].1 < round {
            next_entry += 1;
        }
        if let Some(&(v, er)) = path.entries.get(next_entry) {
            if er == round && sim.state().knows(v, path.t) {
                precondition = true;
            }
        }
        if sim.state().knows(path.u, path.t) {
            delivered = true;
        }
        sim.step(false)?;
    }
    delivered |= sim.state().knows(path.u, path.t);
    Ok(match (precondition, delivered) {
        (false, _) => ReplayVerdict::Vacuous,
        (true, true) => ReplayVerdict::Delivered,
        (true, false) => ReplayVerdict::NotDelivered,
    })
}
