// SPDX-License-Identifier: Apache-2.0

//! Additive ℓ-smoothing: each round, `ell` uniform node pairs are sampled
//! with replacement and every sampled pair missing from the adversary's
//! graph is added for that round only.

use std::borrow::Cow;

use crate::error::Result;
use crate::randomness::{smoothing_stream_into, MasterSeed};
use crate::topology::Graph;
use crate::{NodeId, Round};

#[derive(Clone, Debug)]
pub struct SmoothedRound<'a> {
    pub base: Cow<'a, Graph>,
    /// Sampled pairs not already in `base`, deduplicated, sorted.
    pub added: Vec<(NodeId, NodeId)>,
}

impl SmoothedRound<'_> {
    /// `base ∪ added` as a graph.
    pub fn realized(&self) -> Graph {
        if self.added.is_empty() {
            return self.base.as_ref().clone();
        }
        let mut edges = self.base.edges().to_vec();
        edges.extend_from_slice(&self.added);
        edges.sort_unstable();
        Graph::from_sorted_unchecked(self.base.n(), edges)
    }
}

pub fn smooth<'a>(base: Cow<'a, Graph>, r: Round, ell: usize, seed: MasterSeed) -> Result<SmoothedRound<'a>> {
    let mut added = Vec::new();
    let mut scratch = Vec::new();
    added_edges_into(&base, r, ell, seed, &mut scratch, &mut added);
    Ok(SmoothedRound { base, added })
}

/// Smoothed additions for round `r` written into `added`; `samples` is scratch.
pub(crate) fn added_edges_into(
    base: &Graph,
    r: Round,
    ell: usize,
    seed: MasterSeed,
    samples: &mut Vec<(NodeId, NodeId)>,
    added: &mut Vec<(NodeId, NodeId)>,
) {
    added.clear();
    if ell == 0 || base.n() < 2 {
        return;
    }
    smoothing_stream_into(seed, r, ell, base.n(), samples);
    for &(a, b) in samples.iter() {
        if !base.has_edge(a, b) {
            added.push((a, b));
        }
    }
    added.sort_unstable();
    added.dedup();
}
