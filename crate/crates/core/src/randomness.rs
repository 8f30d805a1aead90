// SPDX-License-Identifier: Apache-2.0

//! Keyed deterministic randomness.
//!
//! Every random decision in a trial is drawn from a [`KeyedStream`] whose
//! starting state is a pure function of `(master seed, domain, a, b)`. The
//! broadcast choices of node `u` in round `r` use key `(seed, BROADCAST, u,
//! r)`; the smoothing draws of round `r` use `(seed, SMOOTH, r, 0)`. No
//! stream depends on how many values any other stream has produced, so the
//! bit assignment can be queried out of order (the path construction does
//! exactly that) and the same assignment can be replayed under a different
//! smoothing level.
//!
//! Not cryptographic.

use rand::Rng;
use rand_core::{impls, RngCore};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{NodeId, Round, TokenId};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Stream domains. Distinct domains never share a key.
pub mod domain {
    pub const BROADCAST: u64 = 0x6272_6f61_6463_7374;
    pub const SMOOTH: u64 = 0x736d_6f6f_7468_696e;
    pub const TOPOLOGY: u64 = 0x746f_706f_6c6f_6779;
    pub const TOKENS: u64 = 0x746f_6b65_6e73_0000;
}

/// Seed for one trial. Trial `i` of a sweep uses `base + i` (wrapping).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MasterSeed(pub u64);

impl MasterSeed {
    pub fn for_trial(self, trial: u64) -> MasterSeed {
        MasterSeed(self.0.wrapping_add(trial))
    }
}

impl std::fmt::Display for MasterSeed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix64 stream started from a hashed key.
#[derive(Clone, Debug)]
pub struct KeyedStream {
    state: u64,
}

impl KeyedStream {
    pub fn new(seed: MasterSeed, domain: u64, a: u64, b: u64) -> Self {
        let mut h = mix64(seed.0.wrapping_add(GOLDEN_GAMMA));
        h = mix64(h ^ domain);
        h = mix64(h ^ a.wrapping_mul(0xD6E8_FEB8_6659_FD93));
        h = mix64(h ^ b.wrapping_mul(0xA076_1D64_78BD_642F));
        KeyedStream { state: h }
    }
}

impl RngCore for KeyedStream {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        impls::fill_bytes_via_next(self, dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand_core::Error> {
        self.fill_bytes(dest);
        Ok(())
    }
}

/// A permutation of the token ids `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenPermutation {
    pub order: Vec<TokenId>,
}

impl TokenPermutation {
    pub fn first(&self) -> TokenId {
        self.order[0]
    }
}

/// The pre-committed randomness of every node in every round.
///
/// Node `u` in round `r` permutes `1..=k` with a forward Fisher–Yates
/// shuffle drawn from its keyed stream and broadcasts the first token of
/// that permutation it holds. The first entry is the node's primary token.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BitAssignment {
    pub seed: MasterSeed,
    pub n: usize,
    pub k: usize,
}

impl BitAssignment {
    pub fn new(seed: MasterSeed, n: usize, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::usage("token count k must be at least 1"));
        }
        if n == 0 {
            return Err(Error::usage("node count n must be at least 1"));
        }
        Ok(BitAssignment { seed, n, k })
    }

    fn check(&self, u: NodeId, r: Round) -> Result<()> {
        if r == 0 {
            return Err(Error::usage("rounds start at 1"));
        }
        if u as usize >= self.n {
            return Err(Error::usage(format!("node {u} out of range 0..{}", self.n)));
        }
        Ok(())
    }

    #[inline]
    fn stream(&self, u: NodeId, r: Round) -> KeyedStream {
        KeyedStream::new(self.seed, domain::BROADCAST, u as u64, r)
    }

    pub fn permutation(&self, u: NodeId, r: Round) -> Result<TokenPermutation> {
        self.check(u, r)?;
        let mut rng = self.stream(u, r);
        let k = self.k;
        let mut order: Vec<TokenId> = (1..=k as TokenId).collect();
        for i in 0..k.saturating_sub(1) {
            let j = rng.gen_range(i..k);
            order.swap(i, j);
        }
        Ok(TokenPermutation { order })
    }

    pub fn primary_token(&self, u: NodeId, r: Round) -> Result<TokenId> {
        self.check(u, r)?;
        Ok(self.primary_unchecked(u, r))
    }

    /// First step of the shuffle only; equal to `permutation(u, r).order[0]`.
    #[inline]
    pub(crate) fn primary_unchecked(&self, u: NodeId, r: Round) -> TokenId {
        if self.k == 1 {
            return 1;
        }
        let mut rng = self.stream(u, r);
        rng.gen_range(0..self.k) as TokenId + 1
    }

    /// The first token of the `(u, r)` permutation for which `holds` is
    /// true, generating the permutation lazily. `scratch` is reused between
    /// calls to avoid allocation.
    #[inline]
    pub(crate) fn choose_unchecked(
        &self,
        u: NodeId,
        r: Round,
        scratch: &mut Vec<TokenId>,
        holds: impl Fn(TokenId) -> bool,
    ) -> Option<TokenId> {
        let k = self.k;
        if k == 1 {
            return holds(1).then_some(1);
        }
        let mut rng = self.stream(u, r);
        let j0 = rng.gen_range(0..k);
        let first = j0 as TokenId + 1;
        if holds(first) {
            return Some(first);
        }
        scratch.clear();
        scratch.extend(1..=k as TokenId);
        scratch.swap(0, j0);
        for i in 1..k {
            if i < k - 1 {
                let j = rng.gen_range(i..k);
                scratch.swap(i, j);
            }
            if holds(scratch[i]) {
                return Some(scratch[i]);
            }
        }
        None
    }

    /// The token `u` broadcasts in round `r` when it knows `known`.
    pub fn choose(&self, u: NodeId, r: Round, known: &[TokenId]) -> Result<Option<TokenId>> {
        self.check(u, r)?;
        let mut scratch = Vec::with_capacity(self.k);
        Ok(self.choose_unchecked(u, r, &mut scratch, |t| known.contains(&t)))
    }
}

/// `ell` independent uniform draws, with replacement, from the unordered
/// node pairs of an `n`-node graph, for round `r`.
pub fn smoothing_stream(seed: MasterSeed, r: Round, ell: usize, n: usize) -> Result<Vec<(NodeId, NodeId)>> {
    if n < 2 {
        return Err(Error::usage("smoothing needs at least 2 nodes"));
    }
    let mut out = Vec::with_capacity(ell);
    smoothing_stream_into(seed, r, ell, n, &mut out);
    Ok(out)
}

pub(crate) fn smoothing_stream_into(seed: MasterSeed, r: Round, ell: usize, n: usize, out: &mut Vec<(NodeId, NodeId)>) {
    out.clear();
    if ell == 0 {
        return;
    }
    let mut rng = KeyedStream::new(seed, domain::SMOOTH, r, 0);
    for _ in 0..ell {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        out.push((lo as NodeId, hi as NodeId));
    }
}
