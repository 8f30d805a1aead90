// SPDX-License-Identifier: Apache-2.0

//! Initial token placements.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::randomness::{domain, KeyedStream, MasterSeed};
use crate::{NodeId, TokenId};

/// Which nodes start with which token. Tokens are `1..=k`; every token
/// has at least one holder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TokenAssignment {
    n: usize,
    k: usize,
    /// `holders[t - 1]`, sorted ascending.
    holders: Vec<Vec<NodeId>>,
}

#[derive(Deserialize)]
struct AssignmentJson {
    n: usize,
    k: usize,
    holders: BTreeMap<String, Vec<NodeId>>,
}

#[derive(Serialize)]
struct AssignmentOut<'a> {
    n: usize,
    k: usize,
    holders: HoldersOut<'a>,
}

/// Token-keyed map emitted in numeric token order.
struct HoldersOut<'a>(&'a [Vec<NodeId>]);

impl Serialize for HoldersOut<'_> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (i, h) in self.0.iter().enumerate() {
            map.serialize_entry(&(i + 1).to_string(), h)?;
        }
        map.end()
    }
}

impl TokenAssignment {
    /// `holders[t - 1]` lists the initial holders of token `t`.
    pub fn new(n: usize, k: usize, mut holders: Vec<Vec<NodeId>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::usage("k must be at least 1"));
        }
        if holders.len() != k {
            return Err(Error::validation(format!("expected holder sets for {k} tokens, got {}", holders.len())));
        }
        for (i, set) in holders.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.is_empty() {
                return Err(Error::validation(format!("token {} has no holder", i + 1)));
            }
            if let Some(&bad) = set.iter().find(|&&v| v as usize >= n) {
                return Err(Error::validation(format!("token {} held by node {bad} outside 0..{n}", i + 1)));
            }
        }
        Ok(TokenAssignment { n, k, holders })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn holders(&self, t: TokenId) -> &[NodeId] {
        &self.holders[t as usize - 1]
    }

    pub fn all_holders(&self) -> &[Vec<NodeId>] {
        &self.holders
    }

    pub fn holds(&self, u: NodeId, t: TokenId) -> bool {
        self.holders(t).binary_search(&u).is_ok()
    }

    /// Copy with node `u` added as a holder of token `t`.
    pub fn with_holder(&self, t: TokenId, u: NodeId) -> Result<Self> {
        if t == 0 || t as usize > self.k {
            return Err(Error::usage(format!("token {t} outside 1..={}", self.k)));
        }
        let mut holders = self.holders.clone();
        holders[t as usize - 1].push(u);
        TokenAssignment::new(self.n, self.k, holders)
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = AssignmentOut { n: self.n, k: self.k, holders: HoldersOut(&self.holders) };
        Ok(serde_json::to_string(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AssignmentJson = serde_json::from_str(text)?;
        let mut holders = vec![Vec::new(); doc.k];
        for (key, nodes) in doc.holders {
            let t: usize = key.parse().map_err(|_| Error::Parse(format!("bad token id {key:?}")))?;
            if t == 0 || t > doc.k {
                return Err(Error::validation(format!("token id {t} outside 1..={}", doc.k)));
            }
            holders[t - 1] = nodes;
        }
        TokenAssignment::new(doc.n, doc.k, holders)
    }
}

fn check_node(n: usize, u: NodeId) -> Result<()> {
    if u as usize >= n {
        return Err(Error::usage(format!("node {u} outside 0..{n}")));
    }
    Ok(())
}

/// Every token starts at `src` only.
pub fn single_source(n: usize, k: usize, src: NodeId) -> Result<TokenAssignment> {
    check_node(n, src)?;
    TokenAssignment::new(n, k, vec![vec![src]; k])
}

/// Node 0 holds every token; all other nodes hold tokens `2..=k`.
pub fn line_worstcase(n: usize, k: usize) -> Result<TokenAssignment> {
    if k < 2 {
        return Err(Error::usage("worst-case placement needs k >= 2"));
    }
    if n == 0 {
        return Err(Error::usage("n must be positive"));
    }
    let all: Vec<NodeId> = (0..n as NodeId).collect();
    let mut holders = vec![all; k];
    holders[0] = vec![0];
    TokenAssignment::new(n, k, holders)
}

/// Node `v_0` knows every token, the others know all but token 1. Same
/// holder sets as [`line_worstcase`].
pub fn star_worstcase(n: usize, k: usize) -> Result<TokenAssignment> {
    line_worstcase(n, k)
}

/// Each (node, token) included independently with probability `p`; any
/// token left without holders is then given to one uniform random node.
pub fn p_mixed(n: usize, k: usize, p: f64, seed: MasterSeed) -> Result<TokenAssignment> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::usage(format!("p must lie in (0, 1], got {p}")));
    }
    if n == 0 {
        return Err(Error::usage("n must be positive"));
    }
    let mut holders = Vec::with_capacity(k);
    for t in 1..=k as u64 {
        let mut rng = KeyedStream::new(seed, domain::TOKENS, t, 0);
        let mut set: Vec<NodeId> = (0..n as NodeId).filter(|_| rng.gen_bool(p)).collect();
        if set.is_empty() {
            let mut repair = KeyedStream::new(seed, domain::TOKENS, t, 1);
            set.push(repair.gen_range(0..n) as NodeId);
        }
        holders.push(set);
    }
    TokenAssignment::new(n, k, holders)
}
