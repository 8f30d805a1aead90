// SPDX-License-Identifier: Apache-2.0

//! Random-broadcast simulation for k-message broadcast over adversarial
//! dynamic networks with ℓ-smoothing.
//!
//! The crate is organised bottom-up:
//!
//! - [`randomness`]: keyed, counter-based streams; the per-(node, round)
//!   bit assignment and the per-round smoothing draws.
//! - [`topology`]: static graphs and dynamic schedules (line, star, the
//!   rotating star instances, random connected graphs, explicit sequences).
//! - [`smoothing`]: per-round additive random edges.
//! - [`tokens`]: initial token placements.
//! - [`engine`]: the synchronous round simulator and its trace.
//! - [`predecessor`]: predecessor cuts, backward path construction and
//!   replay verification.
//! - [`decomposition`]: the √n component decomposition of static graphs.
//! - [`harness`]: seeded sweeps, phase metrics, exponent fits and the
//!   rotating-star probe.

pub mod decomposition;
pub mod engine;
pub mod error;
pub mod harness;
pub mod predecessor;
pub mod randomness;
pub mod smoothing;
pub mod tokens;
pub mod topology;

pub use engine::{run, step, ExecutionTrace, NodeState, Outcome, Provenance, RunOptions, TraceLevel};
pub use error::{Error, Result};
pub use randomness::{BitAssignment, MasterSeed, TokenPermutation};
pub use tokens::TokenAssignment;
pub use topology::{DynamicSchedule, Graph};

/// Dense 0-based node identifier.
pub type NodeId = u32;
/// Token identifier in `1..=k`.
pub type TokenId = u32;
/// Round number; executions start at round 1.
pub type Round = u64;
