// SPDX-License-Identifier: Apache-2.0

//! Fixtures shared by the benchmarks.

use smoothcast_core::{tokens, DynamicSchedule, MasterSeed, TokenAssignment};

/// A schedule paired with its worst-case starting placement.
pub struct Instance {
    pub name: &'static str,
    pub schedule: DynamicSchedule,
    pub assignment: TokenAssignment,
}

pub fn line(n: usize, k: usize) -> Instance {
    Instance {
        name: "line",
        schedule: DynamicSchedule::static_line(n).expect("line"),
        assignment: tokens::line_worstcase(n, k).expect("placement"),
    }
}

pub fn cyclic_star(n: usize, k: usize) -> Instance {
    Instance {
        name: "cyclic-star",
        schedule: DynamicSchedule::cyclic_dynamic_star(n).expect("star"),
        assignment: tokens::star_worstcase(n, k).expect("placement"),
    }
}

pub fn random(n: usize, extra: usize, k: usize, seed: u64) -> Instance {
    Instance {
        name: "random",
        schedule: DynamicSchedule::random_connected(n, extra, MasterSeed(seed)).expect("random graph"),
        assignment: tokens::p_mixed(n, k, 0.5, MasterSeed(seed)).expect("placement"),
    }
}
