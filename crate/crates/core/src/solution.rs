//! Solver results, update counters and run limits shared by all solvers.

use std::time::Duration;

#[cfg(not(target_arch = "wasm32"))]
pub use std::time::Instant;
#[cfg(target_arch = "wasm32")]
pub use web_time::Instant;

use thiserror::Error;

use crate::arena::{Game, Owner};
use crate::measure::Measure;

/// Counters collected during a solver run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UpdateStats {
    /// Assignments that strictly changed a position's measure.
    pub lift_events: u64,
    /// Worklist rounds (BRIM) or phase applications (QDPM).
    pub solver_passes: u64,
    /// Productive applications of the two-phase step (QDPM only).
    pub outer_iterations: u64,
    pub wall_time: Duration,
}

/// The winning partition plus a Max strategy on Max's region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub win_max: Vec<usize>,
    pub win_min: Vec<usize>,
    /// `Some(succ)` exactly on the Max-owned positions of `win_max`.
    pub witness_max: Vec<Option<usize>>,
    pub final_measure: Vec<Measure>,
}

impl Solution {
    /// Builds the partition from a terminal measure: infinite means Max wins.
    /// `strategy` is restricted to Max-owned positions of the Max region.
    pub fn from_measure(g: &Game, mu: Vec<Measure>, strategy: &[Option<usize>]) -> Solution {
        let mut win_max = Vec::new();
        let mut win_min = Vec::new();
        let mut witness_max = vec![None; g.n()];
        for v in g.positions() {
            if mu[v].is_inf() {
                win_max.push(v);
                if g.owner(v) == Owner::Max {
                    witness_max[v] = strategy[v];
                }
            } else {
                win_min.push(v);
            }
        }
        Solution {
            win_max,
            win_min,
            witness_max,
            final_measure: mu,
        }
    }

    pub fn winner(&self, v: usize) -> Owner {
        if self.final_measure[v].is_inf() {
            Owner::Max
        } else {
            Owner::Min
        }
    }

    pub fn winners(&self) -> Vec<Owner> {
        (0..self.final_measure.len()).map(|v| self.winner(v)).collect()
    }
}

/// Limits for a run. Solvers poll the deadline between worklist steps.
#[derive(Clone, Copy, Debug, Default)]
pub struct Limits {
    pub deadline: Option<Instant>,
}

impl Limits {
    pub fn none() -> Limits {
        Limits::default()
    }

    pub fn timeout(d: Duration) -> Limits {
        Limits {
            deadline: Some(Instant::now() + d),
        }
    }

    pub(crate) fn check(&self) -> Result<(), Interrupted> {
        match self.deadline {
            Some(t) if Instant::now() >= t => Err(Interrupted),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("deadline reached before the solver finished")]
pub struct Interrupted;
