//! The quasi-dominion progress-measure solver.
//!
//! A representation (`Qdr`) pairs a measure function with a Max strategy on
//! the positions of positive measure. The solver alternates two phases:
//! `prg0` pulls zero-measure positions into the quasi dominion, and `prg+`
//! drains the non-progress part of it through its cheapest escapes, declaring
//! whatever stays closed as won by Max.
//!
//! [`ops`] holds set-based versions of every operator, written for clarity.
//! [`QdpmSolver`] is the incremental engine used for real runs.

mod engine;
pub mod ops;
mod queue;
pub mod search;
mod validate;

pub use engine::{qdpm_solve, solve_with, Phase, PhaseReport, QdpmSolver};
pub use validate::{check_quasi_dominion, validate_qdr, SizeLimit, Violation, DEEP_CHECK_LIMIT};

use crate::arena::{Game, Owner};
use crate::measure::Measure;

/// A measure function with a Max witness strategy on its positive support.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Qdr {
    pub measure: Vec<Measure>,
    /// Defined exactly on Max positions of positive measure.
    pub strategy: Vec<Option<usize>>,
}

/// The bottom representation: all-zero measure and the empty strategy.
pub fn qdr_init(g: &Game) -> Qdr {
    Qdr {
        measure: vec![Measure::zero(); g.n()],
        strategy: vec![None; g.n()],
    }
}

impl Qdr {
    /// Whether `v` lies in the support `Q`, the positions of positive measure.
    pub fn in_support(&self, v: usize) -> bool {
        !self.measure[v].is_zero()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.measure.len()).filter(|&v| self.in_support(v)).collect()
    }

    /// The representation order: measures compare pointwise, and wherever a
    /// Max position of `self`'s support keeps its measure it must keep its
    /// strategy too.
    pub fn leq(&self, other: &Qdr, g: &Game) -> bool {
        self.measure.len() == other.measure.len()
            && self.measure.iter().zip(&other.measure).all(|(a, b)| a <= b)
            && g.positions().all(|v| {
                g.owner(v) != Owner::Max
                    || !self.in_support(v)
                    || self.measure[v] != other.measure[v]
                    || self.strategy[v] == other.strategy[v]
            })
    }

    /// Strictly below in the representation order.
    pub fn lt(&self, other: &Qdr, g: &Game) -> bool {
        self != other && self.leq(other, g)
    }
}
