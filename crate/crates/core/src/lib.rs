//! Mean-payoff game solving.
//!
//! Weights sit on positions. Max wins a play when its mean payoff is
//! strictly positive; a mean of exactly zero goes to Min. Three solvers share
//! that convention:
//! - [`qdpm`]: the quasi-dominion progress-measure algorithm;
//! - [`brim`]: the classic progress-measure iteration, used as a baseline;
//! - [`oracle`]: exhaustive strategy enumeration for small games.
//!
//! ```
//! use mpg_core::{io::parse_mpg, qdpm::qdpm_solve};
//!
//! let g = parse_mpg("mpg 1;\n0 1 0 1;\n1 -1 1 0;").unwrap();
//! let (solution, _stats) = qdpm_solve(&g);
//! assert_eq!(solution.win_min, vec![0, 1]);
//! ```

pub mod arena;
pub mod brim;
pub mod fixtures;
pub mod io;
pub mod measure;
pub mod num;
pub mod oracle;
pub mod qdpm;
pub mod solution;

pub use arena::{build_game, shift_threshold, Game, GameError, GameStats, Owner, RawPosition};
pub use measure::{Measure, MeasureFunction};
pub use solution::{Interrupted, Limits, Solution, UpdateStats};

/// Which solver to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Qdpm,
    Brim,
    Oracle,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Qdpm => "qdpm",
            Algorithm::Brim => "brim",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "qdpm" => Ok(Algorithm::Qdpm),
            "brim" => Ok(Algorithm::Brim),
            "oracle" => Ok(Algorithm::Oracle),
            _ => Err(format!("unknown algorithm '{s}'")),
        }
    }
}
