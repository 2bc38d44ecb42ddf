//! Text formats, the parity encoding, edge-weight conversion and the random
//! game generator.

mod edges;
mod generate;
mod mpg;
mod parity;

pub use edges::{edges_to_positions, EdgeGame};
pub use generate::{generate_random, GenError, GenParams};
pub use mpg::{parse_mpg, write_mpg, write_mpg_with_comment};
pub use parity::{parity_to_mpg, parse_parity, write_parity, ParityGame};

use thiserror::Error;

use crate::arena::GameError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error(transparent)]
    Invalid(#[from] GameError),
}

pub(crate) fn syntax(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        reason: reason.into(),
    }
}
