//! PGSolver parity games and their encoding as mean-payoff games.

use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive};

use super::mpg::{parse_records, write_records};
use super::{syntax, ParseError};
use crate::arena::{build_game, Game, GameError, Owner};

/// A parity game: an arena whose positions carry priorities. Owner `Max` is
/// the even player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityGame {
    arena: Game,
    priority: Vec<u32>,
}

impl ParityGame {
    pub fn new(owner: Vec<Owner>, priority: Vec<u32>, succ: Vec<Vec<usize>>) -> Result<Self, GameError> {
        let weights = priority.iter().map(|&p| BigInt::from(p)).collect();
        Ok(ParityGame {
            arena: Game::from_lists(owner, weights, succ)?,
            priority,
        })
    }

    /// The arena; its weights hold the priorities.
    pub fn arena(&self) -> &Game {
        &self.arena
    }

    pub fn priority(&self, v: usize) -> u32 {
        self.priority[v]
    }

    pub fn n(&self) -> usize {
        self.arena.n()
    }
}

pub fn parse_parity(text: &str) -> Result<ParityGame, ParseError> {
    let raw = parse_records(text, "parity", true)?;
    let arena = build_game(raw)?;
    let priority = arena
        .weights()
        .iter()
        .map(|p| p.to_u32())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| syntax(0, "priority does not fit 32 bits"))?;
    Ok(ParityGame { arena, priority })
}

pub fn write_parity(pg: &ParityGame) -> String {
    let mut out = String::new();
    write_records(&mut out, "parity", &pg.arena, |v| pg.priority[v].to_string());
    out
}

/// Encodes priority `p` as weight `(-n)^p`, `n` the number of positions.
/// On every simple cycle the highest priority dominates the sum, so the sum
/// is positive exactly when that priority is even.
pub fn parity_to_mpg(pg: &ParityGame) -> Game {
    let base = -BigInt::from(pg.n());
    pg.arena.map_weights(|v, _| Pow::pow(&base, pg.priority[v]))
}
