//! The game arena: positions, owners, weights and the move relation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// The two players. `Max` wants a strictly positive mean payoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Owner {
    Max,
    Min,
}

impl Owner {
    /// File code: 0 for `Max`, 1 for `Min`.
    pub fn code(self) -> u8 {
        match self {
            Owner::Max => 0,
            Owner::Min => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Owner> {
        match code {
            0 => Some(Owner::Max),
            1 => Some(Owner::Min),
            _ => None,
        }
    }

    pub fn opponent(self) -> Owner {
        match self {
            Owner::Max => Owner::Min,
            Owner::Min => Owner::Max,
        }
    }
}

impl fmt::Display for Owner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Owner::Max => write!(f, "max"),
            Owner::Min => write!(f, "min"),
        }
    }
}

/// One unvalidated position record, as read from a file or built by hand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPosition {
    pub id: usize,
    pub weight: BigInt,
    pub owner: Owner,
    pub succ: Vec<usize>,
    pub label: Option<String>,
}

impl RawPosition {
    pub fn new(id: usize, weight: impl Into<BigInt>, owner: Owner, succ: Vec<usize>) -> Self {
        RawPosition {
            id,
            weight: weight.into(),
            owner,
            succ,
            label: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("position {0} has no successors")]
    SinkPosition(usize),
    #[error("position {0} has a move to {1}, which does not exist")]
    DanglingEdge(usize, usize),
    #[error("position {0} is declared twice")]
    DuplicateId(usize),
    #[error("position {0} lists successor {1} twice")]
    DuplicateSuccessor(usize, usize),
    #[error("position {0} is missing (ids must be dense)")]
    MissingId(usize),
    #[error("the game has no positions")]
    Empty,
}

/// Derived size and weight quantities of a game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameStats {
    pub n: usize,
    pub m: usize,
    /// Largest positive weight, 0 if there is none.
    pub max_weight: BigInt,
    /// Sum of all strictly positive weights.
    pub positive_sum: BigInt,
}

/// An immutable, validated arena with weights on positions.
///
/// Successor lists keep their input order; predecessor lists are the exact
/// transpose, ordered by source id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    owner: Vec<Owner>,
    weight: Vec<BigInt>,
    succ_off: Vec<usize>,
    succ: Vec<usize>,
    pred_off: Vec<usize>,
    pred: Vec<usize>,
    labels: Vec<Option<String>>,
    positive_sum: BigInt,
    max_weight: BigInt,
}

/// Validates raw records and builds a game. Records may come in any order.
pub fn build_game(raw: Vec<RawPosition>) -> Result<Game, GameError> {
    if raw.is_empty() {
        return Err(GameError::Empty);
    }
    let mut by_id = BTreeMap::new();
    for r in raw {
        let id = r.id;
        if by_id.insert(id, r).is_some() {
            return Err(GameError::DuplicateId(id));
        }
    }
    let n = by_id.len();
    let mut owner = Vec::with_capacity(n);
    let mut weight = Vec::with_capacity(n);
    let mut succ = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (i, (id, r)) in by_id.into_iter().enumerate() {
        if id != i {
            return Err(GameError::MissingId(i));
        }
        owner.push(r.owner);
        weight.push(r.weight);
        succ.push(r.succ);
        labels.push(r.label);
    }
    Game::assemble(owner, weight, succ, labels)
}

impl Game {
    /// Builds a game from per-position columns; position `i` is index `i`.
    pub fn from_lists(
        owner: Vec<Owner>,
        weight: Vec<BigInt>,
        succ: Vec<Vec<usize>>,
    ) -> Result<Game, GameError> {
        let n = owner.len();
        assert_eq!(weight.len(), n);
        assert_eq!(succ.len(), n);
        Game::assemble(owner, weight, succ, vec![None; n])
    }

    fn assemble(
        owner: Vec<Owner>,
        weight: Vec<BigInt>,
        succ: Vec<Vec<usize>>,
        labels: Vec<Option<String>>,
    ) -> Result<Game, GameError> {
        let n = owner.len();
        if n == 0 {
            return Err(GameError::Empty);
        }
        let mut seen = vec![usize::MAX; n];
        let mut succ_off = Vec::with_capacity(n + 1);
        let mut flat = Vec::new();
        let mut indeg = vec![0usize; n];
        succ_off.push(0);
        for (v, list) in succ.iter().enumerate() {
            if list.is_empty() {
                return Err(GameError::SinkPosition(v));
            }
            for &u in list {
                if u >= n {
                    return Err(GameError::DanglingEdge(v, u));
                }
                if seen[u] == v {
                    return Err(GameError::DuplicateSuccessor(v, u));
                }
                seen[u] = v;
                indeg[u] += 1;
                flat.push(u);
            }
            succ_off.push(flat.len());
        }

        let mut pred_off = Vec::with_capacity(n + 1);
        pred_off.push(0);
        for d in &indeg {
            pred_off.push(pred_off.last().unwrap() + d);
        }
        let mut fill = pred_off.clone();
        let mut pred = vec![0; flat.len()];
        for v in 0..n {
            for &u in &flat[succ_off[v]..succ_off[v + 1]] {
                pred[fill[u]] = v;
                fill[u] += 1;
            }
        }

        let mut positive_sum = BigInt::zero();
        let mut max_weight = BigInt::zero();
        for w in &weight {
            if w.is_positive() {
                positive_sum += w;
                if *w > max_weight {
                    max_weight = w.clone();
                }
            }
        }

        Ok(Game {
            owner,
            weight,
            succ_off,
            succ: flat,
            pred_off,
            pred,
            labels,
            positive_sum,
            max_weight,
        })
    }

    /// Number of positions.
    pub fn n(&self) -> usize {
        self.owner.len()
    }

    /// Number of moves.
    pub fn m(&self) -> usize {
        self.succ.len()
    }

    pub fn positions(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    pub fn owner(&self, v: usize) -> Owner {
        self.owner[v]
    }

    pub fn weight(&self, v: usize) -> &BigInt {
        &self.weight[v]
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weight
    }

    pub fn succ(&self, v: usize) -> &[usize] {
        &self.succ[self.succ_off[v]..self.succ_off[v + 1]]
    }

    pub fn pred(&self, v: usize) -> &[usize] {
        &self.pred[self.pred_off[v]..self.pred_off[v + 1]]
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    /// The bound `S`: sum of all strictly positive weights.
    pub fn positive_sum(&self) -> &BigInt {
        &self.positive_sum
    }

    pub fn stats(&self) -> GameStats {
        GameStats {
            n: self.n(),
            m: self.m(),
            max_weight: self.max_weight.clone(),
            positive_sum: self.positive_sum.clone(),
        }
    }

    /// Returns the raw records of this game, in id order.
    pub fn to_raw(&self) -> Vec<RawPosition> {
        self.positions()
            .map(|v| RawPosition {
                id: v,
                weight: self.weight[v].clone(),
                owner: self.owner[v],
                succ: self.succ(v).to_vec(),
                label: self.labels[v].clone(),
            })
            .collect()
    }

    /// Same arena with every weight replaced by `f(v, weight)`.
    pub fn map_weights(&self, mut f: impl FnMut(usize, &BigInt) -> BigInt) -> Game {
        let weight = self
            .weight
            .iter()
            .enumerate()
            .map(|(v, w)| f(v, w))
            .collect();
        let succ = self.positions().map(|v| self.succ(v).to_vec()).collect();
        Game::assemble(self.owner.clone(), weight, succ, self.labels.clone())
            .expect("the move relation is unchanged")
    }
}

/// Subtracts `nu` from every weight, so that mean > `nu` in `g` becomes
/// mean > 0 in the result.
pub fn shift_threshold(g: &Game, nu: &BigInt) -> Game {
    if nu.is_zero() {
        return g.clone();
    }
    g.map_weights(|_, w| w - nu)
}
