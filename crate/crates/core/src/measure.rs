//! Extended-natural measures, the stretch operator and the progress-measure
//! check.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;
use thiserror::Error;

use crate::arena::{Game, Owner};

/// A natural number or infinity. The derived order puts every `Fin` below `Inf`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    Fin(BigUint),
    Inf,
}

impl Measure {
    pub fn zero() -> Measure {
        Measure::Fin(BigUint::zero())
    }

    pub fn fin(x: u64) -> Measure {
        Measure::Fin(BigUint::from(x))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Measure::Inf)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Measure::Fin(x) if x.is_zero())
    }

    /// `max(0, self + w)`, with infinity absorbing.
    pub fn add_weight(&self, w: &BigInt) -> Measure {
        match self {
            Measure::Inf => Measure::Inf,
            Measure::Fin(x) => {
                let s = BigInt::from(x.clone()) + w;
                match s.to_biguint() {
                    Some(u) => Measure::Fin(u),
                    None => Measure::zero(),
                }
            }
        }
    }

    /// `self - other`, clamped at zero; `Inf - Fin = Inf`, `Inf - Inf = 0`.
    pub fn saturating_sub(&self, other: &Measure) -> Measure {
        match (self, other) {
            (Measure::Inf, Measure::Fin(_)) => Measure::Inf,
            (Measure::Inf, Measure::Inf) | (Measure::Fin(_), Measure::Inf) => Measure::zero(),
            (Measure::Fin(a), Measure::Fin(b)) => {
                if a > b {
                    Measure::Fin(a - b)
                } else {
                    Measure::zero()
                }
            }
        }
    }

    /// The value as a signed integer, `None` for infinity.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Measure::Fin(x) => Some(BigInt::from_biguint(Sign::Plus, x.clone())),
            Measure::Inf => None,
        }
    }
}

impl From<u64> for Measure {
    fn from(x: u64) -> Self {
        Measure::fin(x)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Fin(x) => write!(f, "{x}"),
            Measure::Inf => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid measure {0:?}")]
pub struct ParseMeasureError(pub String);

impl FromStr for Measure {
    type Err = ParseMeasureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") {
            return Ok(Measure::Inf);
        }
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseMeasureError(s.to_string()));
        }
        t.parse::<BigUint>()
            .map(Measure::Fin)
            .map_err(|_| ParseMeasureError(s.to_string()))
    }
}

/// A measure per position, indexed by position id.
pub type MeasureFunction = Vec<Measure>;

/// `η + v`: the measure `eta` carried back through position `v`.
pub fn stretch(eta: &Measure, v: usize, g: &Game) -> Measure {
    eta.add_weight(g.weight(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("measure functions of different lengths ({0} and {1})")]
pub struct LengthMismatch(pub usize, pub usize);

/// Pointwise order on measure functions.
pub fn mf_leq(a: &[Measure], b: &[Measure]) -> Result<bool, LengthMismatch> {
    if a.len() != b.len() {
        return Err(LengthMismatch(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).all(|(x, y)| x <= y))
}

/// Positions owned by Max with infinite measure (the Max denotation).
pub fn max_denotation(mu: &[Measure]) -> Vec<usize> {
    (0..mu.len()).filter(|&v| mu[v].is_inf()).collect()
}

/// Positions with finite measure (the Min denotation).
pub fn min_denotation(mu: &[Measure]) -> Vec<usize> {
    (0..mu.len()).filter(|&v| !mu[v].is_inf()).collect()
}

/// Whether `v` satisfies the progress condition under `mu`.
pub fn is_progress_at(g: &Game, mu: &[Measure], v: usize) -> bool {
    if mu[v].is_inf() {
        return true;
    }
    let mut ok = g.succ(v).iter().map(|&u| stretch(&mu[u], v, g) <= mu[v]);
    match g.owner(v) {
        Owner::Max => ok.all(|b| b),
        Owner::Min => ok.any(|b| b),
    }
}

/// Checks the progress condition on every position of `over` and returns the
/// violators in the order given. An empty result means `mu` is a progress
/// measure over `over`.
pub fn is_progress_measure(g: &Game, mu: &[Measure], over: &[usize]) -> Vec<usize> {
    assert_eq!(mu.len(), g.n(), "measure length must match the game");
    over.iter()
        .copied()
        .filter(|&v| !is_progress_at(g, mu, v))
        .collect()
}
