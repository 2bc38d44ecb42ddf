//! Measure arithmetic backends shared by the solver engines.
//!
//! `Word` keeps measures in a `u64` with `u64::MAX` as infinity and is used
//! whenever every weight and the bound `S` fit comfortably in 62 bits. `Big`
//! is the arbitrary-precision fallback.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};

use crate::arena::Game;
use crate::measure::Measure;

pub trait Arith {
    type M: Clone + Ord + Debug;
    type W: Clone + Debug;

    fn weights(g: &Game) -> Vec<Self::W>;
    fn zero() -> Self::M;
    fn inf() -> Self::M;
    fn is_inf(m: &Self::M) -> bool;
    fn is_zero(m: &Self::M) -> bool;
    /// `max(0, m + w)`, infinity absorbing.
    fn stretch(m: &Self::M, w: &Self::W) -> Self::M;
    /// `a - b` clamped at zero, with `Inf - Fin = Inf`.
    fn diff(a: &Self::M, b: &Self::M) -> Self::M;
    /// `a + b`, infinity absorbing.
    fn add(a: &Self::M, b: &Self::M) -> Self::M;
    fn from_big(x: &BigUint) -> Self::M;
    fn export(m: &Self::M) -> Measure;
    fn import(m: &Measure) -> Self::M {
        match m {
            Measure::Inf => Self::inf(),
            Measure::Fin(x) => Self::from_big(x),
        }
    }
}

const WORD_LIMIT: u64 = 1 << 61;

/// Whether the word backend can represent every intermediate value for `g`.
pub fn fits_word(g: &Game) -> bool {
    let small = |x: &BigInt| x.abs().to_u64().is_some_and(|a| a < WORD_LIMIT);
    small(g.positive_sum()) && g.weights().iter().all(small)
}

pub struct Word;

impl Arith for Word {
    type M = u64;
    type W = i64;

    fn weights(g: &Game) -> Vec<i64> {
        g.weights()
            .iter()
            .map(|w| w.to_i64().expect("weight fits the word backend"))
            .collect()
    }

    fn zero() -> u64 {
        0
    }

    fn inf() -> u64 {
        u64::MAX
    }

    fn is_inf(m: &u64) -> bool {
        *m == u64::MAX
    }

    fn is_zero(m: &u64) -> bool {
        *m == 0
    }

    #[inline]
    fn stretch(m: &u64, w: &i64) -> u64 {
        if *m == u64::MAX {
            return u64::MAX;
        }
        let s = (*m as i64)
            .checked_add(*w)
            .filter(|s| *s < (WORD_LIMIT * 2) as i64)
            .expect("measure left the word range");
        s.max(0) as u64
    }

    #[inline]
    fn diff(a: &u64, b: &u64) -> u64 {
        if *a == u64::MAX {
            if *b == u64::MAX {
                0
            } else {
                u64::MAX
            }
        } else if *b == u64::MAX {
            0
        } else {
            a.saturating_sub(*b)
        }
    }

    #[inline]
    fn add(a: &u64, b: &u64) -> u64 {
        if *a == u64::MAX || *b == u64::MAX {
            u64::MAX
        } else {
            a + b
        }
    }

    fn from_big(x: &BigUint) -> u64 {
        x.to_u64()
            .filter(|x| *x < u64::MAX)
            .expect("finite measure fits the word backend")
    }

    fn export(m: &u64) -> Measure {
        if *m == u64::MAX {
            Measure::Inf
        } else {
            Measure::fin(*m)
        }
    }
}

pub struct Big;

impl Arith for Big {
    type M = Measure;
    type W = BigInt;

    fn weights(g: &Game) -> Vec<BigInt> {
        g.weights().to_vec()
    }

    fn zero() -> Measure {
        Measure::zero()
    }

    fn inf() -> Measure {
        Measure::Inf
    }

    fn is_inf(m: &Measure) -> bool {
        m.is_inf()
    }

    fn is_zero(m: &Measure) -> bool {
        m.is_zero()
    }

    fn stretch(m: &Measure, w: &BigInt) -> Measure {
        m.add_weight(w)
    }

    fn diff(a: &Measure, b: &Measure) -> Measure {
        a.saturating_sub(b)
    }

    fn add(a: &Measure, b: &Measure) -> Measure {
        match (a, b) {
            (Measure::Fin(x), Measure::Fin(y)) => Measure::Fin(x + y),
            _ => Measure::Inf,
        }
    }

    fn from_big(x: &BigUint) -> Measure {
        Measure::Fin(x.clone())
    }

    fn export(m: &Measure) -> Measure {
        m.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn word_matches_big(m in 0u64..1 << 40, w in -(1i64 << 40)..1 << 40, b in 0u64..1 << 40) {
            let bm = Measure::fin(m);
            prop_assert_eq!(Word::export(&Word::stretch(&m, &w)), Big::stretch(&bm, &BigInt::from(w)));
            prop_assert_eq!(Word::export(&Word::diff(&m, &b)), Big::diff(&bm, &Measure::fin(b)));
            prop_assert_eq!(Word::export(&Word::add(&m, &b)), Big::add(&bm, &Measure::fin(b)));
        }
    }

    #[test]
    fn infinity() {
        assert_eq!(Word::stretch(&u64::MAX, &-5), u64::MAX);
        assert_eq!(Word::diff(&u64::MAX, &3), u64::MAX);
        assert_eq!(Word::diff(&3, &u64::MAX), 0);
        assert_eq!(Word::import(&Measure::Inf), u64::MAX);
    }
}
