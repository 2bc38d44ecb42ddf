//! Small hand-built games used by tests, the CLI suites and the demo.
//!
//! Positions of the lettered games are numbered in alphabetical order, so
//! `a` is 0, `b` is 1 and so on; the `A`..`G` constants name them.

use num_bigint::BigInt;

use crate::arena::{Game, Owner};
use crate::measure::Measure;
use crate::qdpm::Qdr;

pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;
pub const D: usize = 3;
pub const E: usize = 4;
pub const F: usize = 5;
pub const G: usize = 6;

fn game(spec: &[(i64, Owner, &[usize])]) -> Game {
    Game::from_lists(
        spec.iter().map(|s| s.1).collect(),
        spec.iter().map(|s| BigInt::from(s.0)).collect(),
        spec.iter().map(|s| s.2.to_vec()).collect(),
    )
    .expect("fixture games are valid")
}

/// Finite measures from a slice, for compact test tables.
pub fn mf(values: &[u64]) -> Vec<Measure> {
    values.iter().map(|&x| Measure::fin(x)).collect()
}

/// One Max position with weight 1 and a self-loop. Max wins.
pub fn self_loop() -> Game {
    game(&[(1, Owner::Max, &[0])])
}

/// A two-cycle with weights 1 and -1. The mean is 0, so Min wins.
pub fn zero_cycle() -> Game {
    game(&[(1, Owner::Max, &[1]), (-1, Owner::Min, &[0])])
}

/// Four positions where BRIM needs a number of lifts linear in `k` while
/// QDPM needs a constant number. Requires `k > 1`.
///
/// a: Min, k, -> a b d;  b: Min, 0, -> b;  c: Min, 0, -> a d;  d: Max, 1, -> c.
pub fn fig1(k: u64) -> Game {
    assert!(k > 1, "the family needs k > 1");
    let k = i64::try_from(k).expect("k fits i64");
    game(&[
        (k, Owner::Min, &[A, B, D]),
        (0, Owner::Min, &[B]),
        (0, Owner::Min, &[A, D]),
        (1, Owner::Max, &[C]),
    ])
}

/// Six positions a..f exercising the escape operators.
///
/// a: Min, 3, -> e;  b: Max, -1, -> a;  c: Min, 1, -> a f;  d: Min, 0, -> b c;
/// e: Min, 0, -> e;  f: Max, 0, -> d f.
pub fn fig2() -> Game {
    game(&[
        (3, Owner::Min, &[E]),
        (-1, Owner::Max, &[A]),
        (1, Owner::Min, &[A, F]),
        (0, Owner::Min, &[B, C]),
        (0, Owner::Min, &[E]),
        (0, Owner::Max, &[D, F]),
    ])
}

/// The representation of [`fig2`] with `c` as its only non-progress position.
pub fn fig2_qdr() -> Qdr {
    let mut strategy = vec![None; 6];
    strategy[B] = Some(A);
    strategy[F] = Some(D);
    Qdr {
        measure: mf(&[3, 2, 1, 1, 0, 1]),
        strategy,
    }
}

/// Five positions a..e on which the second QDPM phase is not monotone.
///
/// a: Min, 3, -> b;  b: Min, 0, -> b;  c: Min, 2, -> b;  d: Min, 1, -> a e;
/// e: Max, 0, -> c d.
pub fn fig3() -> Game {
    game(&[
        (3, Owner::Min, &[B]),
        (0, Owner::Min, &[B]),
        (2, Owner::Min, &[B]),
        (1, Owner::Min, &[A, E]),
        (0, Owner::Max, &[C, D]),
    ])
}

/// The two comparable representations of [`fig3`]: the first lies below the
/// second, yet its image under the second phase lies above.
pub fn fig3_qdrs() -> (Qdr, Qdr) {
    let mut s1 = vec![None; 5];
    s1[E] = Some(D);
    let mut s2 = vec![None; 5];
    s2[E] = Some(C);
    (
        Qdr {
            measure: mf(&[3, 0, 2, 1, 1]),
            strategy: s1,
        },
        Qdr {
            measure: mf(&[3, 0, 2, 1, 2]),
            strategy: s2,
        },
    )
}

/// Seven positions a..g where QDPM performs 13 lifts for every `k > 2` and
/// BRIM performs `5k + 9`.
///
/// a: Min, k, -> e;  b: Min, -1, -> a c;  c: Max, 0, -> f d;  d: Min, -1, -> g;
/// e: Min, 0, -> e;  f: Min, 2, -> b;  g: Min, 2, -> c.
pub fn sim(k: u64) -> Game {
    assert!(k > 2, "the family needs k > 2");
    let k = i64::try_from(k).expect("k fits i64");
    game(&[
        (k, Owner::Min, &[E]),
        (-1, Owner::Min, &[A, C]),
        (0, Owner::Max, &[F, D]),
        (-1, Owner::Min, &[G]),
        (0, Owner::Min, &[E]),
        (2, Owner::Min, &[B]),
        (2, Owner::Min, &[C]),
    ])
}
