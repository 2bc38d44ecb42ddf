//! Brute-force solver: enumerate every pair of positional strategies.
//!
//! Positional strategies suffice for both players, so Max wins from `v`
//! exactly when some Max strategy makes every Min reply end in a cycle of
//! positive weight. Only the sign of the cycle sum matters, so no division
//! is needed.

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::arena::{Game, Owner};
use crate::measure::Measure;
use crate::solution::Solution;

/// Default cap on the number of strategy pairs.
pub const DEFAULT_BUDGET: u128 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} strategy pairs exceed the budget")]
    BudgetExceeded(u128),
}

/// A choice of successor for each position of one player; `None` elsewhere.
pub type PositionalStrategy = Vec<Option<usize>>;

/// The cycle a play ends in once both strategies are fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayOutcome {
    pub cycle: Vec<usize>,
    pub cycle_sum: BigInt,
}

impl PlayOutcome {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    /// Whether the mean payoff is strictly positive.
    pub fn max_wins(&self) -> bool {
        self.cycle_sum.is_positive()
    }
}

fn next(g: &Game, smax: &[Option<usize>], smin: &[Option<usize>], v: usize) -> usize {
    let s = match g.owner(v) {
        Owner::Max => smax[v],
        Owner::Min => smin[v],
    };
    s.expect("strategies are total on their owner's positions")
}

/// Follows both strategies from `start` until a position repeats.
pub fn play_from(g: &Game, smax: &[Option<usize>], smin: &[Option<usize>], start: usize) -> PlayOutcome {
    let mut seen = vec![usize::MAX; g.n()];
    let mut path = Vec::new();
    let mut v = start;
    while seen[v] == usize::MAX {
        seen[v] = path.len();
        path.push(v);
        v = next(g, smax, smin, v);
    }
    let cycle = path.split_off(seen[v]);
    let cycle_sum = cycle.iter().map(|&u| g.weight(u)).sum();
    PlayOutcome { cycle, cycle_sum }
}

/// Number of strategy pairs the oracle would enumerate.
pub fn strategy_pairs(g: &Game) -> u128 {
    g.positions()
        .map(|v| g.succ(v).len() as u128)
        .try_fold(1u128, |acc, d| acc.checked_mul(d))
        .unwrap_or(u128::MAX)
}

pub fn oracle_solve(g: &Game) -> Result<Solution, OracleError> {
    oracle_solve_with_budget(g, DEFAULT_BUDGET)
}

/// Odometer over the positions of one player.
struct Strategies<'g> {
    g: &'g Game,
    owned: Vec<usize>,
    digits: Vec<usize>,
}

impl<'g> Strategies<'g> {
    fn new(g: &'g Game, owner: Owner) -> Self {
        let owned: Vec<usize> = g.positions().filter(|&v| g.owner(v) == owner).collect();
        let digits = vec![0; owned.len()];
        Strategies {
            g,
            owned,
            digits,
        }
    }

    fn current(&self, out: &mut [Option<usize>]) {
        for (i, &v) in self.owned.iter().enumerate() {
            out[v] = Some(self.g.succ(v)[self.digits[i]]);
        }
    }

    fn advance(&mut self) -> bool {
        for i in 0..self.owned.len() {
            self.digits[i] += 1;
            if self.digits[i] < self.g.succ(self.owned[i]).len() {
                return true;
            }
            self.digits[i] = 0;
        }
        false
    }
}

/// Positions where Max wins against every Min strategy, given `smax`.
fn max_region(g: &Game, smax: &[Option<usize>], smin: &mut [Option<usize>]) -> Vec<bool> {
    let mut wins = vec![true; g.n()];
    let mut mins = Strategies::new(g, Owner::Min);
    loop {
        mins.current(smin);
        // Cycle sums per start through a memo on the functional graph.
        let outcome = cycle_signs(g, smax, smin);
        for v in g.positions() {
            if !outcome[v] {
                wins[v] = false;
            }
        }
        if !mins.advance() {
            return wins;
        }
    }
}

/// For each start, whether the cycle its play ends in has positive sum.
fn cycle_signs(g: &Game, smax: &[Option<usize>], smin: &[Option<usize>]) -> Vec<bool> {
    let n = g.n();
    // 0 = unvisited, 1 = on the current path, 2 = resolved.
    let mut state = vec![0u8; n];
    let mut result = vec![false; n];
    for s in 0..n {
        if state[s] == 2 {
            continue;
        }
        let mut path = Vec::new();
        let mut v = s;
        while state[v] == 0 {
            state[v] = 1;
            path.push(v);
            v = next(g, smax, smin, v);
        }
        let sign = if state[v] == 1 {
            let start = path.iter().position(|&u| u == v).expect("on path");
            let sum: BigInt = path[start..].iter().map(|&u| g.weight(u)).sum();
            sum.is_positive()
        } else {
            result[v]
        };
        for u in path {
            state[u] = 2;
            result[u] = sign;
        }
    }
    result
}

pub fn oracle_solve_with_budget(g: &Game, budget: u128) -> Result<Solution, OracleError> {
    let pairs = strategy_pairs(g);
    if pairs > budget {
        return Err(OracleError::BudgetExceeded(pairs));
    }
    let n = g.n();
    let mut smax = vec![None; n];
    let mut smin = vec![None; n];
    let mut union = vec![false; n];
    let mut regions = Vec::new();
    let mut maxes = Strategies::new(g, Owner::Max);
    loop {
        maxes.current(&mut smax);
        let region = max_region(g, &smax, &mut smin);
        for v in 0..n {
            union[v] |= region[v];
        }
        regions.push((smax.clone(), region));
        if !maxes.advance() {
            break;
        }
    }
    // Positional determinacy gives one strategy winning the whole region.
    let (witness, _) = regions
        .into_iter()
        .find(|(_, r)| *r == union)
        .expect("a uniform winning strategy exists");
    let mu = union
        .iter()
        .map(|&w| if w { Measure::Inf } else { Measure::zero() })
        .collect();
    Ok(Solution::from_measure(g, mu, &witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, A, B, C, D};
    use num_traits::Zero;

    #[test]
    fn plays() {
        let g = fixtures::zero_cycle();
        let out = play_from(&g, &[Some(1), None], &[None, Some(0)], 0);
        assert_eq!(out.cycle, vec![0, 1]);
        assert_eq!(out.cycle_sum, BigInt::zero());
        let l = fixtures::self_loop();
        let out = play_from(&l, &[Some(0)], &[None], 0);
        assert_eq!((out.cycle, out.cycle_sum), (vec![0], BigInt::from(1)));

        let f = fixtures::fig1(5);
        let mut smax = vec![None; 4];
        smax[D] = Some(C);
        let mut smin = vec![None; 4];
        smin[A] = Some(A);
        smin[B] = Some(B);
        smin[C] = Some(D);
        let out = play_from(&f, &smax, &smin, C);
        assert_eq!(out.cycle, vec![C, D]);
        assert_eq!(out.cycle_sum, BigInt::from(1));
        assert!(out.max_wins());
    }

    #[test]
    fn fixture_partitions() {
        assert_eq!(oracle_solve(&fixtures::zero_cycle()).unwrap().win_min, vec![0, 1]);
        let sol = oracle_solve(&fixtures::self_loop()).unwrap();
        assert_eq!(sol.win_max, vec![0]);
        assert_eq!(sol.witness_max, vec![Some(0)]);
        assert_eq!(oracle_solve(&fixtures::fig1(5)).unwrap().win_min, vec![0, 1, 2, 3]);
        let sim = oracle_solve(&fixtures::sim(5)).unwrap();
        assert_eq!(sim.win_max, vec![C, D, fixtures::G]);
    }

    #[test]
    fn budget() {
        let g = fixtures::fig1(3);
        assert_eq!(strategy_pairs(&g), 6);
        assert_eq!(
            oracle_solve_with_budget(&g, 5),
            Err(OracleError::BudgetExceeded(6))
        );
    }
}
