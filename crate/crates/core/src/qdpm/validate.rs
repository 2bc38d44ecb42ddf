//! Checkers for the representation conditions and for quasi dominions.

use std::fmt;

use num_traits::ToPrimitive;
use thiserror::Error;

use super::ops::{esc, PosSet};
use super::Qdr;
use crate::arena::{Game, Owner};
use crate::measure::{stretch, Measure};

/// Largest game the exhaustive checks accept.
pub const DEEP_CHECK_LIMIT: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("deep check limited to {DEEP_CHECK_LIMIT} positions and 62-bit values")]
pub struct SizeLimit;

/// One failed condition reported by [`validate_qdr`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    LengthMismatch,
    /// Strategy defined where it must not be, or missing where it must be.
    StrategyDomain(usize),
    /// Strategy points at a non-successor.
    StrategyRange(usize),
    /// Max position above what its strategy move supports.
    Cond1c(usize),
    /// Min position above what the given move supports.
    Cond1d { at: usize, succ: usize },
    /// The support is not a quasi dominion under the strategy.
    Cond1a,
    /// The infinite region is not a Max dominion; the position is a witness.
    Cond1b(usize),
    /// A strategy-compatible path inside the support from `from` weighs less
    /// than the measure drop it has to explain.
    PathBound { from: usize },
    /// An escape of the support whose measure is not its positive weight.
    EscapeMeasure(usize),
    /// A deep check was skipped because the game is too large.
    DeepSkipped,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LengthMismatch => write!(f, "measure or strategy length differs from the game"),
            Violation::StrategyDomain(v) => write!(f, "strategy domain wrong at {v}"),
            Violation::StrategyRange(v) => write!(f, "strategy at {v} is not a move"),
            Violation::Cond1c(v) => write!(f, "max position {v} exceeds its strategy move"),
            Violation::Cond1d { at, succ } => write!(f, "min position {at} exceeds its move to {succ}"),
            Violation::Cond1a => write!(f, "support is not a quasi dominion"),
            Violation::Cond1b(v) => write!(f, "infinite region is not a dominion (at {v})"),
            Violation::PathBound { from } => write!(f, "path bound fails from {from}"),
            Violation::EscapeMeasure(v) => write!(f, "escape {v} does not carry its weight as measure"),
            Violation::DeepSkipped => write!(f, "deep checks skipped: game too large"),
        }
    }
}

/// Checks a representation. The shallow checks are local and cheap; `deep`
/// adds the path, escape and dominion checks, which are exhaustive and
/// limited to small games.
pub fn validate_qdr(g: &Game, r: &Qdr, deep: bool) -> Vec<Violation> {
    let n = g.n();
    if r.measure.len() != n || r.strategy.len() != n {
        return vec![Violation::LengthMismatch];
    }
    let mu = &r.measure;
    let mut out = Vec::new();
    for v in g.positions() {
        let positive = r.in_support(v);
        match (g.owner(v), r.strategy[v]) {
            (Owner::Max, Some(u)) if positive => {
                if !g.succ(v).contains(&u) {
                    out.push(Violation::StrategyRange(v));
                } else if mu[v] > stretch(&mu[u], v, g) {
                    out.push(Violation::Cond1c(v));
                }
            }
            (Owner::Max, None) if !positive => {}
            (Owner::Min, None) => {}
            _ => out.push(Violation::StrategyDomain(v)),
        }
        if g.owner(v) == Owner::Min && positive {
            for &u in g.succ(v) {
                if mu[v] > stretch(&mu[u], v, g) {
                    out.push(Violation::Cond1d { at: v, succ: u });
                }
            }
        }
    }
    if deep && out.is_empty() {
        deep_checks(g, r, &mut out);
    }
    out
}

fn small(g: &Game, r: &Qdr) -> Option<(Vec<i128>, Vec<Option<i128>>)> {
    if g.n() > DEEP_CHECK_LIMIT {
        return None;
    }
    let w = g
        .weights()
        .iter()
        .map(|x| x.to_i64().map(i128::from))
        .collect::<Option<Vec<_>>>()?;
    let mut mu = Vec::with_capacity(g.n());
    for m in &r.measure {
        mu.push(match m {
            Measure::Inf => None,
            Measure::Fin(x) => Some(i128::from(x.to_i64()?)),
        });
    }
    Some((w, mu))
}

fn deep_checks(g: &Game, r: &Qdr, out: &mut Vec<Violation>) {
    let Some((w, mu)) = small(g, r) else {
        out.push(Violation::DeepSkipped);
        return;
    };
    let support: PosSet = g.positions().filter(|&v| r.in_support(v)).collect();

    // 1a: the support with its strategy.
    if check_quasi_dominion(g, &support, &r.strategy, false) != Ok(true) {
        out.push(Violation::Cond1a);
    }

    // 1b: the infinite region must be closed under Min moves and the
    // strategy, and every cycle it allows must be positive.
    let top: PosSet = g.positions().filter(|&v| r.measure[v].is_inf()).collect();
    for &v in &top {
        let leaks = match g.owner(v) {
            Owner::Min => g.succ(v).iter().any(|u| !top.contains(u)),
            Owner::Max => !r.strategy[v].is_some_and(|u| top.contains(&u)),
        };
        if leaks {
            out.push(Violation::Cond1b(v));
        }
    }
    if check_quasi_dominion(g, &top, &r.strategy, true) != Ok(true) {
        if let Some(&v) = top.iter().next() {
            out.push(Violation::Cond1b(v));
        }
    }

    // Paths inside the support: value[x] is the least of wg(x..) + mu(end)
    // over strategy-compatible paths of bounded length, ending anywhere.
    // None stands for +infinity.
    let n = g.n();
    let mut value = mu.clone();
    for _ in 0..=n {
        let mut next = value.clone();
        for &x in &support {
            let moves: Vec<usize> = match g.owner(x) {
                Owner::Max => r.strategy[x].into_iter().collect(),
                Owner::Min => g.succ(x).to_vec(),
            };
            for y in moves {
                if let Some(vy) = value[y] {
                    let cand = w[x] + vy;
                    if next[x].is_none_or(|cur| cand < cur) {
                        next[x] = Some(cand);
                    }
                }
            }
        }
        if next == value {
            break;
        }
        value = next;
    }
    for &v in &support {
        let fails = match (mu[v], value[v]) {
            (None, Some(_)) => true,
            (Some(m), Some(b)) => m > b,
            _ => false,
        };
        if fails {
            out.push(Violation::PathBound { from: v });
        }
    }

    for v in esc(g, r, &support) {
        if mu[v] != Some(w[v]) || w[v] <= 0 {
            out.push(Violation::EscapeMeasure(v));
        }
    }
}

/// Checks that every cycle inside `q` allowed by `sigma` (on Max positions)
/// and all moves (on Min positions) has positive weight. Unless `weak`, also
/// every finite play that leaves `q` must have positive weight over its
/// positions in `q`.
#[allow(clippy::needless_range_loop)]
pub fn check_quasi_dominion(
    g: &Game,
    q: &PosSet,
    sigma: &[Option<usize>],
    weak: bool,
) -> Result<bool, SizeLimit> {
    if q.is_empty() {
        return Ok(true);
    }
    if q.len() > DEEP_CHECK_LIMIT {
        return Err(SizeLimit);
    }
    let nodes: Vec<usize> = q.iter().copied().collect();
    let index = |v: usize| nodes.binary_search(&v).ok();
    let k = nodes.len();
    let mut w = Vec::with_capacity(k);
    for &v in &nodes {
        w.push(i128::from(g.weight(v).to_i64().ok_or(SizeLimit)?));
    }
    let mut exits = vec![false; k];
    // dist[i][j]: least weight of a walk i -> j, counting every node but j.
    let mut dist: Vec<Vec<Option<i128>>> = vec![vec![None; k]; k];
    for (i, &v) in nodes.iter().enumerate() {
        let moves: Vec<usize> = match g.owner(v) {
            Owner::Max => sigma[v].into_iter().collect(),
            Owner::Min => g.succ(v).to_vec(),
        };
        if moves.is_empty() {
            exits[i] = true;
        }
        for u in moves {
            match index(u) {
                Some(j) => dist[i][j] = Some(w[i]),
                None => exits[i] = true,
            }
        }
    }
    for m in 0..k {
        for i in 0..k {
            let Some(im) = dist[i][m] else { continue };
            for j in 0..k {
                if let Some(mj) = dist[m][j] {
                    let cand = im + mj;
                    if dist[i][j].is_none_or(|cur| cand < cur) {
                        dist[i][j] = Some(cand);
                    }
                }
            }
        }
    }
    if (0..k).any(|i| dist[i][i].is_some_and(|c| c <= 0)) {
        return Ok(false);
    }
    if weak {
        return Ok(true);
    }
    for i in 0..k {
        for x in (0..k).filter(|&x| exits[x]) {
            let to_x = if i == x { Some(0) } else { dist[i][x] };
            if to_x.is_some_and(|d| d + w[x] <= 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
