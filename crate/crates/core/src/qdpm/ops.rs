//! Set-based versions of the QDPM operators.
//!
//! Each function recomputes its result from scratch. They serve as the
//! executable definition that the incremental engine is tested against, and
//! as the API for inspecting single steps on small games.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{qdr_init, Qdr};
use crate::arena::{Game, Owner};
use crate::measure::{stretch, Measure};
use crate::solution::UpdateStats;

pub type PosSet = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("position {0} has no move into the target set")]
    EmptyTargets(usize),
    #[error("position {0} has no move leaving the set")]
    NoOutsideMove(usize),
    #[error("the escape set is empty")]
    EmptyEscape,
    #[error("the set is not closed: position {0} can escape")]
    NotClosed(usize),
}

fn best_over(
    g: &Game,
    mu: &[Measure],
    v: usize,
    targets: impl Iterator<Item = usize>,
) -> Option<(Measure, usize)> {
    let mut best: Option<(Measure, usize)> = None;
    for u in targets {
        let s = stretch(&mu[u], v, g);
        let better = match &best {
            None => true,
            Some((b, _)) => match g.owner(v) {
                Owner::Max => s > *b,
                Owner::Min => s < *b,
            },
        };
        if better {
            best = Some((s, u));
        }
    }
    best
}

fn lift_where(
    g: &Game,
    r: &Qdr,
    src: &PosSet,
    in_tgt: impl Fn(usize) -> bool,
) -> Result<Qdr, OpError> {
    let mut out = r.clone();
    for &v in src {
        let targets = g.succ(v).iter().copied().filter(|&u| in_tgt(u));
        let (val, arg) = best_over(g, &r.measure, v, targets).ok_or(OpError::EmptyTargets(v))?;
        if val != r.measure[v] {
            if g.owner(v) == Owner::Max {
                out.strategy[v] = if val.is_zero() { None } else { Some(arg) };
            }
            out.measure[v] = val;
        }
    }
    Ok(out)
}

/// Lifts every position of `src` using only moves into `tgt`. Max positions
/// whose measure changes point their strategy at the earliest best move.
pub fn controlled_lift(g: &Game, r: &Qdr, src: &PosSet, tgt: &PosSet) -> Result<Qdr, OpError> {
    lift_where(g, r, src, |u| tgt.contains(&u))
}

fn count_changes(a: &Qdr, b: &Qdr) -> u64 {
    a.measure.iter().zip(&b.measure).filter(|(x, y)| x != y).count() as u64
}

/// First phase: lift every zero-measure position over all of its moves.
pub fn prg0(g: &Game, r: &Qdr) -> Qdr {
    let src: PosSet = g.positions().filter(|&v| !r.in_support(v)).collect();
    let lifted = lift_where(g, r, &src, |_| true).expect("every position has a move");
    debug_assert!(r.measure.iter().zip(&lifted.measure).all(|(a, b)| a <= b));
    lifted
}

/// Positions of the support that violate the progress condition.
pub fn npp(g: &Game, r: &Qdr) -> PosSet {
    let mu = &r.measure;
    g.positions()
        .filter(|&v| r.in_support(v))
        .filter(|&v| {
            let mut rises = g.succ(v).iter().map(|&u| mu[v] < stretch(&mu[u], v, g));
            match g.owner(v) {
                Owner::Max => rises.any(|b| b),
                Owner::Min => rises.all(|b| b),
            }
        })
        .collect()
}

/// One application of the predecessor operator used to grow `dmn`.
pub fn pre(g: &Game, r: &Qdr, q: &PosSet) -> PosSet {
    let mu = &r.measure;
    let mut out = q.clone();
    for v in g.positions().filter(|&v| r.in_support(v)) {
        let add = match g.owner(v) {
            Owner::Max => r.strategy[v].is_some_and(|u| q.contains(&u)),
            Owner::Min => g
                .succ(v)
                .iter()
                .filter(|u| !q.contains(u))
                .all(|&u| mu[v] < stretch(&mu[u], v, g)),
        };
        if add {
            out.insert(v);
        }
    }
    out
}

/// The inflationary fixpoint of [`pre`] starting from `seed`.
pub fn dmn_from(g: &Game, r: &Qdr, seed: &PosSet) -> PosSet {
    let mut cur = seed.clone();
    loop {
        let next = pre(g, r, &cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// The part of the support that the second phase must process.
pub fn dmn(g: &Game, r: &Qdr) -> PosSet {
    dmn_from(g, r, &npp(g, r))
}

/// Positions of `q` that can leave it right away.
pub fn esc(g: &Game, r: &Qdr, q: &PosSet) -> PosSet {
    let mu = &r.measure;
    q.iter()
        .copied()
        .filter(|&v| match g.owner(v) {
            Owner::Min => g.succ(v).iter().any(|u| !q.contains(u)),
            Owner::Max => {
                !r.strategy[v].is_some_and(|u| q.contains(&u))
                    && g.succ(v)
                        .iter()
                        .filter(|u| q.contains(u))
                        .all(|&u| stretch(&mu[u], v, g) <= mu[v])
            }
        })
        .collect()
}

/// Best-escape forfeit: the least increase `v` must accept to leave `q`.
pub fn bef(g: &Game, mu: &[Measure], q: &PosSet, v: usize) -> Result<Measure, OpError> {
    let outside = g.succ(v).iter().copied().filter(|u| !q.contains(u));
    let (best, _) = best_over(g, mu, v, outside).ok_or(OpError::NoOutsideMove(v))?;
    Ok(best.saturating_sub(&mu[v]))
}

/// The escape positions of minimal forfeit, with that forfeit.
pub fn bep_with_forfeit(g: &Game, r: &Qdr, q: &PosSet) -> Result<(PosSet, Measure), OpError> {
    let mut best: Option<Measure> = None;
    let mut out = PosSet::new();
    for v in esc(g, r, q) {
        let f = bef(g, &r.measure, q, v)?;
        match &best {
            Some(b) if f > *b => {}
            Some(b) if f == *b => {
                out.insert(v);
            }
            _ => {
                best = Some(f);
                out = PosSet::from([v]);
            }
        }
    }
    best.map(|f| (out, f)).ok_or(OpError::EmptyEscape)
}

pub fn bep(g: &Game, r: &Qdr, q: &PosSet) -> Result<PosSet, OpError> {
    bep_with_forfeit(g, r, q).map(|(s, _)| s)
}

/// Sends a closed set to infinity, redirecting strategies that leave it.
pub fn win_close(g: &Game, r: &Qdr, q: &PosSet) -> Result<Qdr, OpError> {
    if let Some(&v) = esc(g, r, q).iter().next() {
        return Err(OpError::NotClosed(v));
    }
    let mut out = r.clone();
    for &v in q {
        if g.owner(v) == Owner::Max && !r.strategy[v].is_some_and(|u| q.contains(&u)) {
            let inside = g.succ(v).iter().copied().filter(|u| q.contains(u));
            let (_, arg) = best_over(g, &r.measure, v, inside).expect("closed sets keep a move inside");
            out.strategy[v] = Some(arg);
        }
        out.measure[v] = Measure::Inf;
    }
    Ok(out)
}

/// A full record of one second-phase application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlusRun {
    pub result: Qdr,
    pub dmn: PosSet,
    /// The minimal forfeit of each drained cluster, in order.
    pub forfeits: Vec<Measure>,
    /// The closed remainder sent to infinity.
    pub won: PosSet,
    pub lift_events: u64,
}

pub fn prg_plus_run(g: &Game, r: &Qdr) -> PlusRun {
    let d = dmn(g, r);
    let mut q = d.clone();
    let mut cur = r.clone();
    let mut forfeits = Vec::new();
    let mut lift_events = 0;
    while let Ok((e, f)) = bep_with_forfeit(g, &cur, &q) {
        forfeits.push(f);
        let next = lift_where(g, &cur, &e, |u| !q.contains(&u)).expect("escapes have a move out");
        lift_events += count_changes(&cur, &next);
        cur = next;
        q.retain(|v| !e.contains(v));
    }
    let next = win_close(g, &cur, &q).expect("no escapes left");
    lift_events += count_changes(&cur, &next);
    PlusRun {
        result: next,
        dmn: d,
        forfeits,
        won: q,
        lift_events,
    }
}

/// Second phase.
pub fn prg_plus(g: &Game, r: &Qdr) -> Qdr {
    prg_plus_run(g, r).result
}

/// Iterates both phases from the bottom representation to the fixpoint.
pub fn reference_solve(g: &Game) -> (Qdr, UpdateStats) {
    let mut stats = UpdateStats::default();
    let mut r = qdr_init(g);
    loop {
        let r0 = prg0(g, &r);
        let run = prg_plus_run(g, &r0);
        stats.solver_passes += 2;
        stats.lift_events += count_changes(&r, &r0) + run.lift_events;
        if run.result == r {
            return (r, stats);
        }
        stats.outer_iterations += 1;
        r = run.result;
    }
}
