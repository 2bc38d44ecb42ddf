//! The classic progress-measure solver with an eager `S` cap.
//!
//! The worklist is drained in rounds: every pending position is re-evaluated
//! against the measure as it stood at the start of the round, then all
//! changes are applied together. One round is one `solver_pass`, which lines
//! up with one application of the global lift operator.
//!
//! The Max witness comes from a second run on a dual game (see
//! `max_witness`). Its time is part of `wall_time`; its lifts are not counted.

use num_bigint::BigInt;

use crate::arena::{Game, Owner};
use crate::measure::{stretch, Measure};
use crate::num::{fits_word, Arith, Big, Word};
use crate::solution::{Instant, Interrupted, Limits, Solution, UpdateStats};

/// One strict measure change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub position: usize,
    pub old: Measure,
    pub new: Measure,
    /// 1-based round in which the change happened.
    pub pass: u64,
}

/// The lift operator at a single position, including the `S` cap.
pub fn brim_lift_at(g: &Game, mu: &[Measure], v: usize) -> Measure {
    let vals = g.succ(v).iter().map(|&u| stretch(&mu[u], v, g));
    let best = match g.owner(v) {
        Owner::Max => vals.max(),
        Owner::Min => vals.min(),
    }
    .expect("positions have successors");
    match &best {
        Measure::Fin(x) if x.clone() > g.positive_sum().magnitude().clone() => Measure::Inf,
        _ => best,
    }
}

pub fn brim_solve(g: &Game) -> (Solution, UpdateStats) {
    solve_with(g, &Limits::none(), None).expect("no deadline set")
}

/// As [`brim_solve`], reporting every lift event to `sink`.
pub fn brim_solve_traced(
    g: &Game,
    sink: &mut dyn FnMut(TraceEvent),
) -> (Solution, UpdateStats) {
    solve_with(g, &Limits::none(), Some(sink)).expect("no deadline set")
}

pub fn solve_with(
    g: &Game,
    limits: &Limits,
    sink: Option<&mut dyn FnMut(TraceEvent)>,
) -> Result<(Solution, UpdateStats), Interrupted> {
    let start = Instant::now();
    let (mu, mut stats) = run_engine(g, limits, sink)?;
    let strategy = max_witness(g, &mu, limits)?;
    let sol = Solution::from_measure(g, mu, &strategy);
    stats.wall_time = start.elapsed();
    Ok((sol, stats))
}

struct Engine<'g, A: Arith> {
    g: &'g Game,
    w: Vec<A::W>,
    cap: A::M,
    mu: Vec<A::M>,
    /// For Min positions: successors `u` with `mu[u] + v <= mu[v]`.
    count: Vec<u32>,
    queued: Vec<bool>,
    queue: Vec<usize>,
    stamp: Vec<u64>,
}

impl<'g, A: Arith> Engine<'g, A> {
    fn new(g: &'g Game) -> Self {
        let n = g.n();
        let cap = A::from_big(g.positive_sum().magnitude());
        Engine {
            g,
            w: A::weights(g),
            cap,
            mu: vec![A::zero(); n],
            count: vec![0; n],
            queued: vec![true; n],
            queue: (0..n).collect(),
            stamp: vec![0; n],
        }
    }

    fn st(&self, u: usize, v: usize) -> A::M {
        A::stretch(&self.mu[u], &self.w[v])
    }

    fn lift_value(&self, v: usize) -> A::M {
        let vals = self.g.succ(v).iter().map(|&u| self.st(u, v));
        let best = match self.g.owner(v) {
            Owner::Max => vals.max(),
            Owner::Min => vals.min(),
        }
        .expect("positions have successors");
        if !A::is_inf(&best) && best > self.cap {
            A::inf()
        } else {
            best
        }
    }

    fn recount(&mut self, v: usize) {
        let c = self
            .g
            .succ(v)
            .iter()
            .filter(|&&u| self.st(u, v) <= self.mu[v])
            .count();
        self.count[v] = c as u32;
    }

    fn is_stale(&self, v: usize) -> bool {
        if A::is_inf(&self.mu[v]) {
            return false;
        }
        match self.g.owner(v) {
            Owner::Max => self.g.succ(v).iter().any(|&u| self.st(u, v) > self.mu[v]),
            Owner::Min => self.count[v] == 0,
        }
    }

    fn push(&mut self, v: usize) {
        if !self.queued[v] {
            self.queued[v] = true;
            self.queue.push(v);
        }
    }

    fn run(
        mut self,
        limits: &Limits,
        mut sink: Option<&mut dyn FnMut(TraceEvent)>,
    ) -> Result<(Vec<Measure>, UpdateStats), Interrupted> {
        let g = self.g;
        for v in g.positions() {
            if g.owner(v) == Owner::Min {
                self.recount(v);
            }
        }
        let mut stats = UpdateStats::default();
        let mut pass = 0u64;
        while !self.queue.is_empty() {
            limits.check()?;
            pass += 1;
            let batch = std::mem::take(&mut self.queue);
            let mut changed = Vec::new();
            for &v in &batch {
                self.queued[v] = false;
                let nv = self.lift_value(v);
                debug_assert!(nv >= self.mu[v], "lift is inflationary from below");
                if nv > self.mu[v] {
                    changed.push((v, nv));
                }
            }
            let mut olds = Vec::with_capacity(changed.len());
            for (v, nv) in changed {
                let old = std::mem::replace(&mut self.mu[v], nv);
                if let Some(sink) = sink.as_mut() {
                    sink(TraceEvent {
                        position: v,
                        old: A::export(&old),
                        new: A::export(&self.mu[v]),
                        pass,
                    });
                }
                self.stamp[v] = pass;
                olds.push((v, old));
            }
            stats.lift_events += olds.len() as u64;
            for &(v, _) in &olds {
                if g.owner(v) == Owner::Min {
                    self.recount(v);
                }
            }
            for (v, old) in olds {
                for &p in g.pred(v) {
                    if self.stamp[p] == pass || A::is_inf(&self.mu[p]) {
                        continue;
                    }
                    match g.owner(p) {
                        Owner::Max => {
                            if self.st(v, p) > self.mu[p] {
                                self.push(p);
                            }
                        }
                        Owner::Min => {
                            let was = A::stretch(&old, &self.w[p]) <= self.mu[p];
                            if was && self.st(v, p) > self.mu[p] {
                                self.count[p] -= 1;
                                if self.count[p] == 0 {
                                    self.push(p);
                                }
                            }
                        }
                    }
                }
                if self.is_stale(v) {
                    self.push(v);
                }
            }
        }
        stats.solver_passes = pass;
        Ok((self.mu.iter().map(A::export).collect(), stats))
    }
}

fn run_engine(
    g: &Game,
    limits: &Limits,
    sink: Option<&mut dyn FnMut(TraceEvent)>,
) -> Result<(Vec<Measure>, UpdateStats), Interrupted> {
    if fits_word(g) {
        Engine::<Word>::new(g).run(limits, sink)
    } else {
        Engine::<Big>::new(g).run(limits, sink)
    }
}

/// A winning Max strategy on the infinite region `W` of a solved game.
///
/// The measure carries no strategy information on `W`, so the dual game on
/// `W` is solved instead: owners swap and weights become `1 - (|W|+1) w`.
/// A cycle of length at most `|W|` is non-positive in the dual exactly when
/// it is positive in the original, and the dual's progress measure is finite
/// on all of `W`. Following a move that supports that measure keeps every
/// dual cycle non-positive.
fn max_witness(g: &Game, mu: &[Measure], limits: &Limits) -> Result<Vec<Option<usize>>, Interrupted> {
    let mut strategy = vec![None; g.n()];
    let region: Vec<usize> = g.positions().filter(|&v| mu[v].is_inf()).collect();
    if region.is_empty() {
        return Ok(strategy);
    }
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in region.iter().enumerate() {
        index[v] = i;
    }
    let scale = BigInt::from(region.len() + 1);
    let dual = Game::from_lists(
        region.iter().map(|&v| g.owner(v).opponent()).collect(),
        region.iter().map(|&v| 1 - &scale * g.weight(v)).collect(),
        region
            .iter()
            .map(|&v| {
                g.succ(v)
                    .iter()
                    .filter(|&&u| index[u] != usize::MAX)
                    .map(|&u| index[u])
                    .collect()
            })
            .collect(),
    )
    .expect("the infinite region is a Max dominion");
    let (nu, _) = run_engine(&dual, limits, None)?;
    for (i, &v) in region.iter().enumerate() {
        if g.owner(v) == Owner::Max {
            let pick = dual
                .succ(i)
                .iter()
                .copied()
                .find(|&j| stretch(&nu[j], i, &dual) <= nu[i])
                .expect("the dual measure is a progress measure");
            debug_assert!(!nu[i].is_inf(), "Max wins the whole infinite region");
            strategy[v] = Some(region[pick]);
        }
    }
    Ok(strategy)
}
