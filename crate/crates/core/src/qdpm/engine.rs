//! Incremental QDPM engine.
//!
//! Per-position counters keep every phase proportional to the moves incident
//! to positions that actually change:
//! - `c[v]` (Min): successors `u` with `mu[u] + v <= mu[v]`;
//! - `d[v]` (Min): scratch copy of `c` used while growing `dmn`;
//! - `g[v]` (Max): successors inside the drained set that would raise `v`.
//!
//! The pending lists `n0` and `np` over-approximate the zero positions that
//! `prg0` will lift and the non-progress positions; both are filtered when a
//! phase starts.

use super::queue::ForfeitQueue;
use super::{qdr_init, Qdr};
use crate::arena::{Game, Owner};
use crate::measure::Measure;
use crate::num::{fits_word, Arith, Big, Word};
use crate::solution::{Instant, Interrupted, Limits, Solution, UpdateStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Zero,
    Plus,
}

/// What one phase application did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseReport {
    pub phase: Phase,
    /// Positions whose measure strictly changed, in the order of change.
    pub lifted: Vec<usize>,
    /// The set processed by the second phase, sorted. Empty for `Zero`.
    pub dmn: Vec<usize>,
    /// Minimal forfeit of each drained cluster, in order.
    pub forfeits: Vec<Measure>,
    /// Closed remainder sent to infinity, sorted.
    pub won: Vec<usize>,
}

impl PhaseReport {
    fn new(phase: Phase) -> Self {
        PhaseReport {
            phase,
            lifted: Vec::new(),
            dmn: Vec::new(),
            forfeits: Vec::new(),
            won: Vec::new(),
        }
    }

    pub fn changed(&self) -> bool {
        !self.lifted.is_empty()
    }
}

pub fn qdpm_solve(g: &Game) -> (Solution, UpdateStats) {
    solve_with(g, &Limits::none()).expect("no deadline set")
}

pub fn solve_with(g: &Game, limits: &Limits) -> Result<(Solution, UpdateStats), Interrupted> {
    let start = Instant::now();
    let mut s = QdpmSolver::new(g);
    s.run(limits)?;
    let (sol, mut stats) = s.into_solution();
    stats.wall_time = start.elapsed();
    Ok((sol, stats))
}

enum Inner<'g> {
    Word(Engine<'g, Word>),
    Big(Engine<'g, Big>),
}

/// Step-by-step access to the engine, for callers that want to observe each
/// phase.
pub struct QdpmSolver<'g> {
    inner: Inner<'g>,
}

macro_rules! each {
    ($self:expr, $e:ident => $body:expr) => {
        match &mut $self.inner {
            Inner::Word($e) => $body,
            Inner::Big($e) => $body,
        }
    };
}

impl<'g> QdpmSolver<'g> {
    pub fn new(g: &'g Game) -> Self {
        Self::from_qdr(g, &qdr_init(g))
    }

    /// Starts from an arbitrary representation. It is not validated.
    pub fn from_qdr(g: &'g Game, r: &Qdr) -> Self {
        let inner = if fits_word(g) && r.measure.iter().all(fits_measure) {
            Inner::Word(Engine::new(g, r))
        } else {
            Inner::Big(Engine::new(g, r))
        };
        QdpmSolver { inner }
    }

    pub fn step_prg0(&mut self) -> PhaseReport {
        each!(self, e => e.prg0())
    }

    pub fn step_prg_plus(&mut self) -> PhaseReport {
        each!(self, e => e.prg_plus(&Limits::none()).expect("no deadline set"))
    }

    /// Runs both phases until neither changes anything.
    pub fn run(&mut self, limits: &Limits) -> Result<(), Interrupted> {
        each!(self, e => e.run(limits))
    }

    pub fn qdr(&self) -> Qdr {
        match &self.inner {
            Inner::Word(e) => e.qdr(),
            Inner::Big(e) => e.qdr(),
        }
    }

    pub fn stats(&self) -> UpdateStats {
        match &self.inner {
            Inner::Word(e) => e.stats.clone(),
            Inner::Big(e) => e.stats.clone(),
        }
    }

    /// Whether the word-sized backend is in use.
    pub fn is_word_sized(&self) -> bool {
        matches!(self.inner, Inner::Word(_))
    }

    pub fn into_solution(self) -> (Solution, UpdateStats) {
        let (g, r, stats) = match self.inner {
            Inner::Word(e) => (e.g, e.qdr(), e.stats),
            Inner::Big(e) => (e.g, e.qdr(), e.stats),
        };
        (Solution::from_measure(g, r.measure, &r.strategy), stats)
    }
}

fn fits_measure(m: &Measure) -> bool {
    match m {
        Measure::Inf => true,
        Measure::Fin(x) => x.bits() < 61,
    }
}

struct Engine<'g, A: Arith> {
    g: &'g Game,
    w: Vec<A::W>,
    mu: Vec<A::M>,
    sigma: Vec<Option<usize>>,
    c: Vec<u32>,
    n0: Vec<usize>,
    in_n0: Vec<bool>,
    np: Vec<usize>,
    in_np: Vec<bool>,
    in_q: Vec<bool>,
    d: Vec<u32>,
    d_epoch: Vec<u32>,
    epoch: u32,
    gcnt: Vec<u32>,
    queue: ForfeitQueue<A::M>,
    stamp: Vec<u64>,
    batch: u64,
    stats: UpdateStats,
}

impl<'g, A: Arith> Engine<'g, A> {
    fn new(g: &'g Game, r: &Qdr) -> Self {
        let n = g.n();
        assert_eq!(r.measure.len(), n);
        let mut e = Engine {
            g,
            w: A::weights(g),
            mu: r.measure.iter().map(A::import).collect(),
            sigma: r.strategy.clone(),
            c: vec![0; n],
            n0: Vec::new(),
            in_n0: vec![false; n],
            np: Vec::new(),
            in_np: vec![false; n],
            in_q: vec![false; n],
            d: vec![0; n],
            d_epoch: vec![0; n],
            epoch: 0,
            gcnt: vec![0; n],
            queue: ForfeitQueue::new(n),
            stamp: vec![0; n],
            batch: 0,
            stats: UpdateStats::default(),
        };
        for v in 0..n {
            if g.owner(v) == Owner::Min {
                e.recount(v);
            }
            e.mark_pending(v);
        }
        e
    }

    fn qdr(&self) -> Qdr {
        Qdr {
            measure: self.mu.iter().map(A::export).collect(),
            strategy: self.sigma.clone(),
        }
    }

    #[inline]
    fn st(&self, u: usize, v: usize) -> A::M {
        A::stretch(&self.mu[u], &self.w[v])
    }

    fn recount(&mut self, v: usize) {
        let c = self
            .g
            .succ(v)
            .iter()
            .filter(|&&u| self.st(u, v) <= self.mu[v])
            .count();
        self.c[v] = c as u32;
    }

    /// Files `v` as a candidate for the next phase that may move it.
    fn mark_pending(&mut self, v: usize) {
        if A::is_inf(&self.mu[v]) {
            return;
        }
        if A::is_zero(&self.mu[v]) {
            if !self.in_n0[v] {
                self.in_n0[v] = true;
                self.n0.push(v);
            }
        } else if !self.in_np[v] {
            self.in_np[v] = true;
            self.np.push(v);
        }
    }

    /// Whether some successor would raise `v` (Max), or all would (Min).
    fn wants_lift(&self, v: usize) -> bool {
        if A::is_inf(&self.mu[v]) {
            return false;
        }
        match self.g.owner(v) {
            Owner::Max => self.g.succ(v).iter().any(|&u| self.st(u, v) > self.mu[v]),
            Owner::Min => self.c[v] == 0,
        }
    }

    /// Best value over the successors accepted by `ok`, with the earliest
    /// successor attaining it.
    fn best(&self, v: usize, ok: impl Fn(usize) -> bool) -> Option<(A::M, usize)> {
        let max = self.g.owner(v) == Owner::Max;
        let mut best: Option<(A::M, usize)> = None;
        for &u in self.g.succ(v) {
            if !ok(u) {
                continue;
            }
            let s = self.st(u, v);
            let better = match &best {
                None => true,
                Some((b, _)) => {
                    if max {
                        s > *b
                    } else {
                        s < *b
                    }
                }
            };
            if better {
                best = Some((s, u));
            }
        }
        best
    }

    /// Applies a batch of simultaneous measure changes and propagates them to
    /// counters and pending lists.
    fn apply(&mut self, changes: Vec<(usize, A::M)>, report: &mut PhaseReport) {
        self.batch += 1;
        let batch = self.batch;
        let mut olds = Vec::with_capacity(changes.len());
        for (v, nv) in changes {
            if nv == self.mu[v] {
                continue;
            }
            debug_assert!(nv > self.mu[v], "measures never decrease");
            let old = std::mem::replace(&mut self.mu[v], nv);
            self.stamp[v] = batch;
            report.lifted.push(v);
            olds.push((v, old));
        }
        self.stats.lift_events += olds.len() as u64;
        let g = self.g;
        for &(v, _) in &olds {
            if g.owner(v) == Owner::Min {
                self.recount(v);
            }
        }
        for (v, old) in &olds {
            let v = *v;
            for &p in g.pred(v) {
                if self.stamp[p] == batch {
                    continue;
                }
                if A::is_inf(&self.mu[p]) {
                    continue;
                }
                match g.owner(p) {
                    Owner::Max => {
                        if self.st(v, p) > self.mu[p] {
                            self.mark_pending(p);
                        }
                    }
                    Owner::Min => {
                        let was = A::stretch(old, &self.w[p]) <= self.mu[p];
                        if was && self.st(v, p) > self.mu[p] {
                            self.c[p] -= 1;
                            if self.c[p] == 0 {
                                self.mark_pending(p);
                            }
                        }
                    }
                }
            }
            if self.wants_lift(v) {
                self.mark_pending(v);
            }
        }
    }

    fn prg0(&mut self) -> PhaseReport {
        self.stats.solver_passes += 1;
        let mut report = PhaseReport::new(Phase::Zero);
        let pending = std::mem::take(&mut self.n0);
        let mut changes = Vec::new();
        for v in pending {
            self.in_n0[v] = false;
            if !A::is_zero(&self.mu[v]) || !self.wants_lift(v) {
                continue;
            }
            let (val, arg) = self.best(v, |_| true).expect("positions have successors");
            if self.g.owner(v) == Owner::Max {
                self.sigma[v] = Some(arg);
            }
            changes.push((v, val));
        }
        self.apply(changes, &mut report);
        report
    }

    fn is_npp(&self, v: usize) -> bool {
        !A::is_zero(&self.mu[v]) && self.wants_lift(v)
    }

    /// Grows `dmn` from the non-progress positions, marking it in `in_q`.
    fn compute_dmn(&mut self) -> Vec<usize> {
        let pending = std::mem::take(&mut self.np);
        let mut set = Vec::new();
        for v in pending {
            self.in_np[v] = false;
            if !self.in_q[v] && self.is_npp(v) {
                self.in_q[v] = true;
                set.push(v);
            }
        }
        if set.is_empty() {
            return set;
        }
        self.epoch += 1;
        let g = self.g;
        let mut i = 0;
        while i < set.len() {
            let u = set[i];
            i += 1;
            for &p in g.pred(u) {
                if self.in_q[p] || A::is_zero(&self.mu[p]) {
                    continue;
                }
                let add = match g.owner(p) {
                    Owner::Max => self.sigma[p] == Some(u),
                    Owner::Min => {
                        if self.d_epoch[p] != self.epoch {
                            self.d_epoch[p] = self.epoch;
                            self.d[p] = self.c[p];
                        }
                        if self.st(u, p) <= self.mu[p] {
                            self.d[p] -= 1;
                        }
                        self.d[p] == 0
                    }
                };
                if add {
                    self.in_q[p] = true;
                    set.push(p);
                }
            }
        }
        set
    }

    /// Files `v` in the queue with its best-escape forfeit.
    fn enqueue_escape(&mut self, v: usize) {
        let in_q = &self.in_q;
        let (val, _) = self
            .best(v, |u| !in_q[u])
            .expect("escape positions have a move out");
        let f = A::diff(&val, &self.mu[v]);
        self.queue.push_or_decrease(v, f);
    }

    fn prg_plus(&mut self, limits: &Limits) -> Result<PhaseReport, Interrupted> {
        self.stats.solver_passes += 1;
        let mut report = PhaseReport::new(Phase::Plus);
        let set = self.compute_dmn();
        if set.is_empty() {
            return Ok(report);
        }
        let g = self.g;

        for &v in &set {
            match g.owner(v) {
                Owner::Min => {
                    if g.succ(v).iter().any(|&u| !self.in_q[u]) {
                        self.enqueue_escape(v);
                    }
                }
                Owner::Max => {
                    let raising = g
                        .succ(v)
                        .iter()
                        .filter(|&&u| self.in_q[u] && self.st(u, v) > self.mu[v])
                        .count();
                    self.gcnt[v] = raising as u32;
                    let stays = self.sigma[v].is_some_and(|u| self.in_q[u]);
                    if !stays && raising == 0 {
                        self.enqueue_escape(v);
                    }
                }
            }
        }

        let mut last: Option<A::M> = None;
        let mut pops = 0u32;
        while let Some((f, cluster)) = self.queue.pop_min() {
            pops = pops.wrapping_add(1);
            if pops.is_multiple_of(1024) {
                limits.check()?;
            }
            debug_assert!(last.as_ref().is_none_or(|l| *l <= f), "forfeits never decrease");
            report.forfeits.push(A::export(&f));
            let mut changes = Vec::with_capacity(cluster.len());
            for &v in &cluster {
                let in_q = &self.in_q;
                let (val, arg) = self.best(v, |u| !in_q[u]).expect("escapes have a move out");
                debug_assert!(val > self.mu[v], "drained positions strictly rise");
                if g.owner(v) == Owner::Max {
                    self.sigma[v] = Some(arg);
                }
                changes.push((v, val));
            }
            for &v in &cluster {
                self.in_q[v] = false;
            }
            // Raising moves into the cluster stop counting before the
            // cluster's measures move.
            for &v in &cluster {
                for &p in g.pred(v) {
                    if self.in_q[p] && g.owner(p) == Owner::Max && self.st(v, p) > self.mu[p] {
                        self.gcnt[p] -= 1;
                    }
                }
            }
            self.apply(changes, &mut report);
            for &v in &cluster {
                for &p in g.pred(v) {
                    if !self.in_q[p] {
                        continue;
                    }
                    match g.owner(p) {
                        Owner::Min => {
                            let f = A::diff(&self.st(v, p), &self.mu[p]);
                            self.queue.push_or_decrease(p, f);
                        }
                        Owner::Max => {
                            let stays = self.sigma[p].is_some_and(|s| self.in_q[s]);
                            if !stays && self.gcnt[p] == 0 && !self.queue.contains(p) {
                                self.enqueue_escape(p);
                            }
                        }
                    }
                }
            }
            last = Some(f);
        }

        let won: Vec<usize> = set.iter().copied().filter(|&v| self.in_q[v]).collect();
        let mut changes = Vec::with_capacity(won.len());
        for &v in &won {
            if g.owner(v) == Owner::Max && !self.sigma[v].is_some_and(|u| self.in_q[u]) {
                let in_q = &self.in_q;
                let (_, arg) = self.best(v, |u| in_q[u]).expect("closed sets keep a move inside");
                self.sigma[v] = Some(arg);
            }
            changes.push((v, A::inf()));
        }
        for &v in &won {
            self.in_q[v] = false;
        }
        self.apply(changes, &mut report);
        let mut dmn = set;
        dmn.sort_unstable();
        report.dmn = dmn;
        report.won = won;
        report.won.sort_unstable();
        Ok(report)
    }

    fn run(&mut self, limits: &Limits) -> Result<(), Interrupted> {
        loop {
            limits.check()?;
            let zero = self.prg0();
            let plus = self.prg_plus(limits)?;
            if !zero.changed() && !plus.changed() {
                return Ok(());
            }
            self.stats.outer_iterations += 1;
        }
    }
}
