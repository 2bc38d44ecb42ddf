use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::Instant;

use mpg_core::brim::{brim_solve, brim_solve_traced};
use mpg_core::io::{parity_to_mpg, write_mpg, write_mpg_with_comment, GenParams};
use mpg_core::oracle::oracle_solve;
use mpg_core::qdpm::{QdpmSolver, Qdr};
use mpg_core::{shift_threshold, Algorithm, Game, Limits, Solution, UpdateStats};

use crate::error::CliError;
use crate::files::{emit, read_game, read_parity, write_measure};
use crate::record::StatsRecord;
use crate::{ConvertArgs, GenerateArgs, SolveArgs};

pub fn run(args: &SolveArgs) -> Result<(), CliError> {
    let g = read_game(&args.input)?;
    let g = match &args.threshold {
        Some(nu) => shift_threshold(&g, nu),
        None => g,
    };
    let mut trace = match &args.trace {
        Some(p) if args.algo == Algorithm::Oracle => {
            return Err(CliError::Usage(format!(
                "{}: the oracle has no lift events to trace",
                p.display()
            )))
        }
        Some(p) => {
            let f = File::create(p).map_err(CliError::io(p))?;
            Some((p.as_path(), Tracer::new(f, args.algo)))
        }
        None => None,
    };
    let start = Instant::now();
    let (sol, mut stats, qdr) = match args.algo {
        Algorithm::Qdpm => {
            let (sol, stats, r) = run_qdpm(&g, trace.as_mut().map(|t| &mut t.1));
            (sol, stats, Some(r))
        }
        Algorithm::Brim => {
            let (sol, stats) = match trace.as_mut() {
                Some((_, t)) => brim_solve_traced(&g, &mut |e| t.line(e.pass, e.position, &e.old, &e.new)),
                None => brim_solve(&g),
            };
            (sol, stats, None)
        }
        Algorithm::Oracle => (oracle_solve(&g)?, UpdateStats::default(), None),
    };
    stats.wall_time = start.elapsed();
    if let Some((p, t)) = trace {
        t.finish().map_err(CliError::io(p))?;
    }

    emit(args.output.as_deref(), &render(&sol))?;
    if let Some(p) = &args.measure {
        let strategy = qdr.as_ref().map(|r| r.strategy.as_slice());
        emit(Some(p), &write_measure(&sol.final_measure, strategy))?;
    }
    if let Some(dest) = &args.stats {
        let params = args.input.display().to_string();
        let rec = StatsRecord::finished(args.algo, &g, &params, &sol, &stats);
        let json = serde_json::to_string(&rec).expect("records serialize") + "\n";
        match dest {
            Some(p) => emit(Some(p), &json)?,
            None => eprint!("{json}"),
        }
    }
    Ok(())
}

/// Steps the engine so that each phase's changes can be traced.
fn run_qdpm(g: &Game, trace: Option<&mut Tracer>) -> (Solution, UpdateStats, Qdr) {
    let mut s = QdpmSolver::new(g);
    let Some(t) = trace else {
        s.run(&Limits::none()).expect("no deadline set");
        let r = s.qdr();
        let (sol, stats) = s.into_solution();
        return (sol, stats, r);
    };
    let mut before = s.qdr();
    let (mut step, mut outer) = (0, 0);
    loop {
        let mut changed = false;
        for plus in [false, true] {
            step += 1;
            let rep = if plus { s.step_prg_plus() } else { s.step_prg0() };
            let after = s.qdr();
            for &v in &rep.lifted {
                t.line(step, v, &before.measure[v], &after.measure[v]);
            }
            changed |= rep.changed();
            before = after;
        }
        if !changed {
            break;
        }
        outer += 1;
    }
    let r = s.qdr();
    let (sol, mut stats) = s.into_solution();
    stats.outer_iterations = outer;
    (sol, stats, r)
}

struct Tracer {
    out: BufWriter<File>,
    err: Option<io::Error>,
}

impl Tracer {
    fn new(f: File, algo: Algorithm) -> Self {
        let mut t = Tracer {
            out: BufWriter::new(f),
            err: None,
        };
        let unit = if algo == Algorithm::Brim { "round" } else { "phase" };
        let r = writeln!(t.out, "# {}: {unit} position old new", algo.name());
        t.err = r.err();
        t
    }

    fn line(&mut self, step: u64, v: usize, old: &impl std::fmt::Display, new: &impl std::fmt::Display) {
        if self.err.is_none() {
            self.err = writeln!(self.out, "{step} {v} {old} {new}").err();
        }
    }

    fn finish(mut self) -> io::Result<()> {
        match self.err.take() {
            Some(e) => Err(e),
            None => self.out.flush(),
        }
    }
}

fn render(sol: &Solution) -> String {
    let mut out = String::new();
    for (v, o) in sol.winners().iter().enumerate() {
        let _ = writeln!(out, "{v} {}", o.code());
    }
    for (v, s) in sol.witness_max.iter().enumerate() {
        if let Some(u) = s {
            let _ = writeln!(out, "strategy {v} {u}");
        }
    }
    out
}

pub fn generate(args: &GenerateArgs) -> Result<(), CliError> {
    let params = GenParams {
        n: args.n,
        max_outdeg: args.max_outdeg,
        weight_lo: args.weight_lo,
        weight_hi: args.weight_hi,
        owner_ratio: args.owner_ratio,
        seed: args.seed,
    };
    let g = params.generate()?;
    emit(args.out.as_deref(), &write_mpg_with_comment(&g, &params.to_string()))
}

pub fn convert(args: &ConvertArgs) -> Result<(), CliError> {
    let pg = read_parity(&args.input)?;
    emit(args.out.as_deref(), &write_mpg(&parity_to_mpg(&pg)))
}
