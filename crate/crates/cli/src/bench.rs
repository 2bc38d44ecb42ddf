use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use mpg_core::io::{parity_to_mpg, GenParams};
use mpg_core::oracle::{oracle_solve_with_budget, DEFAULT_BUDGET};
use mpg_core::{brim, fixtures, qdpm, Algorithm, Game, Limits, UpdateStats};

use crate::error::CliError;
use crate::files::{read_game, read_parity};
use crate::record::StatsRecord;
use crate::{AgreeArgs, BenchArgs, Suite};

const FAMILY_KS: [u64; 5] = [3, 10, 100, 1000, 10000];

enum Instance {
    File(PathBuf),
    Random(GenParams),
    Fig1(u64),
    Sim(u64),
}

impl Instance {
    fn params(&self) -> String {
        match self {
            Instance::File(p) => p.display().to_string(),
            Instance::Random(gp) => gp.to_string(),
            Instance::Fig1(k) => format!("fig1 k={k}"),
            Instance::Sim(k) => format!("sim k={k}"),
        }
    }

    fn load(&self) -> Result<Game, CliError> {
        Ok(match self {
            Instance::File(p) if p.extension().is_some_and(|e| e == "pg") => parity_to_mpg(&read_parity(p)?),
            Instance::File(p) => read_game(p)?,
            Instance::Random(gp) => gp.generate()?,
            Instance::Fig1(k) => fixtures::fig1(*k),
            Instance::Sim(k) => fixtures::sim(*k),
        })
    }
}

fn instances(args: &BenchArgs) -> Result<Vec<Instance>, CliError> {
    if let Some(dir) = &args.dir {
        let mut files: Vec<PathBuf> = fs::read_dir(dir)
            .map_err(CliError::io(dir))?
            .map(|e| e.map(|e| e.path()).map_err(CliError::io(dir)))
            .collect::<Result<_, _>>()?;
        files.retain(|p| p.is_file() && p.extension().is_some_and(|e| e == "mpg" || e == "pg"));
        files.sort();
        return Ok(files.into_iter().map(Instance::File).collect());
    }
    Ok(match args.suite.expect("clap requires --dir or --suite") {
        Suite::Fig1 => FAMILY_KS.iter().map(|&k| Instance::Fig1(k)).collect(),
        Suite::Sim => FAMILY_KS.iter().map(|&k| Instance::Sim(k)).collect(),
        Suite::Random => {
            let mut out = Vec::new();
            for (c, &d) in args.degrees.iter().enumerate() {
                for i in 0..args.count {
                    out.push(Instance::Random(GenParams {
                        n: args.n,
                        max_outdeg: d,
                        weight_lo: -15000,
                        weight_hi: 15000,
                        owner_ratio: 0.5,
                        seed: args.seed + 1000 * c as u64 + i,
                    }));
                }
            }
            out
        }
    })
}

fn run_one(algo: Algorithm, g: &Game, params: &str, limit: Duration) -> StatsRecord {
    let limits = Limits::timeout(limit);
    let out = match algo {
        Algorithm::Qdpm => qdpm::solve_with(g, &limits).map_err(|_| "timeout"),
        Algorithm::Brim => brim::solve_with(g, &limits, None).map_err(|_| "timeout"),
        Algorithm::Oracle => {
            let start = Instant::now();
            oracle_solve_with_budget(g, DEFAULT_BUDGET)
                .map(|s| {
                    let stats = UpdateStats {
                        wall_time: start.elapsed(),
                        ..Default::default()
                    };
                    (s, stats)
                })
                .map_err(|_| "budget")
        }
    };
    match out {
        Ok((sol, stats)) => StatsRecord::finished(algo, g, params, &sol, &stats),
        Err(status) => StatsRecord::new(algo, g, params, status),
    }
}

fn run_instance(inst: &Instance, args: &BenchArgs, limit: Duration) -> Vec<StatsRecord> {
    let params = inst.params();
    match inst.load() {
        Ok(g) => args.algos.iter().map(|&a| run_one(a, &g, &params, limit)).collect(),
        Err(e) => {
            eprintln!("warning: {e}");
            args.algos
                .iter()
                .map(|a| StatsRecord {
                    algorithm: a.name().into(),
                    params: params.clone(),
                    status: "invalid".into(),
                    ..Default::default()
                })
                .collect()
        }
    }
}

pub fn run(args: &BenchArgs) -> Result<(), CliError> {
    if !(args.timeout > 0.0 && args.timeout.is_finite()) {
        return Err(CliError::Usage("--timeout must be positive".into()));
    }
    let limit = Duration::from_secs_f64(args.timeout);
    let list = instances(args)?;
    let sink: Box<dyn Write> = match &args.csv {
        Some(p) => Box::new(fs::File::create(p).map_err(CliError::io(p))?),
        None => Box::new(std::io::stdout()),
    };
    let mut csv = csv::Writer::from_writer(sink);
    if list.is_empty() {
        csv.write_record(HEADER)?;
    }
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel();
    std::thread::scope(|scope| -> Result<(), CliError> {
        for _ in 0..args.jobs.clamp(1, list.len().max(1)) {
            let tx = tx.clone();
            let (next, list) = (&next, &list);
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(inst) = list.get(i) else { break };
                if tx.send((i, run_instance(inst, args, limit))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        // Rows are written in instance order whatever order runs finish in.
        let mut pending = BTreeMap::new();
        let mut want = 0;
        for (i, rows) in rx {
            pending.insert(i, rows);
            while let Some(rows) = pending.remove(&want) {
                for r in rows {
                    csv.serialize(r)?;
                }
                csv.flush().map_err(csv::Error::from)?;
                want += 1;
            }
        }
        Ok(())
    })?;
    csv.flush().map_err(csv::Error::from)?;
    Ok(())
}

const HEADER: [&str; 14] = [
    "algorithm",
    "n",
    "m",
    "W",
    "S",
    "lift_events",
    "solver_passes",
    "outer_iterations",
    "time_ns",
    "win_max_size",
    "win_min_size",
    "params",
    "status",
    "winners",
];

pub fn agree(args: &AgreeArgs) -> Result<(), CliError> {
    let mut reader = csv::Reader::from_path(&args.csv)?;
    let mut seen: HashMap<String, (String, String)> = HashMap::new();
    let mut bad = Vec::new();
    let mut compared = 0;
    for row in reader.deserialize() {
        let r: StatsRecord = row?;
        if r.status != "ok" {
            continue;
        }
        match seen.get(&r.params) {
            Some((algo, w)) => {
                compared += 1;
                if *w != r.winners {
                    bad.push(format!("{}: {algo} and {} disagree", r.params, r.algorithm));
                }
            }
            None => {
                seen.insert(r.params.clone(), (r.algorithm.clone(), r.winners.clone()));
            }
        }
    }
    for b in &bad {
        println!("mismatch: {b}");
    }
    println!("{} instances, {compared} comparisons, {} mismatches", seen.len(), bad.len());
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{} mismatches", bad.len())))
    }
}
