//! Browser bindings: generate a game, solve pasted text with every solver,
//! and sweep the two families whose lift counts separate the solvers.
//!
//! Every export returns a JSON string; errors become JS exceptions.

use mpg_core::brim::brim_solve;
use mpg_core::io::{parse_mpg, write_mpg, write_mpg_with_comment, GenParams};
use mpg_core::oracle::{oracle_solve, strategy_pairs, DEFAULT_BUDGET};
use mpg_core::qdpm::qdpm_solve;
use mpg_core::solution::Instant;
use mpg_core::{fixtures, Game, UpdateStats};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Debug, Serialize)]
pub struct Run {
    pub algorithm: &'static str,
    pub lift_events: Option<u64>,
    pub solver_passes: Option<u64>,
    pub time_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct Solved {
    pub n: usize,
    pub m: usize,
    pub w: String,
    pub s: String,
    /// 0 where Max wins, 1 where Min wins.
    pub winners: Vec<u8>,
    /// `[position, successor]` pairs of the Max witness.
    pub strategy: Vec<[usize; 2]>,
    pub runs: Vec<Run>,
    pub agree: bool,
}

#[derive(Debug, Serialize)]
pub struct FamilyPoint {
    pub k: u64,
    pub qdpm_lifts: u64,
    pub brim_lifts: u64,
    pub brim_passes: u64,
}

fn run(name: &'static str, stats: &UpdateStats, counted: bool) -> Run {
    Run {
        algorithm: name,
        lift_events: counted.then_some(stats.lift_events),
        solver_passes: counted.then_some(stats.solver_passes),
        time_ms: stats.wall_time.as_secs_f64() * 1e3,
    }
}

pub fn solve_game(g: &Game) -> Solved {
    let (q, qs) = qdpm_solve(g);
    let (b, bs) = brim_solve(g);
    let mut runs = vec![run("qdpm", &qs, true), run("brim", &bs, true)];
    let mut agree = q.winners() == b.winners();
    if strategy_pairs(g) <= DEFAULT_BUDGET {
        let start = Instant::now();
        let o = oracle_solve(g).expect("within budget");
        let stats = UpdateStats {
            wall_time: start.elapsed(),
            ..Default::default()
        };
        agree &= o.winners() == q.winners();
        runs.push(run("oracle", &stats, false));
    }
    let st = g.stats();
    Solved {
        n: st.n,
        m: st.m,
        w: st.max_weight.to_string(),
        s: st.positive_sum.to_string(),
        winners: q.winners().iter().map(|o| o.code()).collect(),
        strategy: q
            .witness_max
            .iter()
            .enumerate()
            .filter_map(|(v, s)| s.map(|u| [v, u]))
            .collect(),
        runs,
        agree,
    }
}

pub fn family_game(name: &str, k: u64) -> Result<Game, String> {
    match name {
        "fig1" if k >= 2 => Ok(fixtures::fig1(k)),
        "sim" if k >= 3 => Ok(fixtures::sim(k)),
        "fig1" | "sim" => Err(format!("k = {k} is too small for {name}")),
        _ => Err(format!("unknown family '{name}'")),
    }
}

pub fn family_sweep(name: &str, ks: &[u64]) -> Result<Vec<FamilyPoint>, String> {
    ks.iter()
        .map(|&k| {
            let g = family_game(name, k)?;
            let (_, q) = qdpm_solve(&g);
            let (_, b) = brim_solve(&g);
            Ok(FamilyPoint {
                k,
                qdpm_lifts: q.lift_events,
                brim_lifts: b.lift_events,
                brim_passes: b.solver_passes,
            })
        })
        .collect()
}

fn js_err(e: impl ToString) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn json(v: &impl Serialize) -> String {
    serde_json::to_string(v).expect("demo results serialize")
}

/// A seeded random game as MPG text.
#[wasm_bindgen]
pub fn generate(n: usize, max_outdeg: usize, weight_lo: i32, weight_hi: i32, seed: u32) -> Result<String, JsValue> {
    let p = GenParams {
        n,
        max_outdeg,
        weight_lo: weight_lo.into(),
        weight_hi: weight_hi.into(),
        owner_ratio: 0.5,
        seed: seed.into(),
    };
    let g = p.generate().map_err(js_err)?;
    Ok(write_mpg_with_comment(&g, &p.to_string()))
}

/// Solves MPG text with QDPM, BRIM and, on small games, the oracle.
#[wasm_bindgen]
pub fn solve(text: &str) -> Result<String, JsValue> {
    let g = parse_mpg(text).map_err(js_err)?;
    Ok(json(&solve_game(&g)))
}

/// Lift counts of both solvers on `fig1` or `sim` for each `k`.
#[wasm_bindgen]
pub fn sweep(family: &str, ks: Vec<u32>) -> Result<String, JsValue> {
    let ks: Vec<u64> = ks.into_iter().map(u64::from).collect();
    family_sweep(family, &ks).map(|p| json(&p)).map_err(js_err)
}

/// The MPG text of one family member, for the solve box.
#[wasm_bindgen]
pub fn family_text(family: &str, k: u32) -> Result<String, JsValue> {
    family_game(family, k.into()).map(|g| write_mpg(&g)).map_err(js_err)
}
