use mpg_core::{Algorithm, Game, Solution, UpdateStats};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// One solver run. Serialized flat, both as a JSON object and as a CSV row.
///
/// Big integers are decimal strings. Counters are empty when the run did
/// not finish or the solver does not keep them.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    #[serde(rename = "W")]
    pub w: String,
    #[serde(rename = "S")]
    pub s: String,
    pub lift_events: Option<u64>,
    pub solver_passes: Option<u64>,
    pub outer_iterations: Option<u64>,
    pub time_ns: Option<u64>,
    pub win_max_size: Option<usize>,
    pub win_min_size: Option<usize>,
    pub params: String,
    /// `ok`, `timeout`, `budget` (oracle strategy budget) or `invalid`.
    pub status: String,
    /// Hash of the winner string, for comparing runs across rows.
    pub winners: String,
}

impl StatsRecord {
    pub fn new(algo: Algorithm, g: &Game, params: &str, status: &str) -> Self {
        let st = g.stats();
        StatsRecord {
            algorithm: algo.name().into(),
            n: st.n,
            m: st.m,
            w: st.max_weight.to_string(),
            s: st.positive_sum.to_string(),
            params: params.into(),
            status: status.into(),
            ..Default::default()
        }
    }

    pub fn finished(algo: Algorithm, g: &Game, params: &str, sol: &Solution, stats: &UpdateStats) -> Self {
        let counted = algo != Algorithm::Oracle;
        StatsRecord {
            lift_events: counted.then_some(stats.lift_events),
            solver_passes: counted.then_some(stats.solver_passes),
            outer_iterations: (algo == Algorithm::Qdpm).then_some(stats.outer_iterations),
            time_ns: Some(u64::try_from(stats.wall_time.as_nanos()).unwrap_or(u64::MAX)),
            win_max_size: Some(sol.win_max.len()),
            win_min_size: Some(sol.win_min.len()),
            winners: digest(sol),
            ..StatsRecord::new(algo, g, params, "ok")
        }
    }
}

/// First 16 hex digits of the SHA-256 of the `0`/`1` winner string.
pub fn digest(sol: &Solution) -> String {
    let bits: String = sol
        .winners()
        .iter()
        .map(|o| if *o == mpg_core::Owner::Max { '0' } else { '1' })
        .collect();
    let hash = Sha256::digest(bits.as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}
