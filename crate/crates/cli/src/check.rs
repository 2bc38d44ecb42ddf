use mpg_core::measure::is_progress_measure;
use mpg_core::qdpm::{validate_qdr, Qdr, DEEP_CHECK_LIMIT};

use crate::error::CliError;
use crate::files::{parse_measure, read_game, read_text};
use crate::CheckArgs;

pub fn run(args: &CheckArgs) -> Result<(), CliError> {
    let g = read_game(&args.input)?;
    let st = g.stats();
    println!("game ok: n={} m={} W={} S={}", st.n, st.m, st.max_weight, st.positive_sum);
    let Some(path) = &args.solution else {
        return Ok(());
    };
    let file = parse_measure(&read_text(path)?, g.n())
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut problems = Vec::new();
    let all: Vec<usize> = g.positions().collect();
    for v in is_progress_measure(&g, &file.measure, &all) {
        problems.push(format!("position {v} violates the progress condition"));
    }
    if let Some(strategy) = file.strategy {
        let deep = g.n() <= DEEP_CHECK_LIMIT;
        let r = Qdr {
            measure: file.measure,
            strategy,
        };
        problems.extend(validate_qdr(&g, &r, deep).iter().map(|v| v.to_string()));
    }
    if problems.is_empty() {
        println!("measure ok");
        return Ok(());
    }
    for p in &problems {
        println!("violation: {p}");
    }
    Err(CliError::Failed(format!("{} violation(s)", problems.len())))
}
