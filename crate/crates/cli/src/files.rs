use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use mpg_core::io::{parse_mpg, parse_parity, ParityGame};
use mpg_core::{Game, Measure};

use crate::error::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(CliError::io(path))
}

pub fn read_game(path: &Path) -> Result<Game, CliError> {
    parse_mpg(&read_text(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_parity(path: &Path) -> Result<ParityGame, CliError> {
    parse_parity(&read_text(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(CliError::io(p)),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(CliError::io(Path::new("<stdout>"))),
    }
}

/// A measure with an optional strategy, as written by `solve --measure`:
/// one `<id> <value>` line per position (`inf` for infinity), then
/// `strategy <id> <succ>` lines.
#[derive(Debug, PartialEq)]
pub struct MeasureFile {
    pub measure: Vec<Measure>,
    pub strategy: Option<Vec<Option<usize>>>,
}

pub fn write_measure(measure: &[Measure], strategy: Option<&[Option<usize>]>) -> String {
    let mut out = String::new();
    for (v, m) in measure.iter().enumerate() {
        let _ = writeln!(out, "{v} {m}");
    }
    for (v, s) in strategy.into_iter().flatten().enumerate() {
        if let Some(u) = s {
            let _ = writeln!(out, "strategy {v} {u}");
        }
    }
    out
}

pub fn parse_measure(text: &str, n: usize) -> Result<MeasureFile, String> {
    let mut measure: Vec<Option<Measure>> = vec![None; n];
    let mut strategy: Option<Vec<Option<usize>>> = None;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |r: &str| format!("line {}: {r}", i + 1);
        let id = |s: &str| -> Result<usize, String> {
            s.parse::<usize>()
                .ok()
                .filter(|&v| v < n)
                .ok_or_else(|| err(&format!("bad position '{s}'")))
        };
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["strategy", v, u] => {
                let s = strategy.get_or_insert_with(|| vec![None; n]);
                let v = id(v)?;
                if s[v].replace(id(u)?).is_some() {
                    return Err(err("strategy given twice"));
                }
            }
            [v, m] => {
                let v = id(v)?;
                let m: Measure = m.parse().map_err(|e| err(&format!("{e}")))?;
                if measure[v].replace(m).is_some() {
                    return Err(err("measure given twice"));
                }
            }
            _ => return Err(err("expected `<id> <value>` or `strategy <id> <succ>`")),
        }
    }
    let measure = measure
        .into_iter()
        .enumerate()
        .map(|(v, m)| m.ok_or_else(|| format!("no measure for position {v}")))
        .collect::<Result<_, _>>()?;
    Ok(MeasureFile { measure, strategy })
}
