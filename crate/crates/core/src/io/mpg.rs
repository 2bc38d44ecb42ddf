//! The native text format.
//!
//! ```text
//! mpg 1;
//! 0 1 0 1;
//! 1 -1 1 0 "back";
//! ```
//!
//! The header gives the largest id. Each record is `id weight owner succs
//! ["label"];` with owner 0 for Max and successors separated by commas.
//! Blank lines and lines starting with `#` are ignored, as is a PGSolver
//! `start` line.

use std::fmt::Write;

use num_bigint::{BigInt, Sign};

use super::{syntax, ParseError};
use crate::arena::{build_game, Game, GameError, Owner, RawPosition};

/// Parses records under header keyword `kw`. The second column is returned
/// as the weight; callers reinterpret it where needed. With `nonneg` the
/// second column must not be negative.
pub(crate) fn parse_records(text: &str, kw: &str, nonneg: bool) -> Result<Vec<RawPosition>, ParseError> {
    let mut max_id: Option<usize> = None;
    let mut out = Vec::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(body) = line.strip_suffix(';') else {
            return Err(syntax(line_no, "missing ';'"));
        };
        let body = body.trim_end();
        let Some(limit) = max_id else {
            let mut it = body.split_whitespace();
            if it.next() != Some(kw) {
                return Err(syntax(line_no, format!("expected header '{kw} <max-id>;'")));
            }
            let id = it
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| syntax(line_no, "bad max id in header"))?;
            if it.next().is_some() {
                return Err(syntax(line_no, "trailing tokens in header"));
            }
            max_id = Some(id);
            continue;
        };
        if body.starts_with("start") {
            continue;
        }
        let rec = parse_record(body, line_no, limit)?;
        if nonneg && rec.weight.sign() == Sign::Minus {
            return Err(syntax(line_no, "negative priority"));
        }
        out.push(rec);
    }
    let Some(limit) = max_id else {
        return Err(syntax(text.lines().count().max(1), "missing header"));
    };
    let mut seen = vec![false; limit.saturating_add(1).min(out.len() + 1)];
    for r in &out {
        if let Some(s) = seen.get_mut(r.id) {
            *s = true;
        }
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        if missing <= limit {
            return Err(GameError::MissingId(missing).into());
        }
    }
    Ok(out)
}

fn parse_record(body: &str, line_no: usize, limit: usize) -> Result<RawPosition, ParseError> {
    let (fields, label) = match body.find('"') {
        None => (body, None),
        Some(q) => {
            let rest = &body[q + 1..];
            let Some(inner) = rest.strip_suffix('"') else {
                return Err(syntax(line_no, "unterminated label"));
            };
            (&body[..q], Some(inner.to_string()))
        }
    };
    let tokens: Vec<&str> = fields.split_whitespace().collect();
    // A missing successor list is left to `build_game`, which names the sink.
    if tokens.len() < 3 {
        return Err(syntax(line_no, "expected 'id weight owner succs'"));
    }
    let id: usize = tokens[0]
        .parse()
        .map_err(|_| syntax(line_no, format!("bad id '{}'", tokens[0])))?;
    if id > limit {
        return Err(syntax(line_no, format!("id {id} exceeds header max {limit}")));
    }
    let weight: BigInt = tokens[1]
        .parse()
        .map_err(|_| syntax(line_no, format!("bad weight '{}'", tokens[1])))?;
    let owner = tokens[2]
        .parse::<u8>()
        .ok()
        .and_then(Owner::from_code)
        .ok_or_else(|| syntax(line_no, format!("bad owner '{}'", tokens[2])))?;
    let succ_text = tokens[3..].concat();
    let succ = succ_text
        .split(',')
        .filter(|_| !succ_text.is_empty())
        .map(|t| t.parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| syntax(line_no, format!("bad successor list '{succ_text}'")))?;
    Ok(RawPosition {
        id,
        weight,
        owner,
        succ,
        label,
    })
}

pub fn parse_mpg(text: &str) -> Result<Game, ParseError> {
    Ok(build_game(parse_records(text, "mpg", false)?)?)
}

pub(crate) fn write_records(out: &mut String, kw: &str, g: &Game, second: impl Fn(usize) -> String) {
    writeln!(out, "{kw} {};", g.n() - 1).unwrap();
    for v in g.positions() {
        write!(out, "{} {} {} ", v, second(v), g.owner(v).code()).unwrap();
        for (i, u) in g.succ(v).iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{u}").unwrap();
        }
        if let Some(l) = g.label(v) {
            write!(out, " \"{l}\"").unwrap();
        }
        out.push_str(";\n");
    }
}

pub fn write_mpg(g: &Game) -> String {
    let mut out = String::new();
    write_records(&mut out, "mpg", g, |v| g.weight(v).to_string());
    out
}

/// As [`write_mpg`], preceded by a `#` comment line.
pub fn write_mpg_with_comment(g: &Game, comment: &str) -> String {
    let mut out = String::new();
    for line in comment.lines() {
        writeln!(out, "# {line}").unwrap();
    }
    out.push_str(&write_mpg(g));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::GameError;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn zero_cycle_text() {
        let g = parse_mpg("mpg 1;\n0 1 0 1;\n1 -1 1 0;").unwrap();
        assert_eq!(g, fixtures::zero_cycle());
        assert_eq!(write_mpg(&g), "mpg 1;\n0 1 0 1;\n1 -1 1 0;\n");
    }

    #[test]
    fn round_trips() {
        for g in [fixtures::self_loop(), fixtures::fig1(9), fixtures::sim(4), fixtures::fig2()] {
            assert_eq!(parse_mpg(&write_mpg(&g)).unwrap(), g);
        }
    }

    #[test]
    fn labels_comments_and_spacing() {
        let text = "# made by hand\nmpg 1 ;\n\n1 -1 1 0 \"back edge\";\n0 7 0 1, 0;\n";
        let g = parse_mpg(text).unwrap();
        assert_eq!(g.label(1), Some("back edge"));
        assert_eq!(g.succ(0), &[1, 0]);
        assert_eq!(parse_mpg(&write_mpg(&g)).unwrap(), g);
        let c = write_mpg_with_comment(&g, "seed=3");
        assert!(c.starts_with("# seed=3\nmpg 1;"));
        assert_eq!(parse_mpg(&c).unwrap(), g);
    }

    #[test]
    fn rejects() {
        assert!(matches!(parse_mpg("mpg 0;\n0 1 2 0;"), Err(ParseError::Syntax { line: 2, .. })));
        assert!(matches!(parse_mpg("mpg 0;\n0 1 0 0"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_mpg("0 1 0 0;"), Err(ParseError::Syntax { line: 1, .. })));
        assert!(matches!(parse_mpg(""), Err(ParseError::Syntax { .. })));
        assert_eq!(
            parse_mpg("mpg 0;\n1 1 0 0;").unwrap_err(),
            ParseError::Syntax { line: 2, reason: "id 1 exceeds header max 0".into() }
        );
        assert_eq!(
            parse_mpg("mpg 0;\n0 1 0 3;"),
            Err(ParseError::Invalid(GameError::DanglingEdge(0, 3)))
        );
        assert_eq!(
            parse_mpg("mpg 1;\n0 1 0 0;\n1 1 0 2;"),
            Err(ParseError::Invalid(GameError::DanglingEdge(1, 2)))
        );
        assert_eq!(
            parse_mpg("mpg 1;\n0 1 0 0;"),
            Err(ParseError::Invalid(GameError::MissingId(1)))
        );
        assert_eq!(
            parse_mpg("mpg 1;\n0 1 0 1;\n1 0 1;"),
            Err(ParseError::Invalid(GameError::SinkPosition(1)))
        );
        assert!(matches!(parse_mpg("mpg 0;\n0 1;"), Err(ParseError::Syntax { line: 2, .. })));
    }

    proptest! {
        #[test]
        fn never_panics(bytes in proptest::collection::vec(any::<u8>(), 0..200)) {
            let text = String::from_utf8_lossy(&bytes);
            let _ = parse_mpg(&text);
        }

        #[test]
        fn never_panics_near_valid(lines in proptest::collection::vec("[0-9 ,;\"mpg-]{0,16}", 0..6)) {
            let text = format!("mpg 2;\n{}", lines.join("\n"));
            let _ = parse_mpg(&text);
        }
    }
}
