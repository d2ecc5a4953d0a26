//! Plain-text formats.
//!
//! * Profile: header `m n`, then `n` lines of `m` alternatives, most preferred first.
//! * Weighted profile: as above with a leading `num/den` weight token per line.
//! * Digraph: header `m e`, then `e` lines `u v` for the arc `u → v`.
//! * X3C instance: header `q s`, then `s` lines of three ground elements.
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::ranking::{Profile, Ranking, WeightedProfile};
use crate::rational;
use crate::reductions::X3CInstance;

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

fn number(line: usize, token: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a nonnegative integer, found {token:?}")))
}

struct Body<'a> {
    header_line: usize,
    header: (usize, usize),
    rows: Vec<(usize, Vec<&'a str>)>,
}

fn split<'a>(text: &'a str, what: &str) -> Result<Body<'a>> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| Error::parse(1, format!("missing {what} header")))?;
    if header.len() != 2 {
        return Err(Error::parse(header_line, format!("{what} header needs exactly two numbers")));
    }
    let header = (number(header_line, header[0])?, number(header_line, header[1])?);
    let rows: Vec<_> = lines.collect();
    if rows.len() != header.1 {
        return Err(Error::parse(
            rows.last().map_or(header_line, |r| r.0),
            format!("header announces {} rows, found {}", header.1, rows.len()),
        ));
    }
    Ok(Body {
        header_line,
        header,
        rows,
    })
}

fn parse_ranking(line: usize, m: usize, tokens: &[&str]) -> Result<Ranking> {
    if tokens.len() != m {
        return Err(Error::parse(line, format!("expected {m} alternatives, found {}", tokens.len())));
    }
    let order = tokens.iter().map(|t| number(line, t)).collect::<Result<Vec<_>>>()?;
    Ranking::new(order).map_err(|e| Error::parse(line, e.to_string()))
}

pub fn parse_profile(text: &str) -> Result<Profile> {
    let body = split(text, "profile")?;
    let m = body.header.0;
    if body.header.1 == 0 {
        return Err(Error::parse(body.header_line, "a profile needs at least one ranking"));
    }
    let rankings = body
        .rows
        .iter()
        .map(|(line, tokens)| parse_ranking(*line, m, tokens))
        .collect::<Result<Vec<_>>>()?;
    Profile::new(rankings)
}

pub fn format_profile(p: &Profile) -> String {
    let mut out = format!("{} {}\n", p.m(), p.n());
    for r in p.rankings() {
        let _ = writeln!(out, "{}", r.order().iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" "));
    }
    out
}

pub fn parse_weighted_profile(text: &str) -> Result<WeightedProfile> {
    let body = split(text, "weighted profile")?;
    let m = body.header.0;
    let entries = body
        .rows
        .iter()
        .map(|(line, tokens)| {
            let (w, rest) = tokens
                .split_first()
                .ok_or_else(|| Error::parse(*line, "missing weight"))?;
            if !w.contains('/') {
                return Err(Error::parse(*line, format!("weight {w:?} must be written as num/den")));
            }
            let weight = rational::parse(w).map_err(|e| Error::parse(*line, e.to_string()))?;
            Ok((parse_ranking(*line, m, rest)?, weight))
        })
        .collect::<Result<Vec<_>>>()?;
    WeightedProfile::new(entries)
}

pub fn format_weighted_profile(p: &WeightedProfile) -> String {
    let mut out = format!("{} {}\n", p.m(), p.entries().len());
    for (r, w) in p.entries() {
        let order = r.order().iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "{}/{} {order}", w.numer(), w.denom());
    }
    out
}

/// True if the first data row starts with a `num/den` weight token.
pub fn looks_weighted(text: &str) -> bool {
    content_lines(text)
        .nth(1)
        .is_some_and(|(_, tokens)| tokens.first().is_some_and(|t| t.contains('/')))
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let body = split(text, "digraph")?;
    let arcs = body
        .rows
        .iter()
        .map(|(line, tokens)| match tokens.as_slice() {
            [u, v] => Ok((number(*line, u)?, number(*line, v)?)),
            _ => Err(Error::parse(*line, "an arc line needs exactly two vertices")),
        })
        .collect::<Result<Vec<_>>>()?;
    Digraph::new(body.header.0, arcs)
}

pub fn format_digraph(g: &Digraph) -> String {
    let mut out = format!("{} {}\n", g.m(), g.arc_count());
    for (u, v) in g.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_x3c(text: &str) -> Result<X3CInstance> {
    let body = split(text, "X3C")?;
    let subsets = body
        .rows
        .iter()
        .map(|(line, tokens)| match tokens.as_slice() {
            [a, b, c] => Ok([number(*line, a)?, number(*line, b)?, number(*line, c)?]),
            _ => Err(Error::parse(*line, "a subset line needs exactly three elements")),
        })
        .collect::<Result<Vec<_>>>()?;
    X3CInstance::new(body.header.0, subsets)
}

pub fn format_x3c(inst: &X3CInstance) -> String {
    let mut out = format!("{} {}\n", inst.q(), inst.s());
    for [a, b, c] in inst.subsets() {
        let _ = writeln!(out, "{a} {b} {c}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn profile_round_trip() {
        let text = "# three voters\n3 3\n0 1 2\n\n2 1 0\n1 0 2\n";
        let p = parse_profile(text).unwrap();
        assert_eq!(p.n(), 3);
        assert_eq!(parse_profile(&format_profile(&p)).unwrap(), p);
        assert!(!looks_weighted(text));
    }

    #[test]
    fn profile_errors_carry_line_numbers() {
        assert!(matches!(parse_profile("3 2\n0 1 2\n0 1 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_profile("3 2\n0 1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_profile("3 1\n0 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_profile("3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_profile("3 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_profile("3 1\n0 x 2\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn weighted_round_trip() {
        let text = "3 2\n1/2 0 1 2\n3/1 2 1 0\n";
        assert!(looks_weighted(text));
        let p = parse_weighted_profile(text).unwrap();
        assert_eq!(p.entries()[0].1, ratio(1, 2));
        assert_eq!(format_weighted_profile(&p), text);
        assert!(parse_weighted_profile("3 1\n1 0 1 2\n").is_err());
        assert!(parse_weighted_profile("3 1\n-1/2 0 1 2\n").is_err());
    }

    #[test]
    fn digraph_and_x3c_round_trip() {
        let g = parse_digraph("3 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g, Digraph::cycle(3));
        assert_eq!(parse_digraph(&format_digraph(&g)).unwrap(), g);
        assert!(parse_digraph("3 1\n0 0\n").is_err());

        let inst = parse_x3c("6 2\n0 1 2\n3 4 5\n").unwrap();
        assert_eq!(parse_x3c(&format_x3c(&inst)).unwrap(), inst);
        assert!(parse_x3c("6 1\n0 1 2 3\n").is_err());
    }
}
