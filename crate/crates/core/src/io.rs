//! Text formats.
//!
//! A network file starts with `BN <n>` followed by `2^n` lines `<x> <f(x)>`, both
//! written as bit strings with `x_1` first. An arc-list file starts with `AG <n>`
//! followed by one `<x> <y>` line per arc. Lines starting with `#` are comments.

use std::fmt::Write;

use crate::config::{cube_size, from_bits, to_bits, Config, MAX_DIM};
use crate::digraph::{AttractorSet, StateDigraph};
use crate::error::{ParseError, Result};
use crate::network::BoolNet;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty())
}

fn header(lines: &mut dyn Iterator<Item = (usize, &str)>, tag: &str) -> std::result::Result<usize, ParseError> {
    let Some((line, text)) = lines.next() else {
        return Err(ParseError::MalformedHeader { line: 1, found: String::new() });
    };
    let malformed = || ParseError::MalformedHeader { line, found: text.to_string() };
    let rest = text.strip_prefix(tag).and_then(|r| r.strip_prefix(' ')).ok_or_else(malformed)?;
    let n: usize = rest.parse().map_err(|_| malformed())?;
    if n == 0 || n > MAX_DIM {
        return Err(ParseError::Dimension(n));
    }
    Ok(n)
}

fn token(line: usize, tok: &str, n: usize) -> std::result::Result<Config, ParseError> {
    match from_bits(tok) {
        Some(x) if tok.len() == n => Ok(x),
        _ => Err(ParseError::NonBinaryToken { line, token: tok.to_string(), n }),
    }
}

fn pair(line: usize, text: &str, n: usize) -> std::result::Result<(Config, Config), ParseError> {
    let mut parts = text.split(' ');
    let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(ParseError::MalformedLine { line });
    };
    Ok((token(line, a, n)?, token(line, b, n)?))
}

pub fn parse_network(text: &str) -> Result<BoolNet> {
    let mut lines = content_lines(text);
    let n = header(&mut lines, "BN")?;
    let size = cube_size(n);
    let mut table = vec![Config::MAX; size];
    let mut found = 0;
    for (line, l) in lines {
        let (x, y) = pair(line, l, n)?;
        if table[x as usize] != Config::MAX {
            return Err(ParseError::DuplicateIndex { line, token: to_bits(x, n) }.into());
        }
        table[x as usize] = y;
        found += 1;
    }
    if found != size {
        return Err(ParseError::WrongLineCount { expected: size, found }.into());
    }
    BoolNet::from_table(n, table)
}

pub fn serialize_network(f: &BoolNet) -> String {
    let n = f.n();
    let mut out = format!("BN {n}\n");
    for x in 0..f.size() as Config {
        let _ = writeln!(out, "{} {}", to_bits(x, n), to_bits(f.apply(x), n));
    }
    out
}

pub fn parse_arcs(text: &str) -> Result<StateDigraph> {
    let mut lines = content_lines(text);
    let n = header(&mut lines, "AG")?;
    let mut g = StateDigraph::empty(n);
    for (line, l) in lines {
        let (x, y) = pair(line, l, n)?;
        g.add_arc(x, y);
    }
    Ok(g)
}

pub fn serialize_arcs(g: &StateDigraph) -> String {
    let n = g.n();
    let mut out = format!("AG {n}\n");
    for (x, y) in g.arcs() {
        let _ = writeln!(out, "{} {}", to_bits(x, n), to_bits(y, n));
    }
    out
}

/// Graphviz rendering with vertices in ascending order; attractors, when given,
/// become clusters `cluster_<k>`.
pub fn to_dot(g: &StateDigraph, attractors: Option<&AttractorSet>, name: &str) -> String {
    let n = g.n();
    let mut out = format!("digraph {name} {{\n  node [shape=box, fontname=\"monospace\"];\n");
    let membership = attractors.map(|a| a.membership(cube_size(n)));
    if let Some(a) = attractors {
        for (k, att) in a.attractors.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_{k} {{\n    label=\"attractor {k}\";");
            for &v in att {
                let _ = writeln!(out, "    \"{}\";", to_bits(v, n));
            }
            out.push_str("  }\n");
        }
    }
    for v in 0..cube_size(n) as Config {
        let inside = membership.as_ref().is_some_and(|m| m[v as usize].is_some());
        if !inside {
            let _ = writeln!(out, "  \"{}\";", to_bits(v, n));
        }
    }
    for (x, y) in g.arcs() {
        let _ = writeln!(out, "  \"{}\" -> \"{}\";", to_bits(x, n), to_bits(y, n));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn shift_serialization() {
        let f = BoolNet::from_table(2, vec![0, 2, 1, 3]).unwrap();
        assert_eq!(serialize_network(&f), "BN 2\n00 00\n10 01\n01 10\n11 11\n");
        assert_eq!(parse_network(&serialize_network(&f)).unwrap(), f);
    }

    #[test]
    fn parse_errors_are_classified() {
        let err = |t: &str| match parse_network(t) {
            Err(Error::Parse(p)) => p,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert!(matches!(err("BX 2\n"), ParseError::MalformedHeader { .. }));
        assert!(matches!(err("BN 2\n00 00\n"), ParseError::WrongLineCount { expected: 4, found: 1 }));
        assert!(matches!(err("BN 1\n0 2\n1 1\n"), ParseError::NonBinaryToken { .. }));
        assert!(matches!(err("BN 1\n0 1\n0 0\n"), ParseError::DuplicateIndex { .. }));
        assert!(parse_network("# comment\nBN 1\n# another\n1 0\n0 1\n").is_ok());
    }
}
