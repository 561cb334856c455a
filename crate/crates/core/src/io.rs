//! Text formats: graph files (with an optional signature column) and
//! transport plan dumps.

use std::fmt::Write as _;

use crate::bakry_emery::Signature;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{format_rational, parse_rational, Rational};

/// Largest vertex count accepted from a file.
pub const MAX_FILE_VERTICES: usize = 1 << 20;

#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: Graph,
    pub signature: Option<Signature>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Significant lines (1-based number, trimmed content), skipping blanks and
/// `#` comments.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_index(word: &str, line: usize, what: &str) -> Result<usize> {
    word.parse::<usize>()
        .map_err(|_| parse_err(line, format!("bad {what} {word:?}")))
}

/// Reads `n m` followed by `m` lines `u v [+1|-1]` with `u < v < n`.
pub fn read_graph(text: &str) -> Result<GraphFile> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    if words.len() != 2 {
        return Err(parse_err(hline, "header must be \"n m\""));
    }
    let n = parse_index(words[0], hline, "vertex count")?;
    let m = parse_index(words[1], hline, "edge count")?;
    if n > MAX_FILE_VERTICES {
        return Err(parse_err(hline, format!("vertex count {n} exceeds {MAX_FILE_VERTICES}")));
    }

    let mut edges = Vec::new();
    let mut signs = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut last_line = hline;
    for (line, content) in lines {
        last_line = line;
        let words: Vec<&str> = content.split_whitespace().collect();
        if !(2..=3).contains(&words.len()) {
            return Err(parse_err(line, "edge line must be \"u v\" or \"u v sign\""));
        }
        let u = parse_index(words[0], line, "vertex")?;
        let v = parse_index(words[1], line, "vertex")?;
        for w in [u, v] {
            if w >= n {
                return Err(parse_err(line, format!("vertex {w} out of range for n = {n}")));
            }
        }
        if u == v {
            return Err(parse_err(line, format!("self-loop at vertex {u}")));
        }
        if u > v {
            return Err(parse_err(line, format!("edge {u} {v} must be written with u < v")));
        }
        if !seen.insert((u, v)) {
            return Err(parse_err(line, format!("duplicate edge {u}-{v}")));
        }
        let sign = match words.get(2) {
            None => None,
            Some(&"+1") => Some(1i8),
            Some(&"-1") => Some(-1i8),
            Some(other) => return Err(parse_err(line, format!("sign must be +1 or -1, got {other:?}"))),
        };
        if !edges.is_empty() && sign.is_some() != (signs.len() == edges.len()) {
            return Err(parse_err(line, "signature column must be given on every edge line or none"));
        }
        edges.push((u, v));
        if let Some(s) = sign {
            signs.push((u, v, s));
        }
        if edges.len() > m {
            return Err(parse_err(line, format!("more than {m} edge lines")));
        }
    }
    if edges.len() != m {
        return Err(parse_err(last_line, format!("expected {m} edges, found {}", edges.len())));
    }
    let graph = Graph::new(n, edges).map_err(|e| parse_err(last_line, e.to_string()))?;
    let signature = if signs.is_empty() {
        None
    } else {
        Some(Signature::from_edges(&graph, signs)?)
    };
    Ok(GraphFile { graph, signature })
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_signed_graph(g: &Graph, sigma: &Signature) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v, s) in sigma.edge_signs() {
        writeln!(out, "{u} {v} {}", if s > 0 { "+1" } else { "-1" }).unwrap();
    }
    out
}

/// Plan dump: one `u v num/den` line per positive entry, sorted.
pub fn write_plan(entries: &[(usize, usize, Rational)]) -> String {
    let mut sorted: Vec<_> = entries.iter().filter(|e| e.2 > Rational::from_integer(0)).collect();
    sorted.sort_by_key(|&&(u, v, _)| (u, v));
    let mut out = String::new();
    for (u, v, mass) in sorted {
        writeln!(out, "{u} {v} {}", format_rational(mass)).unwrap();
    }
    out
}

pub fn read_plan(text: &str) -> Result<Vec<(usize, usize, Rational)>> {
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (line, content) in content_lines(text) {
        let words: Vec<&str> = content.split_whitespace().collect();
        if words.len() != 3 {
            return Err(parse_err(line, "plan line must be \"u v num/den\""));
        }
        let u = parse_index(words[0], line, "vertex")?;
        let v = parse_index(words[1], line, "vertex")?;
        let mass = parse_rational(words[2]).map_err(|e| match e {
            Error::Parse { msg, .. } => parse_err(line, msg),
            other => other,
        })?;
        if mass <= Rational::from_integer(0) {
            return Err(parse_err(line, "plan masses must be positive"));
        }
        if let Some(&(pu, pv, _)) = entries.last() {
            if (pu, pv) >= (u, v) {
                return Err(parse_err(line, "plan entries must be strictly sorted"));
            }
        }
        entries.push((u, v, mass));
    }
    Ok(entries)
}
