//! Text formats.
//!
//! Graph files:
//!
//! ```text
//! digraph n=3
//! 0 1 1
//! 1 2 1/2
//! 2 0 0.25
//! ```
//!
//! An `undirected n=<count>` header turns every edge line into both arcs.
//! List files hold one `<vertex>: <color>[=<rank>], ...` line per vertex.
//! Blank lines and lines starting with `#` are ignored in both.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{GraphError, UndirectedView, Vertex, WeightedDigraph};
use crate::kernel::RankFunction;
use crate::lister::{ListAssignment, ListError, ListerMove};
use crate::scalar::{Scalar, ScalarParseError};

/// Largest vertex count accepted from text input.
pub const MAX_VERTICES: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Number {
        line: usize,
        #[source]
        source: ScalarParseError,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lists(#[from] ListError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn number<S: Scalar>(line: usize, literal: &str) -> Result<S, ParseError> {
    S::parse_literal(literal).map_err(|source| ParseError::Number { line, source })
}

fn index(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token.parse().map_err(|_| syntax(line, format!("bad {what} `{token}`")))
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_graph<S: Scalar>(text: &str) -> Result<WeightedDigraph<S>, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| syntax(1, "missing header"))?;
    let (kind, count) = header
        .split_once(char::is_whitespace)
        .ok_or_else(|| syntax(hline, "header must be `digraph n=<count>` or `undirected n=<count>`"))?;
    let undirected = match kind {
        "digraph" => false,
        "undirected" => true,
        other => return Err(syntax(hline, format!("unknown graph kind `{other}`"))),
    };
    let count = count
        .trim()
        .strip_prefix("n=")
        .ok_or_else(|| syntax(hline, "expected `n=<count>`"))?;
    let n = index(hline, count, "vertex count")?;
    if n > MAX_VERTICES {
        return Err(syntax(hline, format!("vertex count {n} exceeds {MAX_VERTICES}")));
    }
    let mut edges = Vec::new();
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [from, to, weight] = fields[..] else {
            return Err(syntax(line, "expected `<from> <to> <weight>`"));
        };
        edges.push((
            index(line, from, "vertex")?,
            index(line, to, "vertex")?,
            number::<S>(line, weight)?,
        ));
    }
    let g = if undirected {
        WeightedDigraph::undirected(n, edges)?
    } else {
        WeightedDigraph::new(n, edges)?
    };
    Ok(g)
}

pub fn write_graph<S: Scalar>(g: &WeightedDigraph<S>) -> String {
    let mut out = format!("digraph n={}\n", g.vertex_count());
    for (v, w, weight) in g.edges() {
        let _ = writeln!(out, "{v} {w} {weight}");
    }
    out
}

/// Undirected header, one line per edge `v w` with `v < w`.
pub fn write_undirected<S: Scalar>(g: &UndirectedView<S>) -> String {
    let mut out = format!("undirected n={}\n", g.vertex_count());
    for (v, w, weight) in g.edges().filter(|(v, w, _)| v < w) {
        let _ = writeln!(out, "{v} {w} {weight}");
    }
    out
}

/// Parses a list file. Every vertex `0..m` must appear exactly once, where
/// `m - 1` is the largest vertex named.
pub fn parse_lists<S: Scalar>(text: &str) -> Result<ListAssignment<S>, ParseError> {
    let mut by_vertex: BTreeMap<Vertex, BTreeMap<u32, Option<S>>> = BTreeMap::new();
    for (line, l) in content_lines(text) {
        let (vertex, rest) = l
            .split_once(':')
            .ok_or_else(|| syntax(line, "expected `<vertex>: <color>, ...`"))?;
        let vertex = index(line, vertex.trim(), "vertex")?;
        if vertex >= MAX_VERTICES {
            return Err(syntax(line, format!("vertex {vertex} exceeds {MAX_VERTICES}")));
        }
        let mut list = BTreeMap::new();
        for entry in rest.split(',').map(str::trim) {
            if entry.is_empty() {
                return Err(syntax(line, "empty list entry"));
            }
            let (color, rank) = match entry.split_once('=') {
                Some((c, r)) => (c.trim(), Some(number::<S>(line, r.trim())?)),
                None => (entry, None),
            };
            let color: u32 = color
                .parse()
                .map_err(|_| syntax(line, format!("bad color `{color}`")))?;
            if list.insert(color, rank).is_some() {
                return Err(syntax(line, format!("color {color} listed twice")));
            }
        }
        if by_vertex.insert(vertex, list).is_some() {
            return Err(syntax(line, format!("vertex {vertex} listed twice")));
        }
    }
    let m = by_vertex.keys().next_back().map_or(0, |&v| v + 1);
    if let Some(missing) = (0..m).find(|v| !by_vertex.contains_key(v)) {
        return Err(syntax(0, format!("vertex {missing} has no list")));
    }
    Ok(ListAssignment::new(by_vertex.into_values().collect())?)
}

pub fn write_lists<S: Scalar>(lists: &ListAssignment<S>) -> String {
    let mut out = String::new();
    for v in 0..lists.vertex_count() {
        let entries: Vec<String> = lists
            .entries(v)
            .map(|(c, r)| match r {
                Some(r) => format!("{c}={r}"),
                None => c.to_string(),
            })
            .collect();
        let _ = writeln!(out, "{v}: {}", entries.join(", "));
    }
    out
}

fn vertex_value_pairs<S: Scalar>(text: &str, what: &str) -> Result<BTreeMap<Vertex, S>, ParseError> {
    let mut map = BTreeMap::new();
    for token in text.split_whitespace() {
        let (v, t) = token
            .split_once(':')
            .ok_or_else(|| syntax(1, format!("expected `<vertex>:<{what}>`, found `{token}`")))?;
        let v = index(1, v, "vertex")?;
        if map.insert(v, number::<S>(1, t)?).is_some() {
            return Err(syntax(1, format!("vertex {v} given twice")));
        }
    }
    Ok(map)
}

/// Parses `present v:t v:t ...`; the leading keyword is optional. Negative
/// tolerances are kept here and removed by move filtering.
pub fn parse_presentation<S: Scalar>(line: &str) -> Result<ListerMove<S>, ParseError> {
    let line = line.trim();
    let body = line.strip_prefix("present").unwrap_or(line);
    let map = vertex_value_pairs(body, "tolerance")?;
    if map.is_empty() {
        return Err(syntax(1, "no vertices presented"));
    }
    Ok(ListerMove::new(map))
}

pub fn format_presentation<S: Scalar>(mv: &ListerMove<S>) -> String {
    mv.iter().map(|(v, t)| format!("{v}:{t}")).collect::<Vec<_>>().join(" ")
}

/// Ranks as `v:r v:r ...`, or one `<vertex> <rank>` pair per line.
pub fn parse_ranks<S: Scalar>(text: &str) -> Result<RankFunction<S>, ParseError> {
    if text.contains(':') {
        let flat: Vec<&str> = content_lines(text).map(|(_, l)| l).collect();
        return Ok(RankFunction::new(vertex_value_pairs(&flat.join(" "), "rank")?));
    }
    let mut map = BTreeMap::new();
    for (line, l) in content_lines(text) {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [v, r] = fields[..] else {
            return Err(syntax(line, "expected `<vertex> <rank>`"));
        };
        let v = index(line, v, "vertex")?;
        if map.insert(v, number::<S>(line, r)?).is_some() {
            return Err(syntax(line, format!("vertex {v} given twice")));
        }
    }
    Ok(RankFunction::new(map))
}

/// A coloring as whitespace- or comma-separated positive integers in vertex
/// order.
pub fn parse_coloring(text: &str) -> Result<Vec<usize>, ParseError> {
    content_lines(text)
        .flat_map(|(line, l)| {
            l.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(move |t| (line, t))
        })
        .map(|(line, t)| index(line, t, "color"))
        .collect()
}

/// A single value applied to every vertex, or a comma-separated vector.
pub fn parse_vector<S: Scalar>(text: &str, n: usize) -> Result<Vec<S>, ParseError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.len() {
        1 => Ok(vec![number::<S>(1, parts[0])?; n]),
        len if len == n => parts.iter().map(|p| number::<S>(1, p)).collect(),
        len => Err(syntax(1, format!("expected 1 or {n} values, found {len}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::directed_cycle;
    use crate::scalar::Rational;

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    #[test]
    fn graph_round_trip() {
        let text = "# triangle\ndigraph n=3\n0 1 1\n1 2 1\n\n2 0 1\n";
        let g: WeightedDigraph<Rational> = parse_graph(text).unwrap();
        assert_eq!(g, directed_cycle(3));
        assert_eq!(parse_graph::<Rational>(&write_graph(&g)).unwrap(), g);
        let u: WeightedDigraph<Rational> = parse_graph("undirected n=2\n0 1 1/2\n").unwrap();
        assert_eq!(u.weight(1, 0), Some(&q(1, 2)));
        let view = UndirectedView::new(u.clone()).unwrap();
        assert_eq!(write_undirected(&view), "undirected n=2\n0 1 1/2\n");
        assert_eq!(parse_graph::<Rational>(&write_undirected(&view)).unwrap(), u);
        let f: WeightedDigraph<f64> = parse_graph("digraph n=2\n0 1 0.25\n").unwrap();
        assert_eq!(f.out_weight(0), 0.25);
    }

    #[test]
    fn graph_errors() {
        assert!(matches!(parse_graph::<Rational>(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_graph::<Rational>("graph n=2"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_graph::<Rational>("digraph 2"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_graph::<Rational>("digraph n=2\n0 1"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph::<Rational>("digraph n=2\n0 1 0"),
            Err(ParseError::Graph(GraphError::BadWeight { .. }))
        ));
        assert!(matches!(
            parse_graph::<Rational>("digraph n=2\n0 1 x"),
            Err(ParseError::Number { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph::<Rational>("undirected n=2\n0 1 1\n1 0 1"),
            Err(ParseError::Graph(GraphError::DuplicateEdge { .. }))
        ));
        assert!(matches!(
            parse_graph::<Rational>("digraph n=99999999999"),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn lists() {
        let lists: ListAssignment<Rational> = parse_lists("1: 1, 2\n0: 1\n").unwrap();
        assert_eq!(lists.colors(0).collect::<Vec<_>>(), vec![1]);
        assert_eq!(lists.colors(1).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(parse_lists::<Rational>(&write_lists(&lists)).unwrap(), lists);
        let ranked: ListAssignment<Rational> = parse_lists("0: 1=1, 2=0\n1: 1=1/2, 2=1/2").unwrap();
        assert_eq!(ranked.rank(1, 2), Some(&q(1, 2)));
        assert_eq!(parse_lists::<Rational>(&write_lists(&ranked)).unwrap(), ranked);
        assert!(parse_lists::<Rational>("1: 1").is_err());
        assert!(parse_lists::<Rational>("0: 1, 1").is_err());
        assert!(parse_lists::<Rational>("0: 0").is_err());
        assert!(parse_lists::<Rational>("0: 1,").is_err());
        assert!(parse_lists::<Rational>("0: 1\n0: 2").is_err());
    }

    #[test]
    fn presentations() {
        let mv: ListerMove<Rational> = parse_presentation("present 0:1/2 2:-1").unwrap();
        assert_eq!(mv.tolerance(0), Some(&q(1, 2)));
        assert_eq!(mv.tolerance(2), Some(&q(-1, 1)));
        assert_eq!(format_presentation(&mv), "0:1/2 2:-1");
        assert_eq!(
            parse_presentation::<Rational>("1:0.5").unwrap(),
            ListerMove::uniform([1], q(1, 2))
        );
        assert!(parse_presentation::<Rational>("present").is_err());
        assert!(parse_presentation::<Rational>("present 0:1 0:1").is_err());
        assert!(parse_presentation::<Rational>("present 0").is_err());
    }

    #[test]
    fn ranks_coloring_vectors() {
        let r: RankFunction<Rational> = parse_ranks("0:0.4 1:0.4").unwrap();
        assert_eq!(r, RankFunction::uniform([0, 1], q(2, 5)));
        let r2: RankFunction<Rational> = parse_ranks("0 0.4\n1 2/5\n").unwrap();
        assert_eq!(r2, r);
        assert!(parse_ranks::<Rational>("0 1 2").is_err());
        assert_eq!(parse_coloring("1, 2\n3").unwrap(), vec![1, 2, 3]);
        assert!(parse_coloring("1 x").is_err());
        assert_eq!(parse_vector::<Rational>("1/2", 3).unwrap(), vec![q(1, 2); 3]);
        assert_eq!(parse_vector::<Rational>("1,2", 2).unwrap(), vec![q(1, 1), q(2, 1)]);
        assert!(parse_vector::<Rational>("1,2", 3).is_err());
    }
}
