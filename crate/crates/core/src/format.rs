//! Text formats for graphs and Gram matrices.
//!
//! Graph files:
//!
//! ```text
//! # comment
//! graph theta
//! vertices 2
//! edge 1 0 1 1/1
//! edge 2 0 1 2/1
//! edge 3 0 1 3/1
//! ```
//!
//! Lengths are optional but must be given on every edge or on none. Gram
//! files start with `dim <n>` followed by `n` rows of rationals.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, MultiGraph};
use crate::lattice::GramLattice;
use crate::tropical::MetricGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub name: String,
    pub graph: MultiGraph,
    pub lengths: Option<BTreeMap<EdgeId, Rational>>,
}

impl GraphFile {
    pub fn plain(name: &str, graph: MultiGraph) -> Self {
        GraphFile {
            name: name.to_string(),
            graph,
            lengths: None,
        }
    }

    pub fn metric(name: &str, mg: &MetricGraph) -> Self {
        GraphFile {
            name: name.to_string(),
            graph: mg.graph().clone(),
            lengths: Some(mg.lengths().clone()),
        }
    }

    /// The metric graph, with unit lengths when none were given.
    pub fn to_metric(&self) -> Result<MetricGraph> {
        match &self.lengths {
            Some(l) => MetricGraph::new(self.graph.clone(), l.clone()),
            None => Ok(MetricGraph::unit(self.graph.clone())),
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

/// Meaningful lines with their 1-based numbers, comments stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn number<T: std::str::FromStr>(word: &str, line: usize, what: &str) -> Result<T> {
    word.parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{word}`")))
}

pub fn parse_graph_file(text: &str) -> Result<GraphFile> {
    let mut name: Option<String> = None;
    let mut vertices: Option<usize> = None;
    let mut edges: Vec<Edge> = Vec::new();
    let mut lengths: BTreeMap<EdgeId, Rational> = BTreeMap::new();
    let mut unlengthed = 0;
    for (line, words) in lines(text) {
        match words[0] {
            "graph" => {
                if name.is_some() {
                    return Err(syntax(line, "repeated `graph` header"));
                }
                name = Some(words[1..].join(" "));
            }
            "vertices" => {
                if name.is_none() {
                    return Err(syntax(line, "expected `graph <name>` first"));
                }
                if vertices.is_some() || words.len() != 2 {
                    return Err(syntax(line, "expected a single `vertices <n>` line"));
                }
                vertices = Some(number(words[1], line, "vertex count")?);
            }
            "edge" => {
                let n = vertices.ok_or_else(|| syntax(line, "`edge` before `vertices`"))?;
                if !(4..=5).contains(&words.len()) {
                    return Err(syntax(line, "expected `edge <id> <tail> <head> [<num>/<den>]`"));
                }
                let id: EdgeId = number(words[1], line, "edge id")?;
                let tail: usize = number(words[2], line, "vertex")?;
                let head: usize = number(words[3], line, "vertex")?;
                for v in [tail, head] {
                    if v >= n {
                        return Err(syntax(line, format!("vertex {v} out of range 0..{n}")));
                    }
                }
                if edges.iter().any(|e| e.id == id) {
                    return Err(Error::DuplicateEdgeId(id));
                }
                edges.push(Edge { id, tail, head });
                match words.get(4) {
                    Some(w) => {
                        let l = parse_rational(w).ok_or_else(|| syntax(line, format!("invalid length `{w}`")))?;
                        if l <= Rational::from_integer(0) {
                            return Err(Error::NonPositiveLength(id));
                        }
                        lengths.insert(id, l);
                    }
                    None => unlengthed += 1,
                }
                if unlengthed > 0 && !lengths.is_empty() {
                    return Err(syntax(line, "lengths must be given on every edge or on none"));
                }
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| syntax(0, "missing `graph <name>` header"))?;
    let n = vertices.ok_or_else(|| syntax(0, "missing `vertices <n>` line"))?;
    let graph = MultiGraph::new(n, edges)?;
    let lengths = (!lengths.is_empty()).then_some(lengths);
    Ok(GraphFile {
        name,
        graph,
        lengths,
    })
}

pub fn serialize_graph_file(file: &GraphFile) -> String {
    let mut out = format!("graph {}\nvertices {}\n", file.name, file.graph.vertex_count());
    for e in file.graph.edges() {
        let _ = write!(out, "edge {} {} {}", e.id, e.tail, e.head);
        if let Some(l) = &file.lengths {
            let _ = write!(out, " {}", format_rational(&l[&e.id]));
        }
        out.push('\n');
    }
    out
}

pub fn parse_gram_file(text: &str) -> Result<GramLattice> {
    let mut it = lines(text);
    let (line, header) = it.next().ok_or_else(|| syntax(0, "empty Gram file"))?;
    if header.len() != 2 || header[0] != "dim" {
        return Err(syntax(line, "expected `dim <n>`"));
    }
    let n: usize = number(header[1], line, "dimension")?;
    let mut rows = Vec::with_capacity(n);
    for (line, words) in it {
        if words.len() != n {
            return Err(syntax(line, format!("expected {n} entries, found {}", words.len())));
        }
        let row = words
            .iter()
            .map(|w| parse_rational(w).ok_or_else(|| syntax(line, format!("invalid rational `{w}`"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(syntax(0, format!("expected {n} rows, found {}", rows.len())));
    }
    GramLattice::new(rows)
}

pub fn serialize_gram(l: &GramLattice) -> String {
    let mut out = format!("dim {}\n", l.dim());
    for row in l.rows() {
        let cells: Vec<String> = row.iter().map(format_rational).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
