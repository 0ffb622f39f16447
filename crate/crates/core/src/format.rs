//! Text formats.
//!
//! Degree sequences: one per line, whitespace-separated decimal integers.
//!
//! Graphs: a header `graph n=<n> m=<m>`, then `m` lines `u v` with `u < v`;
//! consecutive graphs are separated by a blank line. The JSON-lines variant
//! holds one `{"n":…,"edges":[[u,v],…]}` object per line.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::LabeledGraph;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_sequence_line(text: &str, line: usize) -> Result<Vec<i64>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| parse_error(line, format!("not an integer: {tok:?}")))
        })
        .collect()
}

/// Every nonblank line as a raw sequence, tagged with its 1-based line number.
pub fn parse_sequences(text: &str) -> Result<Vec<(usize, Vec<i64>)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| parse_sequence_line(l, k + 1).map(|s| (k + 1, s)))
        .collect()
}

pub fn write_graph<W: Write + ?Sized>(out: &mut W, g: &LabeledGraph) -> io::Result<()> {
    writeln!(out, "graph n={} m={}", g.node_count(), g.edge_count())?;
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

fn header_field(tok: Option<&str>, key: &str, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_error(line, format!("missing {key}=")))?;
    tok.strip_prefix(key)
        .and_then(|v| v.strip_prefix('='))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| parse_error(line, format!("expected {key}=<count>, got {tok:?}")))
}

/// Parses a stream of graph blocks.
pub fn parse_graphs(text: &str) -> Result<Vec<LabeledGraph>> {
    let mut graphs = Vec::new();
    let mut lines = text.lines().enumerate().peekable();
    loop {
        while matches!(lines.peek(), Some((_, l)) if l.trim().is_empty()) {
            lines.next();
        }
        let Some((k, header)) = lines.next() else {
            break;
        };
        let line = k + 1;
        let mut toks = header.split_whitespace();
        if toks.next() != Some("graph") {
            return Err(parse_error(line, "expected `graph n=<n> m=<m>`"));
        }
        let n = header_field(toks.next(), "n", line)?;
        let m = header_field(toks.next(), "m", line)?;
        if toks.next().is_some() {
            return Err(parse_error(line, "trailing tokens after header"));
        }
        let mut edges = Vec::with_capacity(m.min(1 << 16));
        for _ in 0..m {
            let (k, text) = lines
                .next()
                .ok_or_else(|| parse_error(line, format!("expected {m} edges")))?;
            let pair: Vec<&str> = text.split_whitespace().collect();
            let parsed = match pair.as_slice() {
                [u, v] => u.parse::<usize>().ok().zip(v.parse::<usize>().ok()),
                _ => None,
            };
            let (u, v) =
                parsed.ok_or_else(|| parse_error(k + 1, format!("bad edge line {text:?}")))?;
            if u >= v {
                return Err(parse_error(k + 1, "edge must satisfy u < v"));
            }
            edges.push((u, v));
        }
        let graph =
            LabeledGraph::from_edges(n, edges).map_err(|e| parse_error(line, e.to_string()))?;
        graphs.push(graph);
        if let Some((k, l)) = lines.peek() {
            if !l.trim().is_empty() {
                return Err(parse_error(k + 1, "expected blank line between graphs"));
            }
        }
    }
    Ok(graphs)
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphRecord {
    n: usize,
    edges: Vec<[usize; 2]>,
}

pub fn graph_to_json(g: &LabeledGraph) -> String {
    let record = GraphRecord {
        n: g.node_count(),
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&record).expect("plain record serializes")
}

pub fn parse_graph_json(text: &str) -> Result<LabeledGraph> {
    let record: GraphRecord =
        serde_json::from_str(text).map_err(|e| parse_error(1, e.to_string()))?;
    LabeledGraph::from_edges(record.n, record.edges.into_iter().map(|[u, v]| (u, v)))
        .map_err(|e| parse_error(1, e.to_string()))
}

/// `i:j1,j2,...` (the list may be empty).
pub fn parse_forbid(text: &str) -> Result<(usize, Vec<usize>)> {
    let (focal, rest) = text
        .split_once(':')
        .ok_or_else(|| parse_error(1, "expected i:j1,j2,..."))?;
    let label = |tok: &str| {
        tok.trim()
            .parse::<usize>()
            .ok()
            .filter(|&l| l > 0)
            .ok_or_else(|| parse_error(1, format!("bad node label {tok:?}")))
    };
    let focal = label(focal)?;
    let members = if rest.trim().is_empty() {
        Vec::new()
    } else {
        rest.split(',').map(label).collect::<Result<Vec<_>>>()?
    };
    Ok((focal, members))
}
