//! Text formats for graphs and colorings.
//!
//! * Edge list: first line `n m`, then `m` lines `u v` with 0-based
//!   vertices. Written with `u < v` in ascending order.
//! * DIMACS: `p edge n m`, then `e u v` lines with 1-based vertices.
//!   Vertex labels travel as comment lines `c label <v> <name>`; any other
//!   `c` line is ignored.
//! * Coloring: header `k <int>`, then one line `v c` per vertex (0-based
//!   vertex, 1-based color).
//!
//! Blank lines and lines starting with `#` are skipped in the edge-list
//! and coloring formats. Parse errors carry 1-based line and column.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{locating_signature, nl_signature, Color, Coloring, LocatingSignature, NlSignature, Verdict, VerifyError};
use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dimacs,
}

impl GraphFormat {
    /// `.col` and `.dimacs` files are DIMACS; everything else is an edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("col" | "dimacs") => GraphFormat::Dimacs,
            _ => GraphFormat::EdgeList,
        }
    }
}

/// A whitespace-separated token with its 1-based column.
struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    end: usize,
}

impl<'a> Line<'a> {
    fn new(number: usize, raw: &'a str) -> Self {
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, ch) in raw.char_indices().chain([(raw.len(), ' ')]) {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    tokens.push(Token { text: &raw[s..i], column: raw[..s].chars().count() + 1 });
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        Line { number, tokens, end: raw.chars().count() + 1 }
    }

    fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.number, column, message: message.into() }
    }

    fn expect_len(&self, len: usize, what: &str) -> Result<(), ParseError> {
        match self.tokens.get(len) {
            Some(extra) => Err(self.error(extra.column, format!("unexpected token {:?} after {what}", extra.text))),
            None if self.tokens.len() < len => Err(self.error(self.end, format!("incomplete {what}"))),
            None => Ok(()),
        }
    }

    fn number(&self, index: usize, what: &str) -> Result<usize, ParseError> {
        let token = self.tokens.get(index).ok_or_else(|| self.error(self.end, format!("missing {what}")))?;
        token
            .text
            .parse()
            .map_err(|_| self.error(token.column, format!("expected a non-negative integer for {what}, found {:?}", token.text)))
    }

    fn column(&self, index: usize) -> usize {
        self.tokens.get(index).map_or(self.end, |t| t.column)
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().map(|(i, raw)| Line::new(i + 1, raw)).filter(|l| l.tokens.first().is_some_and(|t| !t.text.starts_with('#')))
}

fn end_of_input(text: &str) -> ParseError {
    ParseError { line: text.lines().count().max(1), column: 1, message: "unexpected end of input".into() }
}

fn graph_error(line: &Line, column: usize, e: GraphError) -> ParseError {
    line.error(column, e.to_string())
}

/// Collects an edge whose endpoints are tokens `first` and `first + 1`,
/// rejecting repeats so that re-writing is byte-exact.
fn push_edge(
    seen: &mut BTreeSet<(Vertex, Vertex)>,
    line: &Line,
    n: usize,
    (u, v): (Vertex, Vertex),
    first: usize,
) -> Result<(), ParseError> {
    for (index, w) in [(first, u), (first + 1, v)] {
        if w >= n {
            return Err(graph_error(line, line.column(index), GraphError::VertexOutOfRange { vertex: w, n }));
        }
    }
    if u == v {
        return Err(graph_error(line, line.column(first), GraphError::SelfLoop(u)));
    }
    if !seen.insert((u.min(v), u.max(v))) {
        return Err(line.error(line.column(first), format!("duplicate edge ({u}, {v})")));
    }
    Ok(())
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let header = lines.next().ok_or_else(|| end_of_input(text))?;
    let n = header.number(0, "vertex count")?;
    let m = header.number(1, "edge count")?;
    header.expect_len(2, "header `n m`")?;
    let mut seen = BTreeSet::new();
    for line in lines {
        if seen.len() == m {
            return Err(line.error(1, format!("more than the {m} edges announced in the header")));
        }
        let edge = (line.number(0, "first endpoint")?, line.number(1, "second endpoint")?);
        line.expect_len(2, "edge `u v`")?;
        push_edge(&mut seen, &line, n, edge, 0)?;
    }
    if seen.len() < m {
        return Err(ParseError { line: text.lines().count().max(1), column: 1, message: format!("header announces {m} edges, found {}", seen.len()) });
    }
    Ok(Graph::new(n, seen).expect("edges validated"))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut size: Option<(usize, usize)> = None;
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = Line::new(i + 1, raw);
        last_line = line.number;
        let Some(first) = line.tokens.first() else { continue };
        match first.text {
            "c" => {
                if line.tokens.get(1).map(|t| t.text) != Some("label") {
                    continue;
                }
                let Some((n, _)) = size else { return Err(line.error(1, "label before the `p edge` line")) };
                let v = line.number(2, "labelled vertex")?;
                if v == 0 || v > n {
                    return Err(line.error(line.column(2), format!("vertex {v} out of range 1..={n}")));
                }
                let name = line.tokens.get(3).ok_or_else(|| line.error(line.end, "missing label text"))?;
                let text = raw[raw.char_indices().nth(name.column - 1).map_or(raw.len(), |(b, _)| b)..].trim_end();
                if labels[v - 1].replace(text.to_string()).is_some() {
                    return Err(line.error(line.column(2), format!("vertex {v} is labelled twice")));
                }
            }
            "p" => {
                if size.is_some() {
                    return Err(line.error(1, "second problem line"));
                }
                if line.tokens.get(1).map(|t| t.text) != Some("edge") {
                    return Err(line.error(line.column(1), "expected `p edge n m`"));
                }
                let n = line.number(2, "vertex count")?;
                let m = line.number(3, "edge count")?;
                line.expect_len(4, "problem line `p edge n m`")?;
                size = Some((n, m));
                labels = vec![None; n];
            }
            "e" => {
                let Some((n, m)) = size else { return Err(line.error(1, "edge before the `p edge` line")) };
                let (u, v) = (line.number(1, "first endpoint")?, line.number(2, "second endpoint")?);
                line.expect_len(3, "edge line `e u v`")?;
                for (index, w) in [(1, u), (2, v)] {
                    if w == 0 {
                        return Err(line.error(line.column(index), "DIMACS vertices are 1-based"));
                    }
                }
                if seen.len() == m {
                    return Err(line.error(1, format!("more than the {m} edges announced")));
                }
                push_edge(&mut seen, &line, n, (u - 1, v - 1), 1)?;
            }
            other => return Err(line.error(first.column, format!("unknown line type {other:?}"))),
        }
    }
    let Some((n, m)) = size else { return Err(end_of_input(text)) };
    if seen.len() < m {
        return Err(ParseError { line: last_line.max(1), column: 1, message: format!("problem line announces {m} edges, found {}", seen.len()) });
    }
    Graph::new(n, seen).expect("edges validated").with_labels(labels).map_err(|e| ParseError { line: 1, column: 1, message: e.to_string() })
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (v, label) in g.labels().iter().enumerate() {
        if let Some(label) = label {
            writeln!(out, "c label {} {label}", v + 1).expect("writing to a String");
        }
    }
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).expect("writing to a String");
    }
    out
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, ParseError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Dimacs => parse_dimacs(text),
    }
}

pub fn write_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => write_edge_list(g),
        GraphFormat::Dimacs => write_dimacs(g),
    }
}

/// Parses a coloring of a graph on `n` vertices. Every vertex must appear
/// exactly once with a color in `1..=k`.
pub fn parse_coloring(text: &str, n: usize) -> Result<Coloring, ParseError> {
    let mut lines = content_lines(text);
    let header = lines.next().ok_or_else(|| end_of_input(text))?;
    if header.tokens[0].text != "k" {
        return Err(header.error(header.tokens[0].column, "expected header `k <int>`"));
    }
    let k = header.number(1, "palette size")?;
    header.expect_len(2, "header `k <int>`")?;
    let k = Color::try_from(k).map_err(|_| header.error(header.column(1), "palette size too large"))?;
    let mut colors = vec![0 as Color; n];
    for line in lines {
        let v = line.number(0, "vertex")?;
        let c = line.number(1, "color")?;
        line.expect_len(2, "assignment `v c`")?;
        if v >= n {
            return Err(line.error(line.column(0), format!("vertex {v} out of range for a graph on {n} vertices")));
        }
        if c == 0 || c > k as usize {
            return Err(line.error(line.column(1), format!("color {c} outside the palette 1..={k}")));
        }
        if colors[v] != 0 {
            return Err(line.error(line.column(0), format!("vertex {v} is colored twice")));
        }
        colors[v] = c as Color;
    }
    if let Some(v) = colors.iter().position(|&c| c == 0) {
        return Err(ParseError { line: text.lines().count().max(1), column: 1, message: format!("vertex {v} has no color") });
    }
    Ok(Coloring::new(colors, k).expect("colors validated"))
}

pub fn write_coloring(f: &Coloring) -> String {
    let mut out = format!("k {}\n", f.k());
    for (v, c) in f.colors().iter().enumerate() {
        writeln!(out, "{v} {c}").expect("writing to a String");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub u: Vertex,
    pub v: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Signatures {
    NeighborLocating(Vec<NlSignature>),
    Locating(Vec<LocatingSignature>),
}

/// JSON shape of a verification result: `{status, witness, signatures?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub status: Status,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signatures: Option<Signatures>,
}

impl VerifyReport {
    pub fn from_verdict(verdict: Verdict) -> Self {
        let (status, witness) = match verdict {
            Verdict::Ok => (Status::Ok, None),
            Verdict::Violation { u, v } => (Status::Violation, Some(Witness { u, v })),
        };
        VerifyReport { status, witness, signatures: None }
    }

    pub fn with_nl_signatures(mut self, g: &Graph, f: &Coloring) -> Self {
        self.signatures = Some(Signatures::NeighborLocating(g.vertices().map(|v| nl_signature(g, f, v)).collect()));
        self
    }

    pub fn with_locating_signatures(mut self, g: &Graph, f: &Coloring) -> Result<Self, VerifyError> {
        let sigs = g.vertices().map(|v| locating_signature(g, f, v)).collect::<Result<_, _>>()?;
        self.signatures = Some(Signatures::Locating(sigs));
        Ok(self)
    }
}
