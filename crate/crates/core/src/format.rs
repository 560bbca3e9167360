//! Text formats.
//!
//! ```text
//! c comment
//! p hyp <n> <m> <k>      then m lines  e v1 ... vk
//! p gr <n> <m>           then m lines  e u v
//! p bip <nA> <nB> <m>    then m lines  e a b
//! ```
//!
//! Certificates are `triangle a b c`, `pair u v` and `keep a b` lines.
//! Vertices are 0-based. Repeated hyperedge lines encode multiplicity.

use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::bipartite::BipartiteGraph;
use crate::hypergraph::{Hypergraph, SimpleGraph, VertexId};
use crate::partition::{LuSubgraph, TriMatchingPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn number(&self) -> Result<usize, ParseError> {
        self.text.parse().map_err(|_| {
            self.error(format!(
                "expected a non-negative integer, found `{}`",
                self.text
            ))
        })
    }

    fn vertex(&self, n: usize) -> Result<usize, ParseError> {
        let v = self.number()?;
        if v >= n {
            return Err(self.error(format!("vertex {v} out of range (n = {n})")));
        }
        Ok(v)
    }
}

/// Content lines split into tokens, with comment and blank lines dropped.
fn lines(text: &str) -> impl Iterator<Item = Vec<Token<'_>>> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, ch) in line
            .char_indices()
            .chain(std::iter::once((line.len(), ' ')))
        {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &line[s..col],
                        line: i + 1,
                        column: s + 1,
                    });
                    start = None;
                }
                (false, None) => start = Some(col),
                _ => {}
            }
        }
        match tokens.first() {
            None => None,
            Some(t) if t.text == "c" => None,
            Some(_) => Some(tokens),
        }
    })
}

fn end_of_input(text: &str) -> ParseError {
    ParseError {
        line: text.lines().count() + 1,
        column: 1,
        message: "unexpected end of input".into(),
    }
}

/// Splits off the header; checks its kind and arity.
fn header<'a>(
    text: &'a str,
    kind: &str,
    fields: usize,
) -> Result<(Vec<usize>, Vec<Vec<Token<'a>>>), ParseError> {
    let mut it = lines(text);
    let head = it.next().ok_or_else(|| end_of_input(text))?;
    if head[0].text != "p" {
        return Err(head[0].error("expected problem line `p ...`"));
    }
    match head.get(1) {
        Some(t) if t.text == kind => {}
        Some(t) => return Err(t.error(format!("expected format `{kind}`, found `{}`", t.text))),
        None => return Err(head[0].error("missing format name")),
    }
    if head.len() != 2 + fields {
        return Err(head[0].error(format!("`p {kind}` takes {fields} numbers")));
    }
    let nums = head[2..]
        .iter()
        .map(Token::number)
        .collect::<Result<_, _>>()?;
    Ok((nums, it.collect()))
}

fn edge_lines<'a>(
    text: &str,
    body: &[Vec<Token<'a>>],
    m: usize,
    arity: usize,
) -> Result<Vec<Vec<Token<'a>>>, ParseError> {
    let mut out = Vec::with_capacity(m);
    for tokens in body {
        if tokens[0].text != "e" {
            return Err(tokens[0].error(format!("expected `e`, found `{}`", tokens[0].text)));
        }
        if out.len() == m {
            return Err(tokens[0].error(format!("more than the declared {m} edge lines")));
        }
        if tokens.len() != 1 + arity {
            return Err(tokens[0].error(format!(
                "edge line needs {arity} vertices, found {}",
                tokens.len() - 1
            )));
        }
        out.push(tokens[1..].to_vec());
    }
    if out.len() < m {
        return Err(ParseError {
            message: format!("declared {m} edge lines, found {}", out.len()),
            ..end_of_input(text)
        });
    }
    Ok(out)
}

/// A parsed hypergraph file and its declared uniformity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergraphFile {
    pub hypergraph: Hypergraph,
    pub k: usize,
}

pub fn parse_hypergraph(text: &str) -> Result<HypergraphFile, ParseError> {
    let (nums, body) = header(text, "hyp", 3)?;
    let (n, m, k) = (nums[0], nums[1], nums[2]);
    if k == 0 {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "k must be positive".into(),
        });
    }
    let mut edges = Vec::with_capacity(m);
    for toks in edge_lines(text, &body, m, k)? {
        let mut e = Vec::with_capacity(k);
        for t in &toks {
            let v = t.vertex(n)?;
            if e.contains(&v) {
                return Err(t.error(format!("vertex {v} repeated in hyperedge")));
            }
            e.push(v);
        }
        edges.push(e);
    }
    let hypergraph = Hypergraph::new(n, edges).expect("entries checked");
    Ok(HypergraphFile { hypergraph, k })
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph, ParseError> {
    let (nums, body) = header(text, "gr", 2)?;
    let (n, m) = (nums[0], nums[1]);
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    for toks in edge_lines(text, &body, m, 2)? {
        let (u, v) = (toks[0].vertex(n)?, toks[1].vertex(n)?);
        if u == v {
            return Err(toks[1].error("loop"));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(toks[0].error(format!("parallel edge {u}-{v}")));
        }
        edges.push((u, v));
    }
    Ok(SimpleGraph::new(n, &edges).expect("entries checked"))
}

pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph, ParseError> {
    let (nums, body) = header(text, "bip", 3)?;
    let (n_a, n_b, m) = (nums[0], nums[1], nums[2]);
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    for toks in edge_lines(text, &body, m, 2)? {
        let (a, b) = (toks[0].vertex(n_a)?, toks[1].vertex(n_b)?);
        if !seen.insert((a, b)) {
            return Err(toks[0].error(format!("parallel edge ({a}, {b})")));
        }
        edges.push((a, b));
    }
    Ok(BipartiteGraph::new(n_a, n_b, &edges).expect("entries checked"))
}

/// Blocks read from a certificate file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    pub triangles: Vec<[VertexId; 3]>,
    pub pairs: Vec<(VertexId, VertexId)>,
    pub keep: Vec<(usize, usize)>,
}

pub fn parse_certificate(text: &str) -> Result<Certificate, ParseError> {
    let mut cert = Certificate::default();
    for toks in lines(text) {
        let arity = match toks[0].text {
            "triangle" => 3,
            "pair" | "keep" => 2,
            other => return Err(toks[0].error(format!("unknown certificate line `{other}`"))),
        };
        if toks.len() != 1 + arity {
            return Err(toks[0].error(format!("`{}` takes {arity} vertices", toks[0].text)));
        }
        let v = toks[1..]
            .iter()
            .map(Token::number)
            .collect::<Result<Vec<_>, _>>()?;
        match toks[0].text {
            "triangle" => cert.triangles.push([v[0], v[1], v[2]]),
            "pair" => cert.pairs.push((v[0], v[1])),
            _ => cert.keep.push((v[0], v[1])),
        }
    }
    Ok(cert)
}

pub fn write_hypergraph(h: &Hypergraph, k: usize) -> String {
    let mut out = format!("p hyp {} {} {}\n", h.n(), h.total_multiplicity(), k);
    for (e, mult) in h.iter() {
        let line: Vec<String> = e.iter().map(usize::to_string).collect();
        for _ in 0..mult {
            writeln!(out, "e {}", line.join(" ")).unwrap();
        }
    }
    out
}

pub fn write_graph(g: &SimpleGraph) -> String {
    let mut out = format!("p gr {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

pub fn write_bipartite(g: &BipartiteGraph) -> String {
    let mut out = format!("p bip {} {} {}\n", g.n_a(), g.n_b(), g.m());
    for (a, b) in g.edges() {
        writeln!(out, "e {a} {b}").unwrap();
    }
    out
}

enum Block {
    Triangle([VertexId; 3]),
    Pair(VertexId, VertexId),
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Triangle([a, b, c]) => write!(f, "triangle {a} {b} {c}"),
            Block::Pair(u, v) => write!(f, "pair {u} {v}"),
        }
    }
}

/// Certificate text for one or more partitions; blocks sorted by smallest member.
pub fn write_partitions<'a>(parts: impl IntoIterator<Item = &'a TriMatchingPartition>) -> String {
    let mut blocks: Vec<(VertexId, Block)> = Vec::new();
    for p in parts {
        if let Some(t) = p.triangle() {
            blocks.push((t[0], Block::Triangle(t)));
        }
        blocks.extend(p.pairs().iter().map(|&(u, v)| (u, Block::Pair(u, v))));
    }
    blocks.sort_by_key(|(first, _)| *first);
    let mut out = String::new();
    for (_, b) in blocks {
        writeln!(out, "{b}").unwrap();
    }
    out
}

pub fn write_lu(lu: &LuSubgraph) -> String {
    let mut out = String::new();
    for &(a, b) in &lu.kept {
        writeln!(out, "keep {a} {b}").unwrap();
    }
    out
}

/// Single-object JSON form of a certificate. Field order is fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateJson {
    pub kind: &'static str,
    pub triangle: Option<[VertexId; 3]>,
    pub pairs: Vec<[VertexId; 2]>,
    pub keep: Vec<[usize; 2]>,
}

impl From<&TriMatchingPartition> for CertificateJson {
    fn from(p: &TriMatchingPartition) -> Self {
        CertificateJson {
            kind: p.kind(),
            triangle: p.triangle(),
            pairs: p.pairs().iter().map(|&(u, v)| [u, v]).collect(),
            keep: Vec::new(),
        }
    }
}

impl From<&LuSubgraph> for CertificateJson {
    fn from(lu: &LuSubgraph) -> Self {
        CertificateJson {
            kind: "lu-subgraph",
            triangle: None,
            pairs: Vec::new(),
            keep: lu.kept.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl CertificateJson {
    pub fn to_line(&self) -> String {
        let mut s = serde_json::to_string(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}
