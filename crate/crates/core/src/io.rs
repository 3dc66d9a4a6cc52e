//! Line-oriented text formats.
//!
//! ```text
//! p bip <nA> <nB> <m> <t>      n <id> <weight>      e <aid> <bid>
//! p split <nC> <nI> <m> <t>    n <id> <weight>      e <cid> <iid>
//! p hyp <n> <m> <t>            h <v1> ... <vt>
//! ```
//!
//! Weights are nonnegative integers or fractions `p/q`; unlisted weights
//! default to one. Blank lines and lines starting with `#` are ignored. Serialization
//! emits a normalized form: weight lines only for non-unit weights in id
//! order, edges sorted ascending.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Signed};
use thiserror::Error;

use crate::graph::{BipartiteGraph, GraphError, Hypergraph, Rational, SplitGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `p` header line")]
    MissingHeader,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("unexpected line: {0}")]
    UnexpectedLine(String),
    #[error("invalid integer `{0}`")]
    BadNumber(String),
    #[error("invalid weight `{0}`")]
    BadWeight(String),
    #[error("weight for vertex {0} given twice")]
    DuplicateWeight(VertexId),
    #[error("header declares {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

/// Any instance readable from a `p` header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Bipartite(BipartiteGraph),
    Split(SplitGraph),
    Hypergraph(Hypergraph),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Bipartite(_) => "bip",
            Instance::Split(_) => "split",
            Instance::Hypergraph(_) => "hyp",
        }
    }

    pub fn serialize(&self) -> String {
        match self {
            Instance::Bipartite(g) => serialize_bipartite(g),
            Instance::Split(h) => serialize_split(h),
            Instance::Hypergraph(hy) => serialize_hypergraph(hy),
        }
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }
}

impl<'a> Iterator for Lines<'a> {
    type Item = (usize, Vec<&'a str>);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Some((i + 1, line.split_whitespace().collect()));
        }
        None
    }
}

fn err(line: usize, kind: impl Into<ParseErrorKind>) -> ParseError {
    ParseError { line, kind: kind.into() }
}

fn number(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>().map_err(|_| err(line, ParseErrorKind::BadNumber(tok.to_string())))
}

pub fn parse_weight(tok: &str) -> Option<Rational> {
    let w = Rational::from_str(tok).ok()?;
    (!w.is_negative()).then_some(w)
}

fn header<'a>(lines: &mut Lines<'a>, kind: &str, arity: usize) -> Result<(usize, Vec<usize>), ParseError> {
    let (line, toks) = lines.next().ok_or_else(|| err(1, ParseErrorKind::MissingHeader))?;
    if toks[0] != "p" {
        return Err(err(line, ParseErrorKind::MissingHeader));
    }
    if toks.len() != arity + 2 || toks[1] != kind {
        return Err(err(line, ParseErrorKind::BadHeader(toks.join(" "))));
    }
    let values = toks[2..].iter().map(|t| number(line, t)).collect::<Result<Vec<_>, _>>()?;
    Ok((line, values))
}

/// A two-sided edge list with optional weight lines: shared by the `bip`
/// and `split` formats.
struct TwoSided {
    left: usize,
    right: usize,
    t: usize,
    edges: Vec<(VertexId, VertexId)>,
    weights: Vec<(VertexId, Rational)>,
}

fn parse_two_sided(text: &str, kind: &str) -> Result<TwoSided, ParseError> {
    let mut lines = Lines::new(text);
    let (header_line, h) = header(&mut lines, kind, 4)?;
    let (left, right, m, t) = (h[0], h[1], h[2], h[3]);
    if t < 3 {
        return Err(err(header_line, GraphError::ClawParameter(t)));
    }
    let n = left + right;
    let in_range = |line: usize, v: VertexId| {
        if v == 0 || v > n {
            Err(err(line, GraphError::VertexOutOfRange { v, max: n }))
        } else {
            Ok(v)
        }
    };
    let mut edges = Vec::with_capacity(m);
    let mut seen = BTreeSet::new();
    let mut weighted = BTreeSet::new();
    let mut weights = Vec::new();
    for (line, toks) in lines {
        match (toks[0], toks.len()) {
            ("e", 3) => {
                let a = in_range(line, number(line, toks[1])?)?;
                let b = in_range(line, number(line, toks[2])?)?;
                if a > left || b <= left {
                    return Err(err(line, GraphError::WrongSides { a, b }));
                }
                if !seen.insert((a, b)) {
                    return Err(err(line, GraphError::DuplicateEdge { a, b }));
                }
                edges.push((a, b));
            }
            ("n", 3) => {
                let v = in_range(line, number(line, toks[1])?)?;
                let w = Rational::from_str(toks[2])
                    .map_err(|_| err(line, ParseErrorKind::BadWeight(toks[2].to_string())))?;
                if w.is_negative() {
                    return Err(err(line, GraphError::NegativeWeight { v, weight: w }));
                }
                if !weighted.insert(v) {
                    return Err(err(line, ParseErrorKind::DuplicateWeight(v)));
                }
                weights.push((v, w));
            }
            _ => return Err(err(line, ParseErrorKind::UnexpectedLine(toks.join(" ")))),
        }
    }
    if edges.len() != m {
        return Err(err(header_line, ParseErrorKind::EdgeCount { expected: m, found: edges.len() }));
    }
    Ok(TwoSided { left, right, t, edges, weights })
}

pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph, ParseError> {
    let p = parse_two_sided(text, "bip")?;
    BipartiteGraph::new(p.left, p.right, p.t, p.edges).and_then(|g| g.with_weights(p.weights)).map_err(|e| err(1, e))
}

pub fn parse_split(text: &str) -> Result<SplitGraph, ParseError> {
    let p = parse_two_sided(text, "split")?;
    SplitGraph::new(p.left, p.right, p.t, p.edges).and_then(|h| h.with_weights(p.weights)).map_err(|e| err(1, e))
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, ParseError> {
    let mut lines = Lines::new(text);
    let (header_line, h) = header(&mut lines, "hyp", 3)?;
    let (n, m, t) = (h[0], h[1], h[2]);
    if t < 2 {
        return Err(err(header_line, GraphError::Uniformity(t)));
    }
    let mut hyperedges = Vec::with_capacity(m);
    let mut seen = BTreeSet::new();
    for (line, toks) in lines {
        if toks[0] != "h" {
            return Err(err(line, ParseErrorKind::UnexpectedLine(toks.join(" "))));
        }
        let index = hyperedges.len();
        let mut vs = toks[1..].iter().map(|tok| number(line, tok)).collect::<Result<Vec<_>, _>>()?;
        if vs.len() != t {
            return Err(err(line, GraphError::HyperedgeSize { index, found: vs.len(), expected: t }));
        }
        if let Some(&v) = vs.iter().find(|&&v| v == 0 || v > n) {
            return Err(err(line, GraphError::VertexOutOfRange { v, max: n }));
        }
        vs.sort_unstable();
        if vs.windows(2).any(|w| w[0] == w[1]) {
            return Err(err(line, GraphError::RepeatedVertex { index }));
        }
        if !seen.insert(vs.clone()) {
            return Err(err(line, GraphError::DuplicateHyperedge { index }));
        }
        hyperedges.push(vs);
    }
    if hyperedges.len() != m {
        return Err(err(header_line, ParseErrorKind::EdgeCount { expected: m, found: hyperedges.len() }));
    }
    Hypergraph::new(n, t, hyperedges).map_err(|e| err(1, e))
}

/// Parses any of the three formats, dispatching on the header.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let (line, toks) = Lines::new(text).next().ok_or_else(|| err(1, ParseErrorKind::MissingHeader))?;
    match (toks.first().copied(), toks.get(1).copied()) {
        (Some("p"), Some("bip")) => parse_bipartite(text).map(Instance::Bipartite),
        (Some("p"), Some("split")) => parse_split(text).map(Instance::Split),
        (Some("p"), Some("hyp")) => parse_hypergraph(text).map(Instance::Hypergraph),
        (Some("p"), _) => Err(err(line, ParseErrorKind::BadHeader(toks.join(" ")))),
        _ => Err(err(line, ParseErrorKind::MissingHeader)),
    }
}

fn write_weights(out: &mut String, ids: impl Iterator<Item = VertexId>, weight: impl Fn(VertexId) -> Rational) {
    for v in ids {
        let w = weight(v);
        if !w.is_one() {
            writeln!(out, "n {v} {w}").unwrap();
        }
    }
}

pub fn serialize_bipartite(g: &BipartiteGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p bip {} {} {} {}", g.n_a(), g.n_b(), g.edge_count(), g.t()).unwrap();
    write_weights(&mut out, g.vertices(), |v| g.weight(v).clone());
    for e in g.edges() {
        writeln!(out, "e {} {}", e.a, e.b).unwrap();
    }
    out
}

pub fn serialize_split(h: &SplitGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p split {} {} {} {}", h.n_c(), h.n_i(), h.cross_edges().len(), h.t()).unwrap();
    write_weights(&mut out, h.vertices(), |v| h.weight(v).clone());
    for e in h.cross_edges() {
        writeln!(out, "e {} {}", e.a, e.b).unwrap();
    }
    out
}

pub fn serialize_hypergraph(hy: &Hypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "p hyp {} {} {}", hy.n(), hy.edge_count(), hy.t()).unwrap();
    for h in hy.hyperedges() {
        out.push('h');
        for v in h {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Whitespace-separated vertex ids, as used by solution files.
pub fn parse_id_list(text: &str) -> Result<Vec<VertexId>, ParseError> {
    let mut ids = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        for tok in line.split_whitespace() {
            ids.push(number(i + 1, tok)?);
        }
    }
    Ok(ids)
}
