//! Hardness constructions as instance transformers with solution maps.
//!
//! Constructed bipartite graphs keep the A-side-first id layout, so the
//! preserved vertices of a source instance usually land on the B side at a
//! fixed offset. A [`ReductionMap`] records every id range by name.
//!
//! Sidecar format:
//!
//! ```text
//! map <kind>
//! src <vertices> <edges>
//! keep <name> <from> <to>
//! g <name> <from> <to>
//! offset <k>
//! flag <word> ...
//! ```

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{BipartiteGraph, GraphError, Hypergraph, SplitGraph, VertexId, VertexSet};
use crate::oracle::{self, OracleLimits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    HvcOsbcd,
    OsbcdSplit,
    SplitOsbcd,
    VcDense,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 4] =
        [ReductionKind::HvcOsbcd, ReductionKind::OsbcdSplit, ReductionKind::SplitOsbcd, ReductionKind::VcDense];

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::HvcOsbcd => "hvc-osbcd",
            ReductionKind::OsbcdSplit => "osbcd-split",
            ReductionKind::SplitOsbcd => "split-osbcd",
            ReductionKind::VcDense => "vc-dense",
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReductionKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown reduction `{s}`"))
    }
}

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("input graph is not regular")]
    NotRegular,
    #[error("input graph is {found}-regular, expected {expected}-regular")]
    WrongDegree { expected: usize, found: usize },
    #[error("expected a simple graph (uniformity 2), found uniformity {0}")]
    NotAGraph(usize),
    #[error("non-canonical solution: vertex {0} is outside the preserved vertices")]
    NonCanonical(VertexId),
    #[error("non-canonical solution: pad vertex {0} is missing")]
    MissingPad(VertexId),
    #[error("vertex {v} out of range 1..={max}")]
    OutOfRange { v: VertexId, max: usize },
    #[error("map line {line}: {msg}")]
    BadMap { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A named inclusive id range in the constructed instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub name: String,
    pub from: VertexId,
    pub to: VertexId,
}

impl Group {
    fn new(name: impl Into<String>, from: VertexId, len: usize) -> Self {
        Group { name: name.into(), from, to: from + len - 1 }
    }

    pub fn len(&self) -> usize {
        self.to + 1 - self.from
    }

    pub fn is_empty(&self) -> bool {
        self.to < self.from
    }

    pub fn contains(&self, v: VertexId) -> bool {
        (self.from..=self.to).contains(&v)
    }

    pub fn ids(&self) -> impl Iterator<Item = VertexId> {
        self.from..=self.to
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SourceSize {
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMap {
    pub kind: ReductionKind,
    pub source: SourceSize,
    /// Where source vertices `1..=source.vertices` sit, in order.
    pub preserved: Option<Group>,
    /// Constructed vertices beyond the preserved ones, in id order.
    pub groups: Vec<Group>,
    /// Gap between optimal values of the constructed and source instances.
    pub offset: usize,
    pub flags: Vec<String>,
}

impl ReductionMap {
    fn new(kind: ReductionKind, vertices: usize, edges: usize) -> Self {
        ReductionMap {
            kind,
            source: SourceSize { vertices, edges },
            preserved: None,
            groups: Vec::new(),
            offset: 0,
            flags: Vec::new(),
        }
    }

    pub fn group(&self, name: &str) -> Option<&Group> {
        self.groups.iter().find(|g| g.name == name)
    }

    pub fn has_flag(&self, word: &str) -> bool {
        self.flags.iter().any(|f| f.split_whitespace().next() == Some(word))
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "map {}", self.kind).unwrap();
        writeln!(out, "src {} {}", self.source.vertices, self.source.edges).unwrap();
        if let Some(k) = &self.preserved {
            writeln!(out, "keep {} {} {}", k.name, k.from, k.to).unwrap();
        }
        for g in &self.groups {
            writeln!(out, "g {} {} {}", g.name, g.from, g.to).unwrap();
        }
        writeln!(out, "offset {}", self.offset).unwrap();
        for f in &self.flags {
            writeln!(out, "flag {f}").unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ReductionError> {
        let mut map: Option<ReductionMap> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let bad = |msg: &str| ReductionError::BadMap { line, msg: msg.to_string() };
            let toks: Vec<&str> = raw.split_whitespace().collect();
            if toks.is_empty() || toks[0].starts_with('#') {
                continue;
            }
            let num = |tok: &str| tok.parse::<usize>().map_err(|_| bad(&format!("invalid integer `{tok}`")));
            if toks[0] == "map" {
                if map.is_some() || toks.len() != 2 {
                    return Err(bad("malformed `map` line"));
                }
                let kind = toks[1].parse().map_err(|e: String| bad(&e))?;
                map = Some(ReductionMap::new(kind, 0, 0));
                continue;
            }
            let m = map.as_mut().ok_or_else(|| bad("missing `map` line"))?;
            match (toks[0], toks.len()) {
                ("src", 3) => m.source = SourceSize { vertices: num(toks[1])?, edges: num(toks[2])? },
                ("keep" | "g", 4) => {
                    let (from, to) = (num(toks[2])?, num(toks[3])?);
                    if from == 0 || to < from {
                        return Err(bad("empty or invalid id range"));
                    }
                    let g = Group { name: toks[1].to_string(), from, to };
                    if toks[0] == "keep" {
                        m.preserved = Some(g);
                    } else {
                        m.groups.push(g);
                    }
                }
                ("offset", 2) => m.offset = num(toks[1])?,
                ("flag", n) if n >= 2 => m.flags.push(toks[1..].join(" ")),
                _ => return Err(bad(&format!("unexpected line: {}", raw.trim()))),
            }
        }
        map.ok_or(ReductionError::BadMap { line: 0, msg: "missing `map` line".to_string() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Edge gadgets `e^1..e^n` for every hyperedge, attached to the hyperedge's
/// vertices. Copy `i` of hyperedge `j` (both 1-based) gets id
/// `(i - 1) * m + j`; vertex `v` of the hypergraph gets id `m * n + v`.
pub fn hvc_to_osbcd(hy: &Hypergraph) -> Result<(BipartiteGraph, ReductionMap), ReductionError> {
    let (n, m) = (hy.n(), hy.edge_count());
    let n_a = n * m;
    let mut edges = Vec::with_capacity(n_a * hy.t());
    for i in 0..n {
        for (j, e) in hy.hyperedges().iter().enumerate() {
            let a = i * m + j + 1;
            edges.extend(e.iter().map(|&v| (a, n_a + v)));
        }
    }
    let g = BipartiteGraph::new(n_a, n, hy.t(), edges)?;
    let mut map = ReductionMap::new(ReductionKind::HvcOsbcd, n, m);
    if n > 0 {
        map.preserved = Some(Group::new("V", n_a + 1, n));
    }
    if m > 0 {
        map.groups = (1..=n).map(|i| Group::new(format!("e^{i}"), (i - 1) * m + 1, m)).collect();
    }
    if let Some(j) = (0..m).find(|&j| !hy.has_disjoint_counterpart(j)) {
        map.flags.push(format!("no-disjoint-counterpart {}", j + 1));
    }
    Ok((g, map))
}

// A clique leaf d can join a claw at clique center c exactly when c has t - 1
// independent neighbors outside N(d).
fn clique_leaf_claw(h: &SplitGraph) -> Option<(VertexId, VertexId)> {
    let need = h.t() - 1;
    h.clique_side().flat_map(|c| h.clique_side().filter(move |&d| d != c).map(move |d| (c, d))).find(|&(c, d)| {
        let nd = h.cross_neighbors(d);
        h.cross_neighbors(c).iter().filter(|b| nd.binary_search(b).is_err()).count() >= need
    })
}

/// Completes the A side to a clique. Ids are unchanged.
pub fn osbcd_to_split(g: &BipartiteGraph) -> (SplitGraph, ReductionMap) {
    let cross = g.edges().iter().map(|e| (e.a, e.b));
    let h = SplitGraph::new(g.n_a(), g.n_b(), g.t(), cross)
        .and_then(|h| h.with_weights(g.vertices().map(|v| (v, g.weight(v).clone()))))
        .expect("a valid bipartite graph has a valid split completion");
    let map = identity_map(ReductionKind::OsbcdSplit, g.vertex_count(), g.edge_count(), &h);
    (h, map)
}

/// Drops the implicit clique edges. Ids are unchanged.
pub fn split_to_osbcd(h: &SplitGraph) -> (BipartiteGraph, ReductionMap) {
    let cross = h.cross_edges().iter().map(|e| (e.a, e.b));
    let g = BipartiteGraph::new(h.n_c(), h.n_i(), h.t(), cross)
        .and_then(|g| g.with_weights(h.vertices().map(|v| (v, h.weight(v).clone()))))
        .expect("a valid split graph has a valid bipartite shadow");
    let map = identity_map(ReductionKind::SplitOsbcd, h.vertex_count(), h.cross_edges().len(), h);
    (g, map)
}

fn identity_map(kind: ReductionKind, n: usize, m: usize, h: &SplitGraph) -> ReductionMap {
    let mut map = ReductionMap::new(kind, n, m);
    if n > 0 {
        map.preserved = Some(Group::new("V", 1, n));
    }
    if let Some((c, d)) = clique_leaf_claw(h) {
        map.flags.push(format!("clique-leaf-claw {c} {d}"));
    }
    map
}

/// Number of extra copies of `V` and the pad size for claw parameter `t`.
pub fn dense_parameters(t: usize) -> (usize, usize) {
    let x = (t / 2).saturating_sub(1);
    let pad = if t.is_multiple_of(2) { t - 2 } else { t - 1 };
    (x, pad)
}

/// Dense construction from a simple `t`-regular graph `G = (V, E)` given as a
/// 2-uniform hypergraph, `n = |V|`, `m = |E|`.
///
/// A side: `2n` copies of `E` (`E`, `E^1`, ...), copy `k` of edge `j` at id
/// `k * m + j`. B side after the A side: `V`, then `V^1..V^x`, then `P`.
/// Every A-vertex sees both endpoints of its edge in every copy of `V` and
/// all of `P`, giving degree `2(t - 1)`.
pub fn vc_to_dense_osbcd(graph: &Hypergraph, t: usize) -> Result<(BipartiteGraph, ReductionMap), ReductionError> {
    vc_to_dense_osbcd_with(graph, t, &OracleLimits::default())
}

pub fn vc_to_dense_osbcd_with(
    graph: &Hypergraph,
    t: usize,
    limits: &OracleLimits,
) -> Result<(BipartiteGraph, ReductionMap), ReductionError> {
    if graph.t() != 2 {
        return Err(ReductionError::NotAGraph(graph.t()));
    }
    match graph.regular_degree() {
        None => return Err(ReductionError::NotRegular),
        Some(d) if d != t => return Err(ReductionError::WrongDegree { expected: t, found: d }),
        Some(_) => {}
    }
    if t < 3 {
        return Err(GraphError::ClawParameter(t).into());
    }
    let (n, m) = (graph.n(), graph.edge_count());
    let (x, pad) = dense_parameters(t);
    let n_a = 2 * n * m;
    let n_b = n * (x + 1) + pad;
    let pad_from = n_a + n * (x + 1) + 1;
    let mut edges = Vec::with_capacity(n_a * 2 * (t - 1));
    for k in 0..2 * n {
        for (j, e) in graph.hyperedges().iter().enumerate() {
            let a = k * m + j + 1;
            for copy in 0..=x {
                edges.extend(e.iter().map(|&v| (a, n_a + copy * n + v)));
            }
            edges.extend((pad_from..pad_from + pad).map(|p| (a, p)));
        }
    }
    let g = BipartiteGraph::new(n_a, n_b, t, edges)?;

    let mut map = ReductionMap::new(ReductionKind::VcDense, n, m);
    map.offset = pad;
    if n > 0 {
        map.preserved = Some(Group::new("V", n_a + 1, n));
    }
    if m > 0 {
        map.groups.push(Group::new("E", 1, m));
        map.groups.extend((1..2 * n).map(|k| Group::new(format!("E^{k}"), k * m + 1, m)));
    }
    if n > 0 {
        map.groups.extend((1..=x).map(|i| Group::new(format!("V^{i}"), n_a + i * n + 1, n)));
    }
    map.groups.push(Group::new("P", pad_from, pad));

    match oracle::exact_min_vc_graph_with(graph, limits) {
        Ok((_, vc)) if vc <= pad => map.flags.push(format!("vc-not-above-pad {vc} {pad}")),
        Ok(_) => {}
        Err(_) => map.flags.push("vc-unchecked".to_string()),
    }
    Ok((g, map))
}

fn in_range(s: &VertexSet, max: usize) -> Result<(), ReductionError> {
    match s.iter().find(|&v| v == 0 || v > max) {
        Some(v) => Err(ReductionError::OutOfRange { v, max }),
        None => Ok(()),
    }
}

/// Carries a solution across a reduction. Backward maps accept only the
/// canonical form: preserved vertices, plus all of `P` for the dense map.
pub fn map_solution(map: &ReductionMap, direction: Direction, s: &VertexSet) -> Result<VertexSet, ReductionError> {
    let n = map.source.vertices;
    let keep_from = map.preserved.as_ref().map_or(1, |k| k.from);
    let pad = map.group("P").filter(|p| !p.is_empty());
    match (map.kind, direction) {
        (ReductionKind::OsbcdSplit | ReductionKind::SplitOsbcd, _) => {
            in_range(s, n)?;
            Ok(s.clone())
        }
        (ReductionKind::HvcOsbcd | ReductionKind::VcDense, Direction::Forward) => {
            in_range(s, n)?;
            let mut out: VertexSet = s.iter().map(|v| v + keep_from - 1).collect();
            if let Some(p) = pad {
                out.extend(p.ids());
            }
            Ok(out)
        }
        (ReductionKind::HvcOsbcd | ReductionKind::VcDense, Direction::Backward) => {
            if let Some(p) = pad {
                if let Some(missing) = p.ids().find(|&v| !s.contains(v)) {
                    return Err(ReductionError::MissingPad(missing));
                }
            }
            let mut out = VertexSet::new();
            for v in s.iter() {
                if (keep_from..keep_from + n).contains(&v) {
                    out.insert(v + 1 - keep_from);
                } else if !pad.is_some_and(|p| p.contains(v)) {
                    return Err(ReductionError::NonCanonical(v));
                }
            }
            Ok(out)
        }
    }
}
