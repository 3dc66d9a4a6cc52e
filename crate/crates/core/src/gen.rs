//! Seeded instance generators.
//!
//! Every family draws from `ChaCha8Rng::seed_from_u64(seed)` (rand_chacha
//! 0.3), so output is byte-identical across platforms for a fixed spec.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{BipartiteGraph, GraphError, Hypergraph, Rational, SplitGraph, VertexId};
use crate::io::Instance;

pub const RETRY_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    BipRandom {
        n_a: usize,
        n_b: usize,
        edge_prob: f64,
    },
    /// Every A-vertex gets degree at least `2(t - 1)`.
    BipDense {
        n_a: usize,
        n_b: usize,
    },
    /// t-uniform, every hyperedge disjoint from some other hyperedge.
    HypUniform {
        n: usize,
        m: usize,
    },
    /// Simple t-regular graph on n vertices, as a 2-uniform hypergraph.
    RegularGraph {
        n: usize,
    },
    SplitRandom {
        n_c: usize,
        n_i: usize,
        edge_prob: f64,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::BipRandom { .. } => "bip-random",
            Family::BipDense { .. } => "bip-dense",
            Family::HypUniform { .. } => "hyp-uniform",
            Family::RegularGraph { .. } => "regular-graph",
            Family::SplitRandom { .. } => "split-random",
        }
    }

    fn sizes(&self) -> String {
        match self {
            Family::BipRandom { n_a, n_b, edge_prob } => format!("na={n_a} nb={n_b} p={edge_prob}"),
            Family::BipDense { n_a, n_b } => format!("na={n_a} nb={n_b}"),
            Family::HypUniform { n, m } => format!("n={n} m={m}"),
            Family::RegularGraph { n } => format!("n={n}"),
            Family::SplitRandom { n_c, n_i, edge_prob } => format!("nc={n_c} ni={n_i} p={edge_prob}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    Unit,
    /// Integers drawn uniformly from `lo..=hi`.
    UniformInt(u64, u64),
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightMode::Unit => f.write_str("unit"),
            WeightMode::UniformInt(lo, hi) => write!(f, "int:{lo}:{hi}"),
        }
    }
}

impl FromStr for WeightMode {
    type Err = String;

    /// `unit` or `int:<lo>:<hi>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "unit" {
            return Ok(WeightMode::Unit);
        }
        let bad = || format!("invalid weight mode `{s}` (expected `unit` or `int:<lo>:<hi>`)");
        let rest = s.strip_prefix("int:").ok_or_else(bad)?;
        let (lo, hi) = rest.split_once(':').ok_or_else(bad)?;
        match (lo.parse(), hi.parse()) {
            (Ok(lo), Ok(hi)) if lo <= hi => Ok(WeightMode::UniformInt(lo, hi)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub family: Family,
    pub t: usize,
    pub seed: u64,
    pub weights: WeightMode,
}

#[derive(Debug, Error)]
pub enum GenError {
    #[error("infeasible spec: {0}")]
    Infeasible(String),
    #[error("retry budget of {0} exhausted")]
    RetriesExhausted(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn infeasible<T>(msg: impl Into<String>) -> Result<T, GenError> {
    Err(GenError::Infeasible(msg.into()))
}

fn check_prob(p: f64) -> Result<(), GenError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        infeasible(format!("edge probability {p} outside [0, 1]"))
    }
}

fn draw_weights(rng: &mut ChaCha8Rng, n: usize, mode: WeightMode) -> Vec<(VertexId, Rational)> {
    match mode {
        WeightMode::Unit => Vec::new(),
        WeightMode::UniformInt(lo, hi) => {
            (1..=n).map(|v| (v, Rational::from_integer(rng.gen_range(lo..=hi).into()))).collect()
        }
    }
}

fn random_cross(rng: &mut ChaCha8Rng, n_a: usize, n_b: usize, p: f64) -> Vec<(VertexId, VertexId)> {
    let mut edges = Vec::new();
    for a in 1..=n_a {
        for b in n_a + 1..=n_a + n_b {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    edges
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn hyperedges(rng: &mut ChaCha8Rng, n: usize, m: usize, t: usize) -> Result<Vec<Vec<VertexId>>, GenError> {
    if m == 0 {
        return Ok(Vec::new());
    }
    if t > n || (m as u128) > binomial(n, t) {
        return infeasible(format!("cannot place {m} distinct {t}-sets on {n} vertices"));
    }
    if m < 2 || 2 * t > n {
        return infeasible("disjoint counterparts need m >= 2 and n >= 2t");
    }
    for _ in 0..RETRY_CAP {
        let mut seen = BTreeSet::new();
        while seen.len() < m {
            let mut e: Vec<VertexId> = index::sample(rng, n, t).into_iter().map(|i| i + 1).collect();
            e.sort_unstable();
            seen.insert(e);
        }
        let edges: Vec<Vec<VertexId>> = seen.into_iter().collect();
        let disjoint = |e: &[VertexId], f: &[VertexId]| e.iter().all(|v| f.binary_search(v).is_err());
        if edges.iter().all(|e| edges.iter().any(|f| disjoint(e, f))) {
            return Ok(edges);
        }
    }
    Err(GenError::RetriesExhausted(RETRY_CAP))
}

// Pairing model: shuffle n*t half-edges, pair neighbours, reject loops and
// multi-edges.
fn regular_edges(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Result<Vec<Vec<VertexId>>, GenError> {
    if (n * d) % 2 == 1 {
        return infeasible(format!("n*t = {} is odd", n * d));
    }
    if n > 0 && d >= n {
        return infeasible(format!("no simple {d}-regular graph on {n} vertices"));
    }
    let mut points: Vec<VertexId> = (1..=n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    for _ in 0..RETRY_CAP {
        points.shuffle(rng);
        let mut edges = BTreeSet::new();
        let ok = points.chunks(2).all(|p| {
            let (u, v) = (p[0].min(p[1]), p[0].max(p[1]));
            u != v && edges.insert(vec![u, v])
        });
        if ok {
            return Ok(edges.into_iter().collect());
        }
    }
    Err(GenError::RetriesExhausted(RETRY_CAP))
}

pub fn generate(spec: &GenSpec) -> Result<Instance, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let t = spec.t;
    let unit_only = |what: &str| match spec.weights {
        WeightMode::Unit => Ok(()),
        _ => infeasible(format!("{what} instances are unweighted")),
    };
    match spec.family {
        Family::BipRandom { n_a, n_b, edge_prob } => {
            check_prob(edge_prob)?;
            let edges = random_cross(&mut rng, n_a, n_b, edge_prob);
            let w = draw_weights(&mut rng, n_a + n_b, spec.weights);
            Ok(Instance::Bipartite(BipartiteGraph::new(n_a, n_b, t, edges)?.with_weights(w)?))
        }
        Family::BipDense { n_a, n_b } => {
            let min_deg = 2 * t.saturating_sub(1);
            if n_b < min_deg {
                return infeasible(format!("n_b = {n_b} is below the minimum A-degree {min_deg}"));
            }
            let mut edges = Vec::new();
            for a in 1..=n_a {
                let d = rng.gen_range(min_deg..=n_b);
                let mut nb: Vec<VertexId> = index::sample(&mut rng, n_b, d).into_iter().map(|i| n_a + 1 + i).collect();
                nb.sort_unstable();
                edges.extend(nb.into_iter().map(|b| (a, b)));
            }
            let w = draw_weights(&mut rng, n_a + n_b, spec.weights);
            Ok(Instance::Bipartite(BipartiteGraph::new(n_a, n_b, t, edges)?.with_weights(w)?))
        }
        Family::HypUniform { n, m } => {
            unit_only("hypergraph")?;
            let edges = hyperedges(&mut rng, n, m, t)?;
            Ok(Instance::Hypergraph(Hypergraph::new(n, t, edges)?))
        }
        Family::RegularGraph { n } => {
            unit_only("regular-graph")?;
            let edges = regular_edges(&mut rng, n, t)?;
            Ok(Instance::Hypergraph(Hypergraph::new(n, 2, edges)?))
        }
        Family::SplitRandom { n_c, n_i, edge_prob } => {
            check_prob(edge_prob)?;
            let edges = random_cross(&mut rng, n_c, n_i, edge_prob);
            let w = draw_weights(&mut rng, n_c + n_i, spec.weights);
            Ok(Instance::Split(SplitGraph::new(n_c, n_i, t, edges)?.with_weights(w)?))
        }
    }
}

pub fn header(spec: &GenSpec) -> String {
    format!(
        "# gen {} seed={} rng=chacha8 t={} {} weights={}",
        spec.family.name(),
        spec.seed,
        spec.t,
        spec.family.sizes(),
        spec.weights
    )
}

/// Serialized instance preceded by the provenance comment line.
pub fn generate_text(spec: &GenSpec) -> Result<String, GenError> {
    let instance = generate(spec)?;
    Ok(format!("{}\n{}", header(spec), instance.serialize()))
}
