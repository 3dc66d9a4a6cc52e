//! Exact solvers for desk-scale instances.
//!
//! All searches are hitting-set branch-and-bound: pick an obstruction that
//! every feasible solution must hit (a claw, an uncovered hyperedge), branch
//! on its vertices in order, and forbid earlier siblings in later branches.
//! Pruning uses the incumbent cost and a packing bound over disjoint
//! obstructions.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::claw::{is_feasible, ClawGraph};
use crate::graph::{BipartiteGraph, GraphError, Hypergraph, Rational, SplitGraph, VertexId, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("too large for oracle: search needs more than {limit} branching levels (max_depth guard)")]
    DepthExceeded { limit: usize },
    #[error("too large for oracle: {vertices} vertices exceed the enumeration guard of {limit}")]
    TooManyVertices { vertices: usize, limit: usize },
    #[error("expected a simple graph (uniformity 2), found uniformity {0}")]
    NotAGraph(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    /// Maximum number of vertices a branch may commit to.
    pub max_depth: usize,
    /// Maximum vertex count for subset enumeration.
    pub max_enumeration: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_depth: 12, max_enumeration: 14 }
    }
}

trait HittingFamily {
    fn universe(&self) -> usize;
    fn cost(&self, v: VertexId) -> Rational;
    fn branch_set(&self, removed: &[bool], forbidden: &[bool]) -> Option<Vec<VertexId>>;
}

struct Claws<'a, G>(&'a G);

impl<G: ClawGraph> HittingFamily for Claws<'_, G> {
    fn universe(&self) -> usize {
        self.0.vertex_count()
    }

    fn cost(&self, v: VertexId) -> Rational {
        self.0.weight(v).clone()
    }

    fn branch_set(&self, removed: &[bool], forbidden: &[bool]) -> Option<Vec<VertexId>> {
        self.0.branch_set(removed, forbidden)
    }
}

struct Cover<'a>(&'a Hypergraph);

impl HittingFamily for Cover<'_> {
    fn universe(&self) -> usize {
        self.0.n()
    }

    fn cost(&self, _v: VertexId) -> Rational {
        Rational::one()
    }

    fn branch_set(&self, removed: &[bool], forbidden: &[bool]) -> Option<Vec<VertexId>> {
        self.0
            .hyperedges()
            .iter()
            .find(|h| h.iter().all(|&v| !removed[v]))
            .map(|h| h.iter().copied().filter(|&v| !forbidden[v]).collect())
    }
}

struct Search<'a, H> {
    family: &'a H,
    limit: usize,
    removed: Vec<bool>,
    forbidden: Vec<bool>,
    cost: Rational,
    best: Option<(Vec<bool>, Rational)>,
}

impl<H: HittingFamily> Search<'_, H> {
    /// Sum of cheapest members over vertex-disjoint obstructions; `None` if
    /// some obstruction has no deletable vertex.
    fn packing_bound(&self) -> Option<Rational> {
        let mut scratch = self.removed.clone();
        let mut bound = Rational::zero();
        while let Some(branch) = self.family.branch_set(&scratch, &self.forbidden) {
            let cheapest = branch.iter().map(|&v| self.family.cost(v)).min()?;
            bound += cheapest;
            for v in branch {
                scratch[v] = true;
            }
        }
        Some(bound)
    }

    fn run(&mut self, depth: usize) -> Result<(), OracleError> {
        let Some(bound) = self.packing_bound() else {
            return Ok(());
        };
        if let Some((_, best)) = &self.best {
            if &(&self.cost + &bound) >= best {
                return Ok(());
            }
        }
        let Some(branch) = self.family.branch_set(&self.removed, &self.forbidden) else {
            self.best = Some((self.removed.clone(), self.cost.clone()));
            return Ok(());
        };
        if depth == self.limit {
            return Err(OracleError::DepthExceeded { limit: self.limit });
        }
        for &v in &branch {
            let w = self.family.cost(v);
            self.removed[v] = true;
            self.cost += &w;
            let outcome = self.run(depth + 1);
            self.cost -= &w;
            self.removed[v] = false;
            if outcome.is_err() {
                for &u in &branch {
                    self.forbidden[u] = false;
                }
                return outcome;
            }
            self.forbidden[v] = true;
        }
        for &u in &branch {
            self.forbidden[u] = false;
        }
        Ok(())
    }
}

fn min_hitting_set<H: HittingFamily>(
    family: &H,
    limit: usize,
    incumbent: Option<(VertexSet, Rational)>,
) -> Result<Option<(VertexSet, Rational)>, OracleError> {
    let n = family.universe();
    let mut search = Search {
        family,
        limit,
        removed: vec![false; n + 1],
        forbidden: vec![false; n + 1],
        cost: Rational::zero(),
        best: incumbent.map(|(s, c)| (s.mask(n), c)),
    };
    search.run(0)?;
    Ok(search.best.map(|(mask, c)| (VertexSet::from_mask(&mask), c)))
}

/// Minimum-weight deletion set of any claw graph, seeded with an optional
/// feasible incumbent.
pub fn exact_min_deletion<G: ClawGraph>(
    g: &G,
    limits: &OracleLimits,
    incumbent: Option<(VertexSet, Rational)>,
) -> Result<(VertexSet, Rational), OracleError> {
    let found = min_hitting_set(&Claws(g), limits.max_depth, incumbent)?;
    // Deleting everything is feasible, so a search without an incumbent
    // always records one.
    Ok(found.expect("branch-and-bound found no feasible set"))
}

pub fn exact_min_osbcd(g: &BipartiteGraph) -> Result<(VertexSet, Rational), OracleError> {
    exact_min_osbcd_with(g, &OracleLimits::default())
}

/// Branch-and-bound seeded with the primal-dual solution as upper bound.
pub fn exact_min_osbcd_with(g: &BipartiteGraph, limits: &OracleLimits) -> Result<(VertexSet, Rational), OracleError> {
    let start = crate::solvers::primal_dual_solve(g);
    exact_min_deletion(g, limits, Some((start.solution, start.cost)))
}

pub fn exact_min_vc_hypergraph(hy: &Hypergraph) -> Result<(VertexSet, usize), OracleError> {
    exact_min_vc_hypergraph_with(hy, &OracleLimits::default())
}

pub fn exact_min_vc_hypergraph_with(hy: &Hypergraph, limits: &OracleLimits) -> Result<(VertexSet, usize), OracleError> {
    let everything: VertexSet = (1..=hy.n()).collect();
    let n = Rational::from_integer(hy.n().into());
    let (cover, _) = min_hitting_set(&Cover(hy), limits.max_depth, None)?.unwrap_or((everything, n));
    let size = cover.len();
    Ok((cover, size))
}

/// Minimum vertex cover of a simple graph given as a 2-uniform hypergraph.
pub fn exact_min_vc_graph(graph: &Hypergraph) -> Result<(VertexSet, usize), OracleError> {
    exact_min_vc_graph_with(graph, &OracleLimits::default())
}

pub fn exact_min_vc_graph_with(graph: &Hypergraph, limits: &OracleLimits) -> Result<(VertexSet, usize), OracleError> {
    if graph.t() != 2 {
        return Err(OracleError::NotAGraph(graph.t()));
    }
    exact_min_vc_hypergraph_with(graph, limits)
}

/// Maximum-weight vertex set inducing a one-sided t-claw free subgraph.
pub fn exact_max_subgraph(g: &BipartiteGraph) -> Result<(VertexSet, Rational), OracleError> {
    exact_max_subgraph_with(g, &OracleLimits::default())
}

pub fn exact_max_subgraph_with(
    g: &BipartiteGraph,
    limits: &OracleLimits,
) -> Result<(VertexSet, Rational), OracleError> {
    let (deleted, cost) = exact_min_osbcd_with(g, limits)?;
    Ok((g.all_vertices().difference(&deleted), g.total_weight() - cost))
}

fn check_enumerable(n: usize, limits: &OracleLimits) -> Result<(), OracleError> {
    if n > limits.max_enumeration {
        return Err(OracleError::TooManyVertices { vertices: n, limit: limits.max_enumeration });
    }
    Ok(())
}

fn subset(mask: u64, n: usize) -> VertexSet {
    (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect()
}

/// Minimum-weight deletion set by trying every subset; lowest-mask subset
/// wins ties.
pub fn exhaustive_min_deletion<G: ClawGraph>(
    g: &G,
    limits: &OracleLimits,
) -> Result<(VertexSet, Rational), OracleError> {
    let n = g.vertex_count();
    check_enumerable(n, limits)?;
    let mut best: Option<(VertexSet, Rational)> = None;
    for mask in 0..1u64 << n {
        let s = subset(mask, n);
        let cost = s.iter().fold(Rational::zero(), |acc, v| acc + g.weight(v));
        if best.as_ref().is_some_and(|(_, c)| &cost >= c) {
            continue;
        }
        if is_feasible(g, &s) {
            best = Some((s, cost));
        }
    }
    Ok(best.expect("the full vertex set is feasible"))
}

/// All inclusion-minimal deletion sets, in ascending subset-mask order.
pub fn enumerate_minimal_deletions<G: ClawGraph>(g: &G, limits: &OracleLimits) -> Result<Vec<VertexSet>, OracleError> {
    let n = g.vertex_count();
    check_enumerable(n, limits)?;
    let feasible: Vec<bool> = (0..1u64 << n).map(|m| is_feasible(g, &subset(m, n))).collect();
    Ok((0..1u64 << n)
        .filter(|&m| feasible[m as usize])
        .filter(|&m| (0..n).all(|i| m >> i & 1 == 0 || !feasible[(m & !(1 << i)) as usize]))
        .map(|m| subset(m, n))
        .collect())
}

pub fn enumerate_minimal_osbcd(g: &BipartiteGraph) -> Result<Vec<VertexSet>, OracleError> {
    enumerate_minimal_deletions(g, &OracleLimits::default())
}

/// Whether `h - removed` contains an induced `K_{1,t}` centered anywhere,
/// by trying every center and every t-subset of its neighbors.
pub fn split_has_claw_exhaustive(h: &SplitGraph, removed: &VertexSet) -> bool {
    fn extend(h: &SplitGraph, pool: &[VertexId], need: usize, chosen: &mut Vec<VertexId>) -> bool {
        if need == 0 {
            return true;
        }
        for (i, &v) in pool.iter().enumerate() {
            if chosen.iter().all(|&u| !h.adjacent(u, v)) {
                chosen.push(v);
                if extend(h, &pool[i + 1..], need - 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    h.vertices().filter(|&c| !removed.contains(c)).any(|c| {
        let pool: Vec<VertexId> = h.vertices().filter(|&u| !removed.contains(u) && h.adjacent(c, u)).collect();
        extend(h, &pool, h.t(), &mut Vec::new())
    })
}
