//! The 2-polymatroid `f_t(F) = 2 Σ_{v ∈ A} min{t - 1, d_F(v)}` on the edge
//! set of a bipartite graph, and its dual.
//!
//! A-vertices of degree at most `t - 1` in the considered graph never
//! center a claw; they are left out of every sum, so all values below are
//! taken over the *active* A-vertices (degree ≥ t).

use thiserror::Error;

use crate::graph::{BipartiteGraph, Edge, EdgeSet, GraphError, VertexId, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolymatroidError {
    #[error("edge ({}, {}) is not in the considered graph", .0.a, .0.b)]
    ForeignEdge(Edge),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The dual `f^d(S) = Σ_{j ∈ S} f({j}) - (f(N) - f(N \ S))` of a set function
/// `f` over the ground set `ground`.
pub fn dual_polymatroid<F>(ground: &EdgeSet, f: F, subset: &EdgeSet) -> i64
where
    F: Fn(&EdgeSet) -> i64,
{
    let singletons: i64 = subset.iter().map(|&e| f(&EdgeSet::from_iter([e]))).sum();
    singletons - (f(ground) - f(&ground.difference(subset)))
}

/// `f_t` restricted to a (possibly induced) subgraph.
#[derive(Debug, Clone)]
pub struct PolymatroidContext<'g> {
    graph: &'g BipartiteGraph,
    alive: Vec<bool>,
    degree: Vec<usize>,
    active: Vec<bool>,
}

impl<'g> PolymatroidContext<'g> {
    pub fn new(graph: &'g BipartiteGraph) -> Self {
        Self::from_alive(graph, vec![true; graph.vertex_count() + 1])
    }

    /// The context of the induced subgraph `G[S]`, with degrees and active
    /// A-vertices recomputed there.
    pub fn induced(graph: &'g BipartiteGraph, s: &VertexSet) -> Result<Self, GraphError> {
        graph.validate_set(s)?;
        Ok(Self::from_alive(graph, s.mask(graph.vertex_count())))
    }

    pub(crate) fn from_alive(graph: &'g BipartiteGraph, mut alive: Vec<bool>) -> Self {
        alive[0] = false;
        let n = graph.vertex_count();
        let mut degree = vec![0; n + 1];
        for v in graph.vertices().filter(|&v| alive[v]) {
            degree[v] = graph.neighbors(v).iter().filter(|&&u| alive[u]).count();
        }
        let t = graph.t();
        let mut active = vec![false; n + 1];
        for v in graph.a_side() {
            active[v] = alive[v] && degree[v] >= t;
        }
        PolymatroidContext { graph, alive, degree, active }
    }

    pub fn graph(&self) -> &'g BipartiteGraph {
        self.graph
    }

    pub fn t(&self) -> usize {
        self.graph.t()
    }

    pub fn is_alive(&self, v: VertexId) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    pub fn is_active(&self, v: VertexId) -> bool {
        self.active.get(v).copied().unwrap_or(false)
    }

    pub fn active_a(&self) -> VertexSet {
        VertexSet::from_mask(&self.active)
    }

    pub fn has_active(&self) -> bool {
        self.active.iter().any(|&a| a)
    }

    /// Degree in the considered graph.
    pub fn degree(&self, v: VertexId) -> usize {
        self.degree.get(v).copied().unwrap_or(0)
    }

    /// Edges of the considered graph.
    pub fn ground_set(&self) -> EdgeSet {
        self.graph.edges().iter().filter(|e| self.alive[e.a] && self.alive[e.b]).copied().collect()
    }

    fn check(&self, f: &EdgeSet) -> Result<(), PolymatroidError> {
        match f.iter().find(|e| !(self.is_alive(e.a) && self.is_alive(e.b) && self.graph.has_edge(e))) {
            Some(e) => Err(PolymatroidError::ForeignEdge(*e)),
            None => Ok(()),
        }
    }

    /// `d_F(v)` for every active A-vertex, as `(degree in F, degree in G)`.
    fn active_degrees(&self, f: &EdgeSet) -> impl Iterator<Item = (usize, usize)> + '_ {
        let mut in_f = vec![0usize; self.graph.vertex_count() + 1];
        for e in f.iter() {
            in_f[e.a] += 1;
        }
        self.graph.a_side().filter(|&v| self.active[v]).map(move |v| (in_f[v], self.degree[v]))
    }

    fn rank_unchecked(&self, f: &EdgeSet) -> u64 {
        let cap = self.t() - 1;
        2 * self.active_degrees(f).map(|(d, _)| d.min(cap) as u64).sum::<u64>()
    }

    /// `f_t(F)`.
    pub fn rank(&self, f: &EdgeSet) -> Result<u64, PolymatroidError> {
        self.check(f)?;
        Ok(self.rank_unchecked(f))
    }

    /// `f_t^d(F) = 2 Σ_{v ∈ A} min{d_F(v), d(v) - t + 1}`.
    pub fn dual_rank(&self, f: &EdgeSet) -> Result<u64, PolymatroidError> {
        self.check(f)?;
        let slack = |d: usize| d + 1 - self.t();
        Ok(2 * self.active_degrees(f).map(|(df, d)| df.min(slack(d)) as u64).sum::<u64>())
    }

    /// `f_t^d(F)` straight from the dual definition over the ground set.
    pub fn dual_rank_generic(&self, f: &EdgeSet) -> Result<i64, PolymatroidError> {
        self.check(f)?;
        let ground = self.ground_set();
        Ok(dual_polymatroid(&ground, |x| self.rank_unchecked(x) as i64, f))
    }

    /// `f_t^d(E) = 2 Σ_{v ∈ A} (d(v) - t + 1)`.
    pub fn dual_rank_of_ground(&self) -> u64 {
        let t = self.t();
        2 * self.graph.a_side().filter(|&v| self.active[v]).map(|v| (self.degree[v] + 1 - t) as u64).sum::<u64>()
    }

    /// `f_t^d(δ(v))` in the considered graph: `2(d(v) - t + 1)` for an
    /// active A-vertex, twice the number of active neighbors for a B-vertex,
    /// zero otherwise.
    pub fn star_dual(&self, v: VertexId) -> u64 {
        if !self.is_alive(v) {
            return 0;
        }
        if self.graph.is_a(v) {
            if self.active[v] {
                2 * (self.degree[v] + 1 - self.t()) as u64
            } else {
                0
            }
        } else {
            2 * self.graph.neighbors(v).iter().filter(|&&u| self.active[u]).count() as u64
        }
    }

    /// `f_t(F) = 2|F|` over edges at active A-vertices.
    pub fn is_matching(&self, f: &EdgeSet) -> Result<bool, PolymatroidError> {
        let rank = self.rank(f)?;
        let counted = f.iter().filter(|e| self.active[e.a]).count() as u64;
        Ok(rank == 2 * counted)
    }

    /// `f_t^d(F) = f_t^d(E)`.
    pub fn is_spanning_dual(&self, f: &EdgeSet) -> Result<bool, PolymatroidError> {
        Ok(self.dual_rank(f)? == self.dual_rank_of_ground())
    }
}

pub fn f_t(ctx: &PolymatroidContext<'_>, f: &EdgeSet) -> Result<u64, PolymatroidError> {
    ctx.rank(f)
}

pub fn f_t_dual(ctx: &PolymatroidContext<'_>, f: &EdgeSet) -> Result<u64, PolymatroidError> {
    ctx.dual_rank(f)
}

/// `f_t^d(δ_S(v))` on `G[S]`.
pub fn f_dual_delta_within(g: &BipartiteGraph, v: VertexId, s: &VertexSet) -> Result<u64, PolymatroidError> {
    let star = g.delta_within(v, s)?;
    let ctx = PolymatroidContext::induced(g, s)?;
    ctx.dual_rank(&star)
}

/// `f_t^d(E[S])` on `G[S]`.
pub fn f_dual_induced(g: &BipartiteGraph, s: &VertexSet) -> Result<u64, PolymatroidError> {
    Ok(PolymatroidContext::induced(g, s)?.dual_rank_of_ground())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{g1, g2};

    #[test]
    fn rank_values() {
        let g = g1();
        let ctx = PolymatroidContext::new(&g);
        assert_eq!(ctx.rank(&EdgeSet::from([(1, 2)])).unwrap(), 2);
        assert_eq!(ctx.rank(&g.all_edges()).unwrap(), 4);
        assert_eq!(ctx.rank(&EdgeSet::new()).unwrap(), 0);
    }

    #[test]
    fn dual_values() {
        let g = g1();
        let ctx = PolymatroidContext::new(&g);
        assert_eq!(ctx.dual_rank(&g.all_edges()).unwrap(), 4);
        assert_eq!(ctx.dual_rank_of_ground(), 4);
        assert_eq!(ctx.dual_rank(&g.delta(2).unwrap()).unwrap(), 2);
        assert_eq!(ctx.dual_rank(&g.delta(1).unwrap()).unwrap(), 4);
        for v in g.vertices() {
            let star = g.delta(v).unwrap();
            assert_eq!(ctx.dual_rank_generic(&star).unwrap(), ctx.dual_rank(&star).unwrap() as i64);
            assert_eq!(ctx.star_dual(v), ctx.dual_rank(&star).unwrap());
        }
    }

    #[test]
    fn matching_and_spanning() {
        let g = g1();
        let ctx = PolymatroidContext::new(&g);
        assert!(ctx.is_matching(&EdgeSet::from([(1, 2), (1, 3)])).unwrap());
        assert!(!ctx.is_matching(&EdgeSet::from([(1, 2), (1, 3), (1, 4)])).unwrap());
        assert!(ctx.is_matching(&EdgeSet::new()).unwrap());
        assert!(ctx.is_spanning_dual(&g.all_edges()).unwrap());
        assert!(ctx.is_spanning_dual(&EdgeSet::from([(1, 2), (1, 3)])).unwrap());
        assert!(!ctx.is_spanning_dual(&EdgeSet::new()).unwrap());
    }

    #[test]
    fn delta_within_recomputes_activity() {
        let g = g1();
        let all = g.all_vertices();
        assert_eq!(f_dual_delta_within(&g, 1, &all).unwrap(), 4);
        assert_eq!(f_dual_delta_within(&g, 2, &all).unwrap(), 2);
        assert_eq!(f_dual_delta_within(&g, 2, &VertexSet::from([1, 2, 3])).unwrap(), 0);
        assert!(matches!(
            f_dual_delta_within(&g, 4, &VertexSet::from([1, 2])),
            Err(PolymatroidError::Graph(GraphError::NotInSet(4)))
        ));
    }

    #[test]
    fn foreign_edges_rejected() {
        let g = g1();
        let ctx = PolymatroidContext::induced(&g, &VertexSet::from([1, 2])).unwrap();
        assert_eq!(ctx.rank(&EdgeSet::from([(1, 3)])), Err(PolymatroidError::ForeignEdge(Edge::new(1, 3))));
        let full = PolymatroidContext::new(&g);
        assert!(full.dual_rank(&EdgeSet::from([(2, 3)])).is_err());
    }

    #[test]
    fn inactive_vertices_contribute_nothing() {
        // A-vertex 1 has degree 3, vertex 2 has degree 2 < t.
        let g = BipartiteGraph::new(2, 3, 3, [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4)]).unwrap();
        let ctx = PolymatroidContext::new(&g);
        assert_eq!(ctx.active_a(), VertexSet::from([1]));
        assert_eq!(ctx.rank(&EdgeSet::from([(2, 3)])).unwrap(), 0);
        assert_eq!(ctx.dual_rank_of_ground(), 2);
        assert_eq!(ctx.star_dual(3), 2);
        let g2 = g2();
        let ctx2 = PolymatroidContext::new(&g2);
        assert_eq!(ctx2.star_dual(3), 4);
        assert_eq!(ctx2.dual_rank_of_ground(), 4);
    }

    #[test]
    fn generic_dual_of_modular_function_vanishes() {
        let ground = EdgeSet::from([(1, 2), (1, 3), (1, 4)]);
        let f = |x: &EdgeSet| 2 * x.len() as i64;
        let s = EdgeSet::from([(1, 3)]);
        assert_eq!(dual_polymatroid(&ground, f, &s), 0);
    }
}
