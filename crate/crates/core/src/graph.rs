//! Instance types: vertex-weighted bipartite graphs, split graphs with an
//! implicit clique, and uniform hypergraphs.
//!
//! Vertex ids are 1-based. In a bipartite graph the A side occupies
//! `1..=n_a` and the B side `n_a + 1..=n_a + n_b`; split graphs use the same
//! layout with the clique side first.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("claw parameter t = {0} must be at least 3")]
    ClawParameter(usize),
    #[error("vertex {v} out of range (valid ids 1..={max})")]
    VertexOutOfRange { v: VertexId, max: usize },
    #[error("edge ({a}, {b}) must join side-A id {a} to side-B id {b}")]
    WrongSides { a: VertexId, b: VertexId },
    #[error("duplicate edge ({a}, {b})")]
    DuplicateEdge { a: VertexId, b: VertexId },
    #[error("negative weight {weight} on vertex {v}")]
    NegativeWeight { v: VertexId, weight: Rational },
    #[error("hypergraph uniformity {0} must be at least 2")]
    Uniformity(usize),
    #[error("hyperedge {index} has {found} vertices, expected {expected}")]
    HyperedgeSize { index: usize, found: usize, expected: usize },
    #[error("hyperedge {index} repeats a vertex")]
    RepeatedVertex { index: usize },
    #[error("hyperedge {index} duplicates an earlier hyperedge")]
    DuplicateHyperedge { index: usize },
    #[error("vertex {0} is not in the given vertex set")]
    NotInSet(VertexId),
    #[error("edge ({}, {}) is not in the graph", .0.a, .0.b)]
    ForeignEdge(Edge),
}

/// An edge between an A-side (or clique-side) endpoint `a` and a B-side
/// (or independent-side) endpoint `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub a: VertexId,
    pub b: VertexId,
}

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        Edge { a, b }
    }

    pub fn is_incident(&self, v: VertexId) -> bool {
        self.a == v || self.b == v
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(BTreeSet<VertexId>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        self.0.remove(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Ascending iteration.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    /// Membership mask indexed by vertex id (index 0 unused).
    pub(crate) fn mask(&self, vertex_count: usize) -> Vec<bool> {
        let mut mask = vec![false; vertex_count + 1];
        for v in self.iter() {
            if v <= vertex_count {
                mask[v] = true;
            }
        }
        mask
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        mask.iter().enumerate().filter(|&(_, &m)| m).map(|(v, _)| v).collect()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl Extend<VertexId> for VertexSet {
    fn extend<I: IntoIterator<Item = VertexId>>(&mut self, iter: I) {
        self.0.extend(iter);
    }
}

impl<const N: usize> From<[VertexId; N]> for VertexSet {
    fn from(ids: [VertexId; N]) -> Self {
        ids.into_iter().collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(BTreeSet::new())
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.contains(e)
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.0.insert(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.0.iter()
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.union(&other.0).copied().collect())
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[(VertexId, VertexId); N]> for EdgeSet {
    fn from(pairs: [(VertexId, VertexId); N]) -> Self {
        pairs.into_iter().map(|(a, b)| Edge::new(a, b)).collect()
    }
}

fn check_weight(v: VertexId, w: &Rational) -> Result<(), GraphError> {
    if w.is_negative() {
        return Err(GraphError::NegativeWeight { v, weight: w.clone() });
    }
    Ok(())
}

/// Validates a two-sided edge list and builds sorted adjacency lists.
fn two_sided_edges(
    left: usize,
    right: usize,
    pairs: impl IntoIterator<Item = (VertexId, VertexId)>,
) -> Result<(Vec<Edge>, Vec<Vec<VertexId>>), GraphError> {
    let n = left + right;
    let mut seen = BTreeSet::new();
    let mut adj = vec![Vec::new(); n + 1];
    for (a, b) in pairs {
        for v in [a, b] {
            if v == 0 || v > n {
                return Err(GraphError::VertexOutOfRange { v, max: n });
            }
        }
        if a > left || b <= left {
            return Err(GraphError::WrongSides { a, b });
        }
        let e = Edge::new(a, b);
        if !seen.insert(e) {
            return Err(GraphError::DuplicateEdge { a, b });
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
    }
    Ok((seen.into_iter().collect(), adj))
}

/// A vertex-weighted bipartite graph `(A ∪ B, E)` together with the claw
/// parameter `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_a: usize,
    n_b: usize,
    t: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<VertexId>>,
    weights: Vec<Rational>,
}

impl BipartiteGraph {
    pub fn new(
        n_a: usize,
        n_b: usize,
        t: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        if t < 3 {
            return Err(GraphError::ClawParameter(t));
        }
        let (edges, adj) = two_sided_edges(n_a, n_b, edges)?;
        Ok(BipartiteGraph { n_a, n_b, t, edges, adj, weights: vec![Rational::one(); n_a + n_b + 1] })
    }

    pub fn with_weight(mut self, v: VertexId, w: Rational) -> Result<Self, GraphError> {
        self.check_vertex(v)?;
        check_weight(v, &w)?;
        self.weights[v] = w;
        Ok(self)
    }

    pub fn with_weights(self, weights: impl IntoIterator<Item = (VertexId, Rational)>) -> Result<Self, GraphError> {
        weights.into_iter().try_fold(self, |g, (v, w)| g.with_weight(v, w))
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn vertex_count(&self) -> usize {
        self.n_a + self.n_b
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending `(a, b)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn all_edges(&self) -> EdgeSet {
        self.edges.iter().copied().collect()
    }

    pub fn vertices(&self) -> RangeInclusive<VertexId> {
        1..=self.vertex_count()
    }

    pub fn a_side(&self) -> RangeInclusive<VertexId> {
        1..=self.n_a
    }

    pub fn b_side(&self) -> RangeInclusive<VertexId> {
        self.n_a + 1..=self.vertex_count()
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn a_set(&self) -> VertexSet {
        self.a_side().collect()
    }

    pub fn b_set(&self) -> VertexSet {
        self.b_side().collect()
    }

    pub fn is_a(&self, v: VertexId) -> bool {
        (1..=self.n_a).contains(&v)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        (1..=self.vertex_count()).contains(&v)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { v, max: self.vertex_count() })
        }
    }

    pub fn has_edge(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Sorted neighbor list. Panics on an invalid id.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn weight(&self, v: VertexId) -> &Rational {
        &self.weights[v]
    }

    pub fn weight_of(&self, set: &VertexSet) -> Rational {
        set.iter().filter(|&v| self.contains(v)).fold(Rational::zero(), |acc, v| acc + &self.weights[v])
    }

    pub fn total_weight(&self) -> Rational {
        self.weight_of(&self.all_vertices())
    }

    pub fn has_unit_weights(&self) -> bool {
        self.vertices().all(|v| self.weights[v].is_one())
    }

    /// `d_F(v)`: the degree of `v`, restricted to `restricted_to` when given.
    pub fn degree(&self, v: VertexId, restricted_to: Option<&EdgeSet>) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(match restricted_to {
            None => self.adj[v].len(),
            Some(f) => f.iter().filter(|e| e.is_incident(v)).count(),
        })
    }

    fn edge_to(&self, v: VertexId, u: VertexId) -> Edge {
        if self.is_a(v) {
            Edge::new(v, u)
        } else {
            Edge::new(u, v)
        }
    }

    /// `δ(v)`.
    pub fn delta(&self, v: VertexId) -> Result<EdgeSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adj[v].iter().map(|&u| self.edge_to(v, u)).collect())
    }

    /// `δ_S(v)`: edges from `v` to other members of `s`. Requires `v ∈ s`.
    pub fn delta_within(&self, v: VertexId, s: &VertexSet) -> Result<EdgeSet, GraphError> {
        self.check_vertex(v)?;
        if !s.contains(v) {
            return Err(GraphError::NotInSet(v));
        }
        Ok(self.adj[v].iter().filter(|&&u| s.contains(u)).map(|&u| self.edge_to(v, u)).collect())
    }

    /// `E[S]`: edges with both endpoints in `s`.
    pub fn induced_edges(&self, s: &VertexSet) -> EdgeSet {
        self.edges.iter().filter(|e| s.contains(e.a) && s.contains(e.b)).copied().collect()
    }

    /// The spanning subgraph `(A ∪ B, F)` with the same weights.
    pub fn edge_subgraph(&self, f: &EdgeSet) -> Result<BipartiteGraph, GraphError> {
        if let Some(e) = f.iter().find(|e| !self.has_edge(e)) {
            return Err(GraphError::ForeignEdge(*e));
        }
        let mut g = BipartiteGraph::new(self.n_a, self.n_b, self.t, f.iter().map(|e| (e.a, e.b)))?;
        g.weights = self.weights.clone();
        Ok(g)
    }

    pub fn validate_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        s.iter().try_for_each(|v| self.check_vertex(v))
    }
}

/// A split graph: clique side `1..=n_c` (all pairs adjacent, not stored)
/// and independent side `n_c + 1..=n_c + n_i`, joined by cross edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitGraph {
    n_c: usize,
    n_i: usize,
    t: usize,
    cross: Vec<Edge>,
    adj: Vec<Vec<VertexId>>,
    weights: Vec<Rational>,
}

impl SplitGraph {
    pub fn new(
        n_c: usize,
        n_i: usize,
        t: usize,
        cross_edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        if t < 3 {
            return Err(GraphError::ClawParameter(t));
        }
        let (cross, adj) = two_sided_edges(n_c, n_i, cross_edges)?;
        Ok(SplitGraph { n_c, n_i, t, cross, adj, weights: vec![Rational::one(); n_c + n_i + 1] })
    }

    pub fn with_weight(mut self, v: VertexId, w: Rational) -> Result<Self, GraphError> {
        self.check_vertex(v)?;
        check_weight(v, &w)?;
        self.weights[v] = w;
        Ok(self)
    }

    pub fn with_weights(self, weights: impl IntoIterator<Item = (VertexId, Rational)>) -> Result<Self, GraphError> {
        weights.into_iter().try_fold(self, |h, (v, w)| h.with_weight(v, w))
    }

    pub fn n_c(&self) -> usize {
        self.n_c
    }

    pub fn n_i(&self) -> usize {
        self.n_i
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn vertex_count(&self) -> usize {
        self.n_c + self.n_i
    }

    pub fn vertices(&self) -> RangeInclusive<VertexId> {
        1..=self.vertex_count()
    }

    pub fn clique_side(&self) -> RangeInclusive<VertexId> {
        1..=self.n_c
    }

    pub fn independent_side(&self) -> RangeInclusive<VertexId> {
        self.n_c + 1..=self.vertex_count()
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn cross_edges(&self) -> &[Edge] {
        &self.cross
    }

    pub fn is_clique(&self, v: VertexId) -> bool {
        (1..=self.n_c).contains(&v)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        (1..=self.vertex_count()).contains(&v)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { v, max: self.vertex_count() })
        }
    }

    /// Neighbors across the partition only.
    pub fn cross_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    /// Adjacency in the full split graph, clique edges included.
    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        if u == v {
            return false;
        }
        match (self.is_clique(u), self.is_clique(v)) {
            (true, true) => true,
            (false, false) => false,
            (true, false) => self.adj[u].binary_search(&v).is_ok(),
            (false, true) => self.adj[v].binary_search(&u).is_ok(),
        }
    }

    pub fn weight(&self, v: VertexId) -> &Rational {
        &self.weights[v]
    }

    pub fn weight_of(&self, set: &VertexSet) -> Rational {
        set.iter().filter(|&v| self.contains(v)).fold(Rational::zero(), |acc, v| acc + &self.weights[v])
    }

    pub fn validate_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        s.iter().try_for_each(|v| self.check_vertex(v))
    }
}

/// A `t`-uniform hypergraph on vertices `1..=n`. Uniformity 2 is an
/// ordinary simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    t: usize,
    hyperedges: Vec<Vec<VertexId>>,
}

impl Hypergraph {
    pub fn new(n: usize, t: usize, hyperedges: Vec<Vec<VertexId>>) -> Result<Self, GraphError> {
        if t < 2 {
            return Err(GraphError::Uniformity(t));
        }
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(hyperedges.len());
        for (index, mut h) in hyperedges.into_iter().enumerate() {
            if h.len() != t {
                return Err(GraphError::HyperedgeSize { index, found: h.len(), expected: t });
            }
            if let Some(&v) = h.iter().find(|&&v| v == 0 || v > n) {
                return Err(GraphError::VertexOutOfRange { v, max: n });
            }
            h.sort_unstable();
            if h.windows(2).any(|w| w[0] == w[1]) {
                return Err(GraphError::RepeatedVertex { index });
            }
            if !seen.insert(h.clone()) {
                return Err(GraphError::DuplicateHyperedge { index });
            }
            normalized.push(h);
        }
        Ok(Hypergraph { n, t, hyperedges: normalized })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn edge_count(&self) -> usize {
        self.hyperedges.len()
    }

    /// Hyperedges in input order, each sorted ascending.
    pub fn hyperedges(&self) -> &[Vec<VertexId>] {
        &self.hyperedges
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.hyperedges.iter().filter(|h| h.contains(&v)).count()
    }

    /// Common degree when every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(1);
        (1..=self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn has_disjoint_counterpart(&self, index: usize) -> bool {
        let h = &self.hyperedges[index];
        self.hyperedges.iter().any(|other| other.iter().all(|v| h.binary_search(v).is_err()))
    }

    /// Whether every hyperedge is disjoint from some other hyperedge.
    pub fn has_disjoint_pairs(&self) -> bool {
        (0..self.hyperedges.len()).all(|i| self.has_disjoint_counterpart(i))
    }

    pub fn is_cover(&self, s: &VertexSet) -> bool {
        self.hyperedges.iter().all(|h| h.iter().any(|&v| s.contains(v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::g1;

    #[test]
    fn degree_and_restriction() {
        let g = g1();
        assert_eq!(g.degree(1, None).unwrap(), 4);
        assert_eq!(g.degree(1, Some(&EdgeSet::from([(1, 2)]))).unwrap(), 1);
        assert_eq!(g.degree(2, Some(&EdgeSet::new())).unwrap(), 0);
        assert!(g.degree(6, None).is_err());
    }

    #[test]
    fn delta_queries() {
        let g = g1();
        assert_eq!(g.delta(1).unwrap(), EdgeSet::from([(1, 2), (1, 3), (1, 4), (1, 5)]));
        assert_eq!(g.delta_within(1, &VertexSet::from([1, 2, 3])).unwrap(), EdgeSet::from([(1, 2), (1, 3)]));
        assert_eq!(g.induced_edges(&VertexSet::from([2, 3])), EdgeSet::new());
        assert_eq!(g.delta_within(4, &VertexSet::from([1, 2])), Err(GraphError::NotInSet(4)));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(BipartiteGraph::new(1, 1, 3, [(1, 3)]), Err(GraphError::VertexOutOfRange { v: 3, .. })));
        assert!(matches!(BipartiteGraph::new(2, 1, 3, [(1, 2)]), Err(GraphError::WrongSides { .. })));
        assert!(matches!(BipartiteGraph::new(1, 1, 3, [(1, 2), (1, 2)]), Err(GraphError::DuplicateEdge { .. })));
        assert_eq!(BipartiteGraph::new(1, 1, 2, []), Err(GraphError::ClawParameter(2)));
    }

    #[test]
    fn negative_weight_rejected() {
        let w = Rational::from_integer((-1).into());
        assert!(matches!(g1().with_weight(2, w), Err(GraphError::NegativeWeight { v: 2, .. })));
    }

    #[test]
    fn split_adjacency_is_implicit_on_clique() {
        let h = SplitGraph::new(2, 3, 3, [(1, 3), (2, 4)]).unwrap();
        assert!(h.adjacent(1, 2));
        assert!(h.adjacent(3, 1));
        assert!(!h.adjacent(3, 2));
        assert!(!h.adjacent(3, 4));
        assert!(!h.adjacent(1, 1));
    }

    #[test]
    fn hypergraph_validation() {
        let hy = Hypergraph::new(6, 3, vec![vec![3, 1, 2], vec![4, 5, 6]]).unwrap();
        assert_eq!(hy.hyperedges()[0], vec![1, 2, 3]);
        assert!(hy.has_disjoint_pairs());
        assert!(Hypergraph::new(3, 3, vec![vec![1, 2]]).is_err());
        assert!(Hypergraph::new(3, 3, vec![vec![1, 2, 2]]).is_err());
        assert!(Hypergraph::new(3, 3, vec![vec![1, 2, 3], vec![3, 2, 1]]).is_err());
        let single = Hypergraph::new(3, 3, vec![vec![1, 2, 3]]).unwrap();
        assert!(!single.has_disjoint_pairs());
    }
}
