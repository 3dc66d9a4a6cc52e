//! One-sided bipartite t-claw deletion: exact rational primal-dual and
//! local-ratio solvers, the dual polymatroid machinery behind them, exact
//! small-instance oracles, hardness reductions as instance transformers,
//! seeded generators and a command-line front end.

pub mod claw;
pub mod cli;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod polymatroid;
pub mod reductions;
pub mod solvers;

pub use graph::{BipartiteGraph, Edge, EdgeSet, GraphError, Hypergraph, Rational, SplitGraph, VertexId, VertexSet};

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::graph::{BipartiteGraph, Hypergraph, SplitGraph};

    /// Star with center 1 and leaves 2..5, t = 3.
    pub fn g1() -> BipartiteGraph {
        BipartiteGraph::new(1, 4, 3, [(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap()
    }

    /// Complete bipartite 2 x 3, t = 3.
    pub fn g2() -> BipartiteGraph {
        BipartiteGraph::new(2, 3, 3, [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap()
    }

    /// Split completion of `g2`.
    pub fn h2() -> SplitGraph {
        SplitGraph::new(2, 3, 3, [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap()
    }

    /// Two disjoint 3-hyperedges on six vertices.
    pub fn hy1() -> Hypergraph {
        Hypergraph::new(6, 3, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap()
    }
}
