//! One-sided t-claw detection, feasibility and minimality of deletion
//! sets, and reverse deletion.

use thiserror::Error;

use crate::graph::{BipartiteGraph, GraphError, Rational, SplitGraph, VertexId, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClawError {
    #[error("deletion set is infeasible: claw centered at {} remains", .0.center)]
    Infeasible(ClawWitness),
    #[error("vertex {0} appears twice in the deletion order")]
    DuplicateVertex(VertexId),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A center vertex and `t` pairwise non-adjacent neighbors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClawWitness {
    pub center: VertexId,
    pub leaves: Vec<VertexId>,
}

impl ClawWitness {
    /// Center followed by leaves.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        std::iter::once(self.center).chain(self.leaves.iter().copied())
    }
}

/// A vertex-weighted graph whose forbidden structures are t-claws.
///
/// Masks are indexed by vertex id with index 0 unused.
pub trait ClawGraph {
    fn vertex_count(&self) -> usize;

    fn weight(&self, v: VertexId) -> &Rational;

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError>;

    /// Lowest-centered claw in the graph minus `removed`.
    fn find_claw_masked(&self, removed: &[bool]) -> Option<ClawWitness>;

    /// Vertices to branch on when every feasible completion must delete one
    /// of them, skipping `forbidden` ones. `None` when no claw remains; an
    /// empty vector means some claw cannot be hit.
    fn branch_set(&self, removed: &[bool], forbidden: &[bool]) -> Option<Vec<VertexId>> {
        self.find_claw_masked(removed).map(|w| w.vertices().filter(|&v| !forbidden[v]).collect())
    }
}

impl ClawGraph for BipartiteGraph {
    fn vertex_count(&self) -> usize {
        BipartiteGraph::vertex_count(self)
    }

    fn weight(&self, v: VertexId) -> &Rational {
        BipartiteGraph::weight(self, v)
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        BipartiteGraph::check_vertex(self, v)
    }

    fn find_claw_masked(&self, removed: &[bool]) -> Option<ClawWitness> {
        let t = self.t();
        self.a_side().filter(|&c| !removed[c]).find_map(|c| {
            let leaves: Vec<VertexId> = self.neighbors(c).iter().copied().filter(|&b| !removed[b]).take(t).collect();
            (leaves.len() == t).then_some(ClawWitness { center: c, leaves })
        })
    }

    // Picks, over all live centers, the claw with the fewest deletable
    // vertices: forbidden leaves are used first.
    fn branch_set(&self, removed: &[bool], forbidden: &[bool]) -> Option<Vec<VertexId>> {
        let t = self.t();
        let mut best: Option<Vec<VertexId>> = None;
        for c in self.a_side().filter(|&c| !removed[c]) {
            let live: Vec<VertexId> = self.neighbors(c).iter().copied().filter(|&b| !removed[b]).collect();
            if live.len() < t {
                continue;
            }
            let fixed = live.iter().filter(|&&b| forbidden[b]).count();
            let mut choice = Vec::with_capacity(t + 1);
            if !forbidden[c] {
                choice.push(c);
            }
            choice.extend(live.iter().copied().filter(|&b| !forbidden[b]).take(t.saturating_sub(fixed)));
            if best.as_ref().is_none_or(|b| choice.len() < b.len()) {
                let done = choice.is_empty();
                best = Some(choice);
                if done {
                    break;
                }
            }
        }
        best
    }
}

impl ClawGraph for SplitGraph {
    fn vertex_count(&self) -> usize {
        SplitGraph::vertex_count(self)
    }

    fn weight(&self, v: VertexId) -> &Rational {
        SplitGraph::weight(self, v)
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        SplitGraph::check_vertex(self, v)
    }

    // At most one leaf can sit in the clique. A center with t live
    // independent neighbors uses the t lowest; one with exactly t - 1 needs
    // a live clique vertex adjacent to none of them.
    fn find_claw_masked(&self, removed: &[bool]) -> Option<ClawWitness> {
        let t = self.t();
        self.clique_side().filter(|&c| !removed[c]).find_map(|c| {
            let mut leaves: Vec<VertexId> =
                self.cross_neighbors(c).iter().copied().filter(|&b| !removed[b]).take(t).collect();
            if leaves.len() == t {
                return Some(ClawWitness { center: c, leaves });
            }
            if leaves.len() + 1 != t {
                return None;
            }
            let extra =
                self.clique_side().find(|&d| d != c && !removed[d] && leaves.iter().all(|&b| !self.adjacent(d, b)))?;
            leaves.insert(0, extra);
            Some(ClawWitness { center: c, leaves })
        })
    }
}

fn removed_mask<G: ClawGraph>(g: &G, removed: &VertexSet) -> Vec<bool> {
    removed.mask(g.vertex_count())
}

pub fn find_claw(g: &BipartiteGraph, removed: &VertexSet) -> Option<ClawWitness> {
    g.find_claw_masked(&removed_mask(g, removed))
}

pub fn find_claw_split(h: &SplitGraph, removed: &VertexSet) -> Option<ClawWitness> {
    h.find_claw_masked(&removed_mask(h, removed))
}

/// Whether deleting `s` leaves no claw.
pub fn is_feasible<G: ClawGraph>(g: &G, s: &VertexSet) -> bool {
    g.find_claw_masked(&removed_mask(g, s)).is_none()
}

/// Whether `s` is feasible and no `s \ {v}` is. Bails out with the
/// remaining claw when `s` is infeasible.
pub fn is_minimal<G: ClawGraph>(g: &G, s: &VertexSet) -> Result<bool, ClawError> {
    s.iter().try_for_each(|v| g.check_vertex(v))?;
    let mut mask = removed_mask(g, s);
    if let Some(w) = g.find_claw_masked(&mask) {
        return Err(ClawError::Infeasible(w));
    }
    for v in s.iter() {
        mask[v] = false;
        let redundant = g.find_claw_masked(&mask).is_none();
        mask[v] = true;
        if redundant {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scans `ordered` from the last-added vertex back to the first, dropping
/// each vertex whose removal keeps the set feasible.
pub fn reverse_delete<G: ClawGraph>(g: &G, ordered: &[VertexId]) -> Result<VertexSet, ClawError> {
    let mut mask = vec![false; g.vertex_count() + 1];
    for &v in ordered {
        g.check_vertex(v)?;
        if mask[v] {
            return Err(ClawError::DuplicateVertex(v));
        }
        mask[v] = true;
    }
    if let Some(w) = g.find_claw_masked(&mask) {
        return Err(ClawError::Infeasible(w));
    }
    for &v in ordered.iter().rev() {
        mask[v] = false;
        if g.find_claw_masked(&mask).is_some() {
            mask[v] = true;
        }
    }
    Ok(VertexSet::from_mask(&mask))
}
