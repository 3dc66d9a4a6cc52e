//! Independent reference implementations used by the integration tests.
//! Nothing here calls the library's claw, polymatroid or solver code.

#![allow(dead_code)]

use clawdel::{BipartiteGraph, Rational, SplitGraph, VertexId, VertexSet};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Bipartite graph with each cross pair present with probability `p`;
/// A-vertices are then topped up to at least `min_a_degree` neighbors.
pub fn random_bipartite(
    rng: &mut ChaCha8Rng,
    n_a: usize,
    n_b: usize,
    t: usize,
    p: f64,
    min_a_degree: usize,
) -> BipartiteGraph {
    let mut edges = Vec::new();
    for a in 1..=n_a {
        let mut nb: Vec<VertexId> = (n_a + 1..=n_a + n_b).filter(|_| rng.gen_bool(p)).collect();
        let mut spare: Vec<VertexId> = (n_a + 1..=n_a + n_b).filter(|b| !nb.contains(b)).collect();
        while nb.len() < min_a_degree.min(n_b) {
            nb.push(spare.swap_remove(rng.gen_range(0..spare.len())));
        }
        edges.extend(nb.into_iter().map(|b| (a, b)));
    }
    BipartiteGraph::new(n_a, n_b, t, edges).unwrap()
}

pub fn random_weights(rng: &mut ChaCha8Rng, g: BipartiteGraph, hi: i64) -> BipartiteGraph {
    let w: Vec<(VertexId, Rational)> = g.vertices().map(|v| (v, q(rng.gen_range(0..=hi)))).collect();
    g.with_weights(w).unwrap()
}

/// Live-neighbor count of every A-vertex after deleting `removed`.
pub fn bipartite_claw_free(g: &BipartiteGraph, removed: &VertexSet) -> bool {
    let mut live = vec![0usize; g.vertex_count() + 1];
    for e in g.edges() {
        if !removed.contains(e.a) && !removed.contains(e.b) {
            live[e.a] += 1;
        }
    }
    g.a_side().all(|a| removed.contains(a) || live[a] < g.t())
}

pub fn bipartite_minimal(g: &BipartiteGraph, s: &VertexSet) -> bool {
    bipartite_claw_free(g, s)
        && s.iter().all(|v| {
            let mut smaller = s.clone();
            smaller.remove(v);
            !bipartite_claw_free(g, &smaller)
        })
}

/// Subsets of `1..=n` as bit masks.
pub fn subset(mask: u32, n: usize) -> VertexSet {
    (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect()
}

/// Brute-force induced K_{1,t} search in a split graph: the center is any
/// live vertex; leaves are pairwise non-adjacent live neighbors.
pub fn split_claw_free(h: &SplitGraph, removed: &VertexSet) -> bool {
    let n = h.vertex_count();
    let live: Vec<VertexId> = (1..=n).filter(|&v| !removed.contains(v)).collect();
    !live.iter().any(|&c| {
        let nb: Vec<VertexId> = live.iter().copied().filter(|&u| u != c && h.adjacent(c, u)).collect();
        has_independent(h, &nb, h.t(), &mut Vec::new())
    })
}

fn has_independent(h: &SplitGraph, pool: &[VertexId], need: usize, chosen: &mut Vec<VertexId>) -> bool {
    if need == 0 {
        return true;
    }
    pool.iter().enumerate().any(|(i, &v)| {
        if chosen.iter().any(|&u| h.adjacent(u, v)) {
            return false;
        }
        chosen.push(v);
        let found = has_independent(h, &pool[i + 1..], need - 1, chosen);
        chosen.pop();
        found
    })
}

/// Edge lists as index pairs into `g.edges()`.
pub fn edge_pairs(g: &BipartiteGraph) -> Vec<(VertexId, VertexId)> {
    g.edges().iter().map(|e| (e.a, e.b)).collect()
}

/// `2 Σ_{active a} min(t - 1, d_F(a))` where active means degree at least
/// `t` among `ground`.
pub struct RankOracle {
    pub t: usize,
    pub ground: Vec<(VertexId, VertexId)>,
    active: Vec<bool>,
}

impl RankOracle {
    pub fn new(t: usize, n: usize, ground: Vec<(VertexId, VertexId)>) -> Self {
        let mut deg = vec![0usize; n + 1];
        for &(a, _) in &ground {
            deg[a] += 1;
        }
        let active = deg.iter().map(|&d| d >= t).collect();
        RankOracle { t, ground, active }
    }

    pub fn on_induced(g: &BipartiteGraph, s: &VertexSet) -> Self {
        let ground = edge_pairs(g).into_iter().filter(|&(a, b)| s.contains(a) && s.contains(b)).collect();
        RankOracle::new(g.t(), g.vertex_count(), ground)
    }

    pub fn is_active(&self, a: VertexId) -> bool {
        self.active[a]
    }

    /// `f` on the edges with indices in `mask` (bit i = ground[i]).
    pub fn rank_mask(&self, mask: u64) -> i64 {
        let mut deg = std::collections::HashMap::<VertexId, usize>::new();
        for (i, &(a, _)) in self.ground.iter().enumerate() {
            if mask >> i & 1 == 1 {
                *deg.entry(a).or_default() += 1;
            }
        }
        2 * deg.into_iter().filter(|&(a, _)| self.active[a]).map(|(_, d)| d.min(self.t - 1) as i64).sum::<i64>()
    }

    pub fn rank(&self, f: &[(VertexId, VertexId)]) -> i64 {
        self.rank_mask(self.mask_of(f))
    }

    pub fn mask_of(&self, f: &[(VertexId, VertexId)]) -> u64 {
        f.iter()
            .map(|e| 1u64 << self.ground.iter().position(|g| g == e).expect("edge in ground set"))
            .fold(0, |m, b| m | b)
    }

    pub fn full(&self) -> u64 {
        if self.ground.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.ground.len()) - 1
        }
    }

    /// `Σ_{j ∈ S} f({j}) - (f(N) - f(N \ S))`.
    pub fn dual_mask(&self, s: u64) -> i64 {
        let singles: i64 = (0..self.ground.len()).filter(|i| s >> i & 1 == 1).map(|i| self.rank_mask(1 << i)).sum();
        singles - (self.rank_mask(self.full()) - self.rank_mask(self.full() & !s))
    }

    pub fn dual(&self, f: &[(VertexId, VertexId)]) -> i64 {
        self.dual_mask(self.mask_of(f))
    }

    pub fn star(&self, v: VertexId) -> Vec<(VertexId, VertexId)> {
        self.ground.iter().copied().filter(|&(a, b)| a == v || b == v).collect()
    }
}
