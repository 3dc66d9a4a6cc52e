//! Deletion-set solvers: the primal-dual algorithm over the dual polymatroid
//! constraints, a local-ratio baseline on claw witnesses, an exact wrapper,
//! the max claw-free subgraph heuristic, and split-graph solving through
//! the bipartite shadow.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

use crate::claw::{self, is_feasible, reverse_delete, ClawError, ClawGraph, ClawWitness};
use crate::graph::{BipartiteGraph, Rational, SplitGraph, VertexId, VertexSet};
use crate::oracle::{self, OracleError, OracleLimits};
use crate::polymatroid::PolymatroidContext;
use crate::reductions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    PrimalDual,
    LocalRatio,
    Exact,
    MaxSubgraph,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] =
        [Algorithm::PrimalDual, Algorithm::LocalRatio, Algorithm::Exact, Algorithm::MaxSubgraph];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::PrimalDual => "primal-dual",
            Algorithm::LocalRatio => "local-ratio",
            Algorithm::Exact => "exact",
            Algorithm::MaxSubgraph => "max-subgraph",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("shadow solution {solution:?} leaves split claw centered at {} with leaves {:?}", .witness.center, .witness.leaves)]
    ShadowMismatch { solution: VertexSet, witness: ClawWitness },
    #[error("deletion set {0} is not minimal")]
    NotMinimal(VertexSet),
    #[error("theta is undefined: f^d(E) = 0 but the set is nonempty")]
    ThetaUndefined,
    #[error("{0} does not produce a deletion set")]
    Unsupported(Algorithm),
    #[error(transparent)]
    Claw(#[from] ClawError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// One raise of the single active dual variable `y_S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub active: VertexSet,
    pub raise: Rational,
    pub tight: VertexId,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DualTrace {
    pub steps: Vec<TraceStep>,
}

impl DualTrace {
    /// `step <k> raise <ε> tight <v> active <ids...>`, one line per raise.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "trace {}", self.steps.len()).unwrap();
        for (k, s) in self.steps.iter().enumerate() {
            writeln!(out, "step {} raise {} tight {} active {}", k + 1, s.raise, s.tight, s.active).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub algorithm: Algorithm,
    pub solution: VertexSet,
    pub cost: Rational,
    pub dual_lower_bound: Rational,
    pub theta: Option<Rational>,
    pub iterations: usize,
    pub elapsed: Duration,
    pub trace: Option<DualTrace>,
}

impl SolveReport {
    /// The documented JSON object. `time_ms` is 0 when timing is off, which
    /// keeps repeated runs byte-identical.
    pub fn to_json(&self, timing: bool) -> Value {
        json!({
            "algorithm": self.algorithm.name(),
            "solution": self.solution.to_vec(),
            "cost": self.cost.to_string(),
            "lower_bound": self.dual_lower_bound.to_string(),
            "theta": self.theta.as_ref().map(|t| t.to_string()),
            "iterations": self.iterations,
            "time_ms": if timing { millis(self.elapsed) } else { 0.0 },
        })
    }
}

pub(crate) fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Primal-dual over the dual polymatroid constraints.
///
/// The active set `S` starts at `V`. Each round evaluates
/// `c_v = f_t^d(δ_S(v))` on `G[S]`, raises `y_S` by the smallest
/// `residual(v) / c_v` over `c_v > 0`, moves the lowest-id tight vertex out
/// of `S`, and stops once the removed vertices form a deletion set. Reverse
/// deletion then makes the result minimal.
pub fn primal_dual_solve(g: &BipartiteGraph) -> SolveReport {
    let start = Instant::now();
    let n = g.vertex_count();
    let mut alive = vec![true; n + 1];
    alive[0] = false;
    let mut removed = vec![false; n + 1];
    let mut residual: Vec<Rational> =
        (0..=n).map(|v| if v == 0 { Rational::zero() } else { g.weight(v).clone() }).collect();
    let mut order = Vec::new();
    let mut steps = Vec::new();
    let mut lower = Rational::zero();

    while g.find_claw_masked(&removed).is_some() {
        let ctx = PolymatroidContext::from_alive(g, alive.clone());
        let coeff: Vec<u64> = (0..=n).map(|v| ctx.star_dual(v)).collect();
        let mut raise: Option<(Rational, VertexId)> = None;
        for v in (1..=n).filter(|&v| alive[v] && coeff[v] > 0) {
            let ratio = &residual[v] / Rational::from_integer(coeff[v].into());
            if raise.as_ref().is_none_or(|(eps, _)| ratio < *eps) {
                raise = Some((ratio, v));
            }
        }
        // A remaining claw means an active A-vertex in G[S], whose
        // coefficient is positive.
        let (eps, tight) = raise.expect("claw present but every coefficient is zero");
        for v in (1..=n).filter(|&v| alive[v] && coeff[v] > 0) {
            residual[v] -= &eps * Rational::from_integer(coeff[v].into());
        }
        lower += &eps * Rational::from_integer(ctx.dual_rank_of_ground().into());
        steps.push(TraceStep { active: VertexSet::from_mask(&alive), raise: eps, tight });
        alive[tight] = false;
        removed[tight] = true;
        order.push(tight);
    }

    let solution = reverse_delete(g, &order).expect("removed vertices form a deletion set");
    let theta = theta_of_solution(g, &solution).ok();
    SolveReport {
        algorithm: Algorithm::PrimalDual,
        cost: g.weight_of(&solution),
        solution,
        dual_lower_bound: lower,
        theta,
        iterations: steps.len(),
        elapsed: start.elapsed(),
        trace: Some(DualTrace { steps }),
    }
}

/// `Σ_{v ∈ S} f_t^d(δ(v)) / f_t^d(E)` for a minimal deletion set `S`.
pub fn theta_of_solution(g: &BipartiteGraph, s: &VertexSet) -> Result<Rational, SolveError> {
    if !claw::is_minimal(g, s)? {
        return Err(SolveError::NotMinimal(s.clone()));
    }
    let ctx = PolymatroidContext::new(g);
    let whole = ctx.dual_rank_of_ground();
    if whole == 0 {
        return if s.is_empty() { Ok(Rational::zero()) } else { Err(SolveError::ThetaUndefined) };
    }
    let sum: u64 = s.iter().map(|v| ctx.star_dual(v)).sum();
    Ok(Rational::new(sum.into(), whole.into()))
}

fn local_ratio_on<G: ClawGraph>(g: &G) -> (Vec<VertexId>, Rational, usize) {
    let n = g.vertex_count();
    let mut residual: Vec<Rational> =
        (0..=n).map(|v| if v == 0 { Rational::zero() } else { g.weight(v).clone() }).collect();
    let mut removed = vec![false; n + 1];
    let mut order = Vec::new();
    let mut lower = Rational::zero();
    let mut rounds = 0;
    while let Some(w) = g.find_claw_masked(&removed) {
        let mut members: Vec<VertexId> = w.vertices().collect();
        members.sort_unstable();
        let eps = members.iter().map(|&v| residual[v].clone()).min().expect("claw has vertices");
        for &v in &members {
            residual[v] -= &eps;
            if residual[v].is_zero() {
                removed[v] = true;
                order.push(v);
            }
        }
        lower += eps;
        rounds += 1;
    }
    (order, lower, rounds)
}

/// Local-ratio on claw witnesses: subtract the smallest residual weight from
/// all `t + 1` vertices of the current claw, delete the ones that hit zero.
/// The subtracted amounts sum to a lower bound on the optimum.
pub fn local_ratio_solve(g: &BipartiteGraph) -> SolveReport {
    let start = Instant::now();
    let (order, lower, rounds) = local_ratio_on(g);
    let solution = reverse_delete(g, &order).expect("zeroed vertices form a deletion set");
    SolveReport {
        algorithm: Algorithm::LocalRatio,
        cost: g.weight_of(&solution),
        theta: theta_of_solution(g, &solution).ok(),
        solution,
        dual_lower_bound: lower,
        iterations: rounds,
        elapsed: start.elapsed(),
        trace: None,
    }
}

/// Optimal deletion set from the oracle, made inclusion-minimal.
pub fn exact_solve(g: &BipartiteGraph, limits: &OracleLimits) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let (set, cost) = oracle::exact_min_osbcd_with(g, limits)?;
    let solution = reverse_delete(g, &set.to_vec())?;
    debug_assert_eq!(g.weight_of(&solution), cost);
    Ok(SolveReport {
        algorithm: Algorithm::Exact,
        cost: g.weight_of(&solution),
        theta: theta_of_solution(g, &solution).ok(),
        solution,
        dual_lower_bound: cost,
        iterations: 0,
        elapsed: start.elapsed(),
        trace: None,
    })
}

pub fn solve(g: &BipartiteGraph, algorithm: Algorithm, limits: &OracleLimits) -> Result<SolveReport, SolveError> {
    match algorithm {
        Algorithm::PrimalDual => Ok(primal_dual_solve(g)),
        Algorithm::LocalRatio => Ok(local_ratio_solve(g)),
        Algorithm::Exact => exact_solve(g, limits),
        Algorithm::MaxSubgraph => Err(SolveError::Unsupported(algorithm)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeptSide {
    Complement,
    ASide,
    BSide,
}

#[derive(Debug, Clone)]
pub struct MaxSubgraphOutcome {
    pub kept: VertexSet,
    pub weight: Rational,
    pub choice: KeptSide,
    pub deletion: SolveReport,
    pub elapsed: Duration,
}

impl MaxSubgraphOutcome {
    pub fn to_json(&self, timing: bool) -> Value {
        json!({
            "algorithm": Algorithm::MaxSubgraph.name(),
            "solution": self.kept.to_vec(),
            "cost": self.weight.to_string(),
            "lower_bound": Value::Null,
            "theta": Value::Null,
            "iterations": self.deletion.iterations,
            "time_ms": if timing { millis(self.elapsed) } else { 0.0 },
        })
    }
}

fn heaviest(candidates: [(KeptSide, VertexSet, Rational); 3]) -> (KeptSide, VertexSet, Rational) {
    let mut best: Option<(KeptSide, VertexSet, Rational)> = None;
    for c in candidates {
        if best.as_ref().is_none_or(|b| c.2 > b.2) {
            best = Some(c);
        }
    }
    best.expect("three candidates")
}

/// Keeps the heaviest of `V \ S`, `A` and `B`, where `S` is the primal-dual
/// deletion set. Ties prefer `V \ S`, then `A`.
pub fn max_subgraph_solve(g: &BipartiteGraph) -> MaxSubgraphOutcome {
    let start = Instant::now();
    let deletion = primal_dual_solve(g);
    let complement = g.all_vertices().difference(&deletion.solution);
    let (a, b) = (g.a_set(), g.b_set());
    let (choice, kept, weight) = heaviest([
        (KeptSide::Complement, complement.clone(), g.weight_of(&complement)),
        (KeptSide::ASide, a.clone(), g.weight_of(&a)),
        (KeptSide::BSide, b.clone(), g.weight_of(&b)),
    ]);
    MaxSubgraphOutcome { kept, weight, choice, deletion, elapsed: start.elapsed() }
}

fn check_on_split(h: &SplitGraph, report: &SolveReport) -> Result<(), SolveError> {
    match claw::find_claw_split(h, &report.solution) {
        None => Ok(()),
        Some(witness) => Err(SolveError::ShadowMismatch { solution: report.solution.clone(), witness }),
    }
}

/// Solves the cross-edge bipartite shadow of `h` and re-checks the answer
/// against split-graph claws.
pub fn split_solve(h: &SplitGraph, algorithm: Algorithm, limits: &OracleLimits) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let (shadow, _) = reductions::split_to_osbcd(h);
    let mut report = solve(&shadow, algorithm, limits)?;
    check_on_split(h, &report)?;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// The max-subgraph heuristic on the shadow; the kept set is re-checked
/// against split-graph claws.
pub fn split_max_subgraph_solve(h: &SplitGraph) -> Result<MaxSubgraphOutcome, SolveError> {
    let start = Instant::now();
    let (shadow, _) = reductions::split_to_osbcd(h);
    let mut outcome = max_subgraph_solve(&shadow);
    let deleted = h.all_vertices().difference(&outcome.kept);
    if let Some(witness) = claw::find_claw_split(h, &deleted) {
        return Err(SolveError::ShadowMismatch { solution: deleted, witness });
    }
    outcome.elapsed = start.elapsed();
    Ok(outcome)
}

/// Whether `s` is a deletion set of the given claw graph.
pub fn verify<G: ClawGraph>(g: &G, s: &VertexSet) -> bool {
    is_feasible(g, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{g1, g2, h2};
    use crate::polymatroid::f_dual_delta_within;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn primal_dual_on_g1() {
        let r = primal_dual_solve(&g1());
        assert_eq!(r.solution, VertexSet::from([1]));
        assert_eq!(r.cost, q(1));
        assert_eq!(r.dual_lower_bound, q(1));
        assert_eq!(r.theta, Some(q(1)));
        let trace = r.trace.unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.steps[0].raise, Rational::new(1.into(), 4.into()));
        assert_eq!(trace.steps[0].tight, 1);
    }

    #[test]
    fn primal_dual_on_g2() {
        let r = primal_dual_solve(&g2());
        assert_eq!(r.cost, q(1));
        assert_eq!(r.solution, VertexSet::from([3]));
        assert_eq!(r.dual_lower_bound, q(1));
    }

    #[test]
    fn primal_dual_on_claw_free_graph() {
        let g = BipartiteGraph::new(2, 2, 3, [(1, 3), (1, 4), (2, 3)]).unwrap();
        let r = primal_dual_solve(&g);
        assert!(r.solution.is_empty());
        assert_eq!(r.cost, q(0));
        assert_eq!(r.iterations, 0);
        assert_eq!(r.theta, Some(q(0)));
    }

    #[test]
    fn zero_weight_vertex_is_tight_immediately() {
        let g = g1().with_weight(5, q(0)).unwrap();
        let r = primal_dual_solve(&g);
        let steps = r.trace.unwrap().steps;
        assert_eq!(steps[0].raise, q(0));
        assert_eq!(steps[0].tight, 5);
        assert!(is_feasible(&g, &r.solution));
    }

    #[test]
    fn trace_loads_are_tight_at_selected_vertices() {
        let g = g1().with_weights([(1, q(3)), (2, q(1)), (3, q(2))]).unwrap();
        let r = primal_dual_solve(&g);
        let steps = r.trace.unwrap().steps;
        for v in g.vertices() {
            let load = steps
                .iter()
                .filter(|s| s.active.contains(v))
                .fold(q(0), |acc, s| acc + &s.raise * q(f_dual_delta_within(&g, v, &s.active).unwrap() as i64));
            assert!(load <= *g.weight(v));
            if steps.iter().any(|s| s.tight == v) {
                assert_eq!(&load, g.weight(v));
            }
        }
    }

    #[test]
    fn theta_values() {
        let g = g1();
        assert_eq!(theta_of_solution(&g, &VertexSet::from([1])).unwrap(), q(1));
        assert_eq!(theta_of_solution(&g, &VertexSet::from([2, 3])).unwrap(), q(1));
        assert_eq!(theta_of_solution(&g2(), &VertexSet::from([3])).unwrap(), q(1));
        assert!(theta_of_solution(&g, &VertexSet::from([1, 2])).is_err());
    }

    #[test]
    fn local_ratio_examples() {
        let r = local_ratio_solve(&g1());
        assert_eq!(r.solution, VertexSet::from([1]));
        assert_eq!(r.cost, q(1));
        assert_eq!(r.dual_lower_bound, q(1));

        let free = BipartiteGraph::new(1, 2, 3, [(1, 2), (1, 3)]).unwrap();
        assert!(local_ratio_solve(&free).solution.is_empty());

        let heavy = g1().with_weight(1, q(10)).unwrap();
        let r = local_ratio_solve(&heavy);
        assert_eq!(r.solution, VertexSet::from([2, 3]));
        assert!(r.cost <= q(4) * q(2));
    }

    #[test]
    fn max_subgraph_examples() {
        let out = max_subgraph_solve(&g1());
        assert_eq!(out.kept, VertexSet::from([2, 3, 4, 5]));
        assert_eq!(out.weight, q(4));

        let free = BipartiteGraph::new(1, 2, 3, [(1, 2), (1, 3)]).unwrap();
        let out = max_subgraph_solve(&free);
        assert_eq!(out.kept, free.all_vertices());
        assert_eq!(out.choice, KeptSide::Complement);

        let out = max_subgraph_solve(&g2());
        assert_eq!(out.weight, q(4));
    }

    #[test]
    fn split_examples() {
        let r = split_solve(&h2(), Algorithm::PrimalDual, &OracleLimits::default()).unwrap();
        assert_eq!(r.cost, q(1));

        let lonely = SplitGraph::new(1, 2, 3, []).unwrap();
        let r = split_solve(&lonely, Algorithm::PrimalDual, &OracleLimits::default()).unwrap();
        assert!(r.solution.is_empty());

        let star = SplitGraph::new(1, 4, 3, [(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        let r = split_solve(&star, Algorithm::PrimalDual, &OracleLimits::default()).unwrap();
        assert_eq!(r.solution, primal_dual_solve(&g1()).solution);
    }

    #[test]
    fn split_mismatch_is_reported() {
        // Shadow is claw-free but vertex 2 is a clique leaf of a split claw.
        let h = SplitGraph::new(2, 2, 3, [(1, 3), (1, 4)]).unwrap();
        let err = split_solve(&h, Algorithm::PrimalDual, &OracleLimits::default()).unwrap_err();
        assert!(matches!(err, SolveError::ShadowMismatch { .. }));
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("greedy".parse::<Algorithm>().is_err());
    }
}
