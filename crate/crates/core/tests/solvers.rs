mod common;

use clawdel::oracle::{self, OracleLimits};
use clawdel::solvers::{self, Algorithm};
use clawdel::BipartiteGraph;
use common::*;
use proptest::prelude::*;

fn arb_weighted() -> impl Strategy<Value = BipartiteGraph> {
    (1usize..=5, 1usize..=8, 3usize..=4, 0.2f64..0.9, any::<u64>()).prop_map(|(n_a, n_b, t, p, seed)| {
        let mut r = rng(seed);
        let g = random_bipartite(&mut r, n_a, n_b, t, p, 0);
        random_weights(&mut r, g, 4)
    })
}

fn arb_unit_small() -> impl Strategy<Value = BipartiteGraph> {
    (1usize..=4, 1usize..=6, 3usize..=4, 0.3f64..0.9, any::<u64>())
        .prop_map(|(n_a, n_b, t, p, seed)| random_bipartite(&mut rng(seed), n_a, n_b, t, p, 0))
}

fn brute_opt(g: &BipartiteGraph) -> clawdel::Rational {
    (0..1u32 << g.vertex_count())
        .map(|m| subset(m, g.vertex_count()))
        .filter(|s| bipartite_claw_free(g, s))
        .map(|s| g.weight_of(&s))
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn deletion_solvers_are_minimal_and_bounded(g in arb_weighted()) {
        let best = brute_opt(&g);
        prop_assert_eq!(&oracle::exact_min_osbcd(&g).unwrap().1, &best);
        for alg in [Algorithm::PrimalDual, Algorithm::LocalRatio, Algorithm::Exact] {
            let rep = solvers::solve(&g, alg, &OracleLimits::default()).unwrap();
            prop_assert!(bipartite_minimal(&g, &rep.solution), "{} output {{{}}}", alg, rep.solution);
            prop_assert!(rep.dual_lower_bound <= best, "{} bound above OPT", alg);
            prop_assert!(rep.cost >= best);
        }
        let lr = solvers::local_ratio_solve(&g);
        prop_assert!(lr.cost <= q(g.t() as i64 + 1) * &best);
        prop_assert_eq!(solvers::exact_solve(&g, &OracleLimits::default()).unwrap().cost, best);
    }

    #[test]
    fn cost_within_theta_of_worst_minimal_set(g in arb_unit_small()) {
        let rep = solvers::primal_dual_solve(&g);
        let best = brute_opt(&g);
        let worst = oracle::enumerate_minimal_osbcd(&g)
            .unwrap()
            .iter()
            .filter_map(|s| solvers::theta_of_solution(&g, s).ok())
            .max()
            .unwrap_or(q(0));
        if best > q(0) {
            prop_assert!(rep.cost <= worst * &best, "cost {} OPT {}", rep.cost, best);
        }
    }

    #[test]
    fn max_subgraph_half_of_total(g in arb_weighted()) {
        let out = solvers::max_subgraph_solve(&g);
        let removed = g.all_vertices().difference(&out.kept);
        prop_assert!(bipartite_claw_free(&g, &removed));
        prop_assert!(q(2) * &out.weight >= g.total_weight());
        prop_assert_eq!(&out.weight, &g.weight_of(&out.kept));
    }
}
