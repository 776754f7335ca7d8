use edom_core::cograph::{build_cotree, solve_reservists};
use edom_core::generators::{random_cograph, random_graph, random_tree, trial_rng};
use edom_core::graph::GraphError;
use edom_core::tree::{solve_tree, RankingList};
use edom_core::{parse_instance, serialize_instance, solve_exact, Graph, GuardConfig, Turns};
use proptest::prelude::*;

fn graph_and_guards(max_n: usize) -> impl Strategy<Value = (Graph, GuardConfig)> {
    (1..=max_n, any::<u64>(), 0.0..1.0f64, any::<u64>()).prop_map(|(n, seed, p, gmask)| {
        let g = random_graph(n, p, &mut trial_rng(seed, 0));
        let d = GuardConfig::from_mask(gmask & ((1u64 << n) - 1));
        (g, d)
    })
}

fn ranking_list() -> impl Strategy<Value = RankingList> {
    prop::collection::vec(1u32..10, 0..8).prop_map(RankingList::new)
}

proptest! {
    #[test]
    fn instance_text_round_trips((g, d) in graph_and_guards(12)) {
        let text = serialize_instance(&g, &d);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(back.instance.graph, g);
        prop_assert_eq!(back.instance.guards, d);
    }

    #[test]
    fn value_is_monotone_in_guards((g, d) in graph_and_guards(7), extra in 0usize..7) {
        // an extra guard never helps the attacker
        prop_assume!(extra < g.n() && !d.contains(extra));
        let base = solve_exact(&g, &d).unwrap();
        let more = solve_exact(&g, &d.with(extra)).unwrap();
        prop_assert!(more >= base);
    }

    #[test]
    fn unguarded_graph_falls_at_once((g, _) in graph_and_guards(8)) {
        prop_assert_eq!(solve_exact(&g, &GuardConfig::empty()).unwrap(), Turns::Finite(1));
    }

    #[test]
    fn tree_solver_agrees_with_oracle(seed in any::<u64>(), n in 1usize..=10, gmask in any::<u64>()) {
        let t = random_tree(n, &mut trial_rng(seed, 1));
        let d = GuardConfig::from_mask(gmask & ((1u64 << n) - 1));
        prop_assert_eq!(solve_tree(&t, &d).unwrap().value, solve_exact(&t, &d).unwrap());
    }

    #[test]
    fn cograph_solver_agrees_with_oracle(seed in any::<u64>(), n in 1usize..=8, gmask in any::<u64>()) {
        let g = random_cograph(n, &mut trial_rng(seed, 2));
        let d = GuardConfig::from_mask(gmask & ((1u64 << n) - 1));
        let tree = build_cotree(&g).unwrap();
        prop_assert_eq!(solve_reservists(&tree, &d, 1), solve_exact(&g, &d).unwrap());
    }

    #[test]
    fn closure_dominates_its_input(l in ranking_list()) {
        let c = l.closure();
        prop_assert!(c >= l);
        prop_assert!(c.is_valid());
    }

    #[test]
    fn merge_is_commutative(a in ranking_list(), b in ranking_list()) {
        prop_assert_eq!(a.merge(&b), b.merge(&a));
    }

    #[test]
    fn out_of_range_edges_are_rejected(n in 1usize..10, v in 10usize..20) {
        prop_assert_eq!(Graph::from_edges(n, &[(0, v)]), Err(GraphError::VertexOutOfRange { vertex: v, n }));
    }
}
