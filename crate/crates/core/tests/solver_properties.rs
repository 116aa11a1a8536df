use proptest::prelude::*;

use robber_core::families::random_connected_max_degree;
use robber_core::solver::{
    is_k_locatable, metric_dimension, rlp, BeliefState, BeliefValue, Budget, GameRules, Rlp, SolveStatus, Solver,
    Variant,
};
use robber_core::VertexSet;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn locatability_is_monotone_in_k(n in 2usize..9, delta in 2usize..5, seed in any::<u64>()) {
        let g = random_connected_max_degree(n, delta, seed).unwrap();
        let mut prev = false;
        for k in 1..=3 {
            let r = is_k_locatable(&g, &GameRules::new(k), &Budget::default()).unwrap();
            let now = r.status == SolveStatus::Locatable;
            prop_assert!(!prev || now);
            prev = now;
        }
    }

    #[test]
    fn rlp_at_most_metric_dimension(n in 2usize..9, delta in 2usize..5, seed in any::<u64>()) {
        let g = random_connected_max_degree(n, delta, seed).unwrap();
        let (mu, witness) = metric_dimension(&g);
        prop_assert_eq!(witness.len(), mu);
        match rlp(&g, Variant::FreeMove, mu, &Budget::default()).unwrap().value {
            Rlp::Exact(k) => prop_assert!(k <= mu),
            other => prop_assert!(false, "rlp {other:?} with mu = {mu}"),
        }
    }

    #[test]
    fn subsets_of_winning_beliefs_win(n in 3usize..9, seed in any::<u64>(), picks in prop::collection::vec(any::<u64>(), 8)) {
        let g = random_connected_max_degree(n, 3, seed).unwrap();
        let rules = GameRules::new(1);
        let mut table = Solver::new(&g, rules, Budget::default()).unwrap();
        table.solve(&BeliefState::initial(&g));
        for pick in picks {
            let sub = VertexSet::from_vertices(n, (0..n).filter(|v| pick >> v & 1 == 1));
            if sub.is_empty() {
                continue;
            }
            let mut fresh = Solver::new(&g, rules, Budget::default()).unwrap();
            let r = fresh.solve(&BeliefState::new(sub.clone()).unwrap());
            let full = table.value_of(&g.full_set());
            if let BeliefValue::Winning(d) = full {
                prop_assert_eq!(r.status, SolveStatus::Locatable);
                prop_assert!(r.turn_bound.unwrap() <= d);
            }
            let sup = VertexSet::from_vertices(n, sub.iter().chain((0..n).filter(|v| pick >> (v + 16) & 1 == 1)));
            let rs = fresh.solve(&BeliefState::new(sup).unwrap());
            if rs.status == SolveStatus::Locatable {
                prop_assert_eq!(r.status, SolveStatus::Locatable);
                prop_assert!(r.turn_bound <= rs.turn_bound);
            }
        }
    }
}
