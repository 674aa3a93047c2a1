use minfill::fillings::{mpf_dual, mpf_primal, WeightedTree};
use minfill::metric::{pair_col, pairs, parse_metric_json, render_metric_json};
use minfill::random::{random_metric, seeded};
use minfill::rational::{frac, int};
use minfill::trees::enumerate_topologies;
use minfill::{is_filling, parse_metric, render_metric, MetricSpace, Rational};
use num_traits::Zero;
use proptest::prelude::*;

/// Random rational pseudo-metric: a random metric from the library
/// generator, optionally with two points merged.
fn space(n: usize) -> impl Strategy<Value = MetricSpace> {
    (any::<u64>(), any::<bool>()).prop_map(move |(seed, merge)| {
        let mut rng = seeded(seed);
        if merge {
            minfill::random::random_pseudo_metric(&mut rng, n)
        } else {
            random_metric(&mut rng, n)
        }
    })
}

/// Arbitrary symmetric matrix with zero diagonal, not necessarily metric.
fn raw(n: usize) -> impl Strategy<Value = MetricSpace> {
    prop::collection::vec((0i64..50, 1i64..7), n * (n - 1) / 2).prop_map(move |entries| {
        let d: Vec<Rational> = entries.into_iter().map(|(p, q)| frac(p, q)).collect();
        MetricSpace::from_pair_vector(n, &d, false).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn text_and_json_round_trip(m in (2usize..8).prop_flat_map(raw)) {
        prop_assert_eq!(parse_metric(&render_metric(&m), false).unwrap(), m.clone());
        prop_assert_eq!(parse_metric_json(&render_metric_json(&m), false).unwrap(), m);
    }

    #[test]
    fn pair_columns_increase(n in 2usize..12) {
        let cols: Vec<usize> = pairs(n).map(|(i, j)| pair_col(i, j, n)).collect();
        prop_assert!(cols.windows(2).all(|w| w[0] + 1 == w[1]));
        prop_assert_eq!(cols.len(), n * (n - 1) / 2);
    }

    #[test]
    fn weight_is_positively_homogeneous(m in space(5), p in 1i64..9, q in 1i64..9, pick in 0usize..15) {
        let tree = &enumerate_topologies(5).unwrap()[pick];
        let c = frac(p, q);
        let base = mpf_dual(&m, tree).unwrap().weight;
        prop_assert_eq!(mpf_dual(&m.scaled(&c), tree).unwrap().weight, base * c);
    }

    #[test]
    fn weight_is_monotone_in_distances(m in space(5), bump in 0usize..10, pick in 0usize..15) {
        let tree = &enumerate_topologies(5).unwrap()[pick];
        let mut d = m.pair_vector();
        d[bump] += int(1);
        // raising one distance can break the triangle inequality; the LP does not care
        let bigger = MetricSpace::from_pair_vector(5, &d, false).unwrap();
        prop_assert!(mpf_dual(&bigger, tree).unwrap().weight >= mpf_dual(&m, tree).unwrap().weight);
    }

    #[test]
    fn signed_minimum_never_exceeds_classical(m in space(5), pick in 0usize..15) {
        let tree = &enumerate_topologies(5).unwrap()[pick];
        let (free, free_w) = mpf_primal(&m, tree, false).unwrap();
        let (nonneg, nonneg_w) = mpf_primal(&m, tree, true).unwrap();
        prop_assert!(free <= nonneg);
        prop_assert!(is_filling(&m, &free_w).unwrap());
        prop_assert!(is_filling(&m, &nonneg_w).unwrap());
        prop_assert!(nonneg_w.is_nonnegative());
    }

    #[test]
    fn relabeling_points_and_leaves_together_preserves_weight(m in space(5), pick in 0usize..15, shift in 1usize..5) {
        let tree = &enumerate_topologies(5).unwrap()[pick];
        let perm: Vec<usize> = (0..5).map(|i| (i + shift) % 5).collect();
        let moved_tree = tree.relabel(&perm).unwrap();
        // point perm[i] of the moved space is point i of the original
        let mut inverse = vec![0; 5];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let moved = MetricSpace::from_fn(5, false, |i, j| m.dist(inverse[i], inverse[j]).clone()).unwrap();
        prop_assert_eq!(mpf_dual(&moved, &moved_tree).unwrap().weight, mpf_dual(&m, tree).unwrap().weight);
    }

    #[test]
    fn optimizers_have_tight_pairs(m in space(6), pick in 0usize..105) {
        let tree = &enumerate_topologies(6).unwrap()[pick];
        let r = mpf_dual(&m, tree).unwrap();
        // an optimum has no slack: lowering any single weight loses the filling property
        for e in 0..r.optimal_omega.weights.len() {
            let mut w = r.optimal_omega.weights.clone();
            w[e] -= frac(1, 1000);
            let lowered = WeightedTree::new(tree.clone(), w).unwrap();
            prop_assert!(!is_filling(&m, &lowered).unwrap());
        }
        prop_assert!(!r.weight.is_zero() || m.pair_vector().iter().all(Zero::is_zero));
    }
}
