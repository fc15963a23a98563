//! Property tests: structural invariants checked over generated inputs,
//! with random graphs drawn through the seeded corpus generators so every
//! failure reproduces from its seed.

use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;
use walkdist::circuits::{
    canonical_rotation, circuit_length_sums, circuits_up_to, smallest_period, WalkBudget,
};
use walkdist::corpus::{
    random_connected_multigraph, random_connected_multigraph_rational, random_expansion_digraph,
    safe_parameter, safe_parameter_rational, seeded_rng,
};
use walkdist::matrix::DenseMatrix;
use walkdist::metric::{
    metric_axioms, p_metric, transition_check, walk_distances, walk_weights, walk_weights_series,
};
use walkdist::routes::{g_inverse_check, jump_digraph, swap_transform};
use walkdist::scalar::int;
use walkdist::{WeightedMultigraph, DEFAULT_WALK_BUDGET};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_rotation_is_invariant_under_rotation(
        seq in proptest::collection::vec(0u8..6, 1..12),
        shift in 0usize..12,
    ) {
        let k = seq.len();
        let rotated: Vec<u8> = (0..k).map(|i| seq[(i + shift) % k]).collect();
        prop_assert_eq!(canonical_rotation(&seq), canonical_rotation(&rotated));

        let canon = canonical_rotation(&seq);
        let doubled: Vec<u8> = seq.iter().chain(seq.iter()).copied().collect();
        prop_assert!(doubled.windows(k).any(|w| w == canon.as_slice()));
    }

    #[test]
    fn smallest_period_divides_and_survives_repetition(
        seq in proptest::collection::vec(0u8..4, 1..8),
        reps in 1usize..4,
    ) {
        let p = smallest_period(&seq);
        prop_assert_eq!(seq.len() % p, 0);
        let repeated: Vec<u8> = std::iter::repeat(seq.clone()).take(reps).flatten().collect();
        prop_assert_eq!(smallest_period(&repeated), p);
    }

    #[test]
    fn swap_transforms_are_orthogonal_with_parity_determinant(
        n in 2usize..=7,
        a in 0usize..7,
        b in 0usize..7,
    ) {
        let i = a % n + 1;
        let j = b % n + 1;
        prop_assume!(i != j);
        let t: DenseMatrix<f64> = swap_transform(n, i, j);
        let gram = t.mul(&t.transpose());
        prop_assert!(gram.max_abs_diff(&DenseMatrix::identity(n - 1)) < 1e-12);
        prop_assert_eq!(t.transpose(), swap_transform::<f64>(n, j, i));
        let parity = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((t.determinant() - parity).abs() < 1e-12);
        g_inverse_check(n, i, j).unwrap();
    }

    #[test]
    fn graph_text_round_trips(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let g = random_connected_multigraph(&mut rng, 2, 7).unwrap();
        let text = g.to_text();
        let back = WeightedMultigraph::<f64>::parse_text(&text).unwrap();
        prop_assert_eq!(g.vertex_count(), back.vertex_count());
        let key = |g: &WeightedMultigraph<f64>| {
            let mut edges: Vec<(usize, usize, u64)> = g
                .edges()
                .iter()
                .map(|e| {
                    let (u, v) = (e.u.0.min(e.v.0), e.u.0.max(e.v.0));
                    (u, v, e.weight.to_bits())
                })
                .collect();
            edges.sort();
            edges
        };
        prop_assert_eq!(key(&g), key(&back));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn inverse_agrees_with_the_truncated_walk_series(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let g = random_connected_multigraph(&mut rng, 2, 6).unwrap();
        let t = safe_parameter(&g).unwrap();
        let w = walk_weights(&g, &t).unwrap();
        let series = walk_weights_series(&g, &t, 60);
        prop_assert!(w.matrix().max_abs_diff(&series) <= 1e-9);
    }

    #[test]
    fn distances_form_a_metric_with_the_bounded_transform(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let g = random_connected_multigraph(&mut rng, 2, 6).unwrap();
        let t = safe_parameter(&g).unwrap();
        let w = walk_weights(&g, &t).unwrap();
        let d = walk_distances(&w, 1.0).unwrap();
        let axioms = metric_axioms(d.matrix(), 1e-9);
        prop_assert!(axioms.ok, "triangle violation {}", axioms.max_triangle_violation);

        let p = p_metric(&w);
        let n = g.vertex_count();
        for i in 0..n {
            for j in 0..n {
                let expect = 1.0 - (-d.matrix().get(i, j)).exp();
                prop_assert!((p.get(i, j) - expect).abs() <= 1e-12);
            }
        }

        let transitions = transition_check(&w, 1e-9).unwrap();
        prop_assert!(transitions.ok, "{} violations", transitions.violations.len());
    }

    #[test]
    fn rational_walk_weights_are_exactly_symmetric(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let g = random_connected_multigraph_rational(&mut rng, 2, 5).unwrap();
        let t = safe_parameter_rational(&g).unwrap();
        let w = walk_weights(&g, &t).unwrap();
        prop_assert!(w.matrix().is_symmetric());
        for i in 0..g.vertex_count() {
            prop_assert!(*w.matrix().get(i, i) >= int::<BigRational>(1));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn circuit_sums_match_power_traces_exactly(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let d = random_expansion_digraph(&mut rng, 3, 12, 5e4).unwrap();
        let mut budget = WalkBudget::new(DEFAULT_WALK_BUDGET);
        let circuits = circuits_up_to(&d, 5, &mut budget).unwrap();
        let sums = circuit_length_sums(&circuits, 5);
        let traces = d.adjacency().power_traces(5);
        for k in 1..=5usize {
            let scaled = sums[k - 1].clone() * int::<BigRational>(k as i64);
            prop_assert_eq!(scaled, traces[k - 1].clone(), "length {}", k);
        }
    }

    #[test]
    fn random_pairs_stay_in_bijection_with_odd_open_multiplicities(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let g = random_connected_multigraph(&mut rng, 3, 4).unwrap();
        let t = safe_parameter(&g).unwrap();
        let vs = g.vertices().to_vec();
        let a = rng.random_range(0..vs.len());
        let b = (a + rng.random_range(1..vs.len())) % vs.len();
        let jd = jump_digraph(&g, &t, vs[a], vs[b]).unwrap();
        let mut budget = WalkBudget::new(DEFAULT_WALK_BUDGET);
        let report = jd.bijection_check(&g, &t, 4, &mut budget).unwrap();
        prop_assert!(report.ok);
        prop_assert!(report.open_multiplicities_odd);
    }
}
