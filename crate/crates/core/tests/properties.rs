//! Cross-module invariants under randomized inputs.

use immanant::combinatorics::{
    enumerate_partitions, enumerate_ssyt, enumerate_weak_compositions, gt_from_ssyt, kostka, ssyt_from_gt,
    Partition, WeakComposition,
};
use immanant::factories::{random_matrix, Certificate};
use immanant::immanant::{immanant, Matrix};
use immanant::inequalities::{
    make_instance, orbit_sides, orbit_sweep, positivity_prediction, schur_sweep, CheckKind, MatrixClass, OrbitRoute,
    OrbitWeights, Verdict,
};
use immanant::symmetric_group::{character_table, Permutation};
use immanant::tensor::{apply_permutation, apply_tensor_power, full_trace_exact, trace_formula_rhs_exact, TensorVector};
use immanant::Rational;
use num_traits::Zero;
use proptest::prelude::*;

fn weak_composition(max_n: usize, max_m: usize) -> impl Strategy<Value = WeakComposition> {
    (1..=max_n).prop_flat_map(move |n| prop::collection::vec(0..=max_m / n.max(1) + 1, n))
        .prop_map(WeakComposition::new)
}

fn permutation(m: usize) -> impl Strategy<Value = Permutation> {
    Just((0..m).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn class() -> impl Strategy<Value = MatrixClass> {
    prop_oneof![Just(MatrixClass::Pd), Just(MatrixClass::Psd), Just(MatrixClass::Tn)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kostka_is_invariant_under_rearranging_the_weight(mu in weak_composition(4, 6), seed in any::<u64>()) {
        let mut shuffled = mu.entries().to_vec();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        let shuffled = WeakComposition::new(shuffled);
        for lambda in enumerate_partitions(mu.size(), None) {
            prop_assert_eq!(kostka(&lambda, &mu).unwrap(), kostka(&lambda, &shuffled).unwrap());
            prop_assert!(positivity_prediction(&lambda, &mu).unwrap().consistent());
        }
    }

    #[test]
    fn gelfand_tsetlin_round_trip(mu in weak_composition(4, 6)) {
        for lambda in enumerate_partitions(mu.size(), Some(mu.len())) {
            for t in enumerate_ssyt(&lambda, &mu).unwrap() {
                let g = gt_from_ssyt(&t, mu.len()).unwrap();
                prop_assert_eq!(&g.weight(), &mu);
                prop_assert_eq!(ssyt_from_gt(&g).unwrap(), t);
            }
        }
    }

    #[test]
    fn symmetric_and_general_linear_actions_commute(
        n in 1usize..=3,
        m in 1usize..=3,
        sigma_seed in any::<u64>(),
        seed in any::<u64>(),
    ) {
        let a: Matrix<Rational> = random_matrix(n, seed);
        let v = TensorVector::from_fn(n, m, |idx| Rational::from_integer((idx.iter().sum::<usize>() as i64 - 2).into()));
        let mut images: Vec<usize> = (0..m).collect();
        images.rotate_left((sigma_seed as usize) % m);
        let sigma = Permutation::from_images(images).unwrap();
        let left = apply_permutation(&sigma, &apply_tensor_power(&a, &v).unwrap()).unwrap();
        let right = apply_tensor_power(&a, &apply_permutation(&sigma, &v).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn weight_traces_sum_to_the_full_trace(n in 1usize..=3, m in 1usize..=3, seed in any::<u64>()) {
        let a: Matrix<Rational> = random_matrix(n, seed);
        for lambda in enumerate_partitions(m, None) {
            let total = enumerate_weak_compositions(m, n)
                .iter()
                .map(|mu| trace_formula_rhs_exact(&a, &lambda, mu).unwrap())
                .fold(Rational::from_integer(0.into()), |acc, x| acc + x);
            prop_assert_eq!(total, full_trace_exact(&a, &lambda).unwrap());
        }
    }

    #[test]
    fn immanants_are_invariant_under_simultaneous_permutation(perm in permutation(4), seed in any::<u64>()) {
        let a: Matrix<Rational> = random_matrix(4, seed);
        let b = a.permuted_similar(perm.images());
        for lambda in enumerate_partitions(4, None) {
            prop_assert_eq!(immanant(&a, &lambda).unwrap(), immanant(&b, &lambda).unwrap());
            prop_assert_eq!(immanant(&a, &lambda).unwrap(), immanant(&a.transpose(), &lambda).unwrap());
        }
    }

    #[test]
    fn schur_margin_is_nonnegative(class in class(), n in 1usize..=4, k in 0usize..8, seed in any::<u64>()) {
        let cert = make_instance(class, n, k, seed);
        for r in schur_sweep(&cert).unwrap() {
            prop_assert_eq!(&r.verdict, &Verdict::Pass, "{:?}", r);
            if r.lambda == Partition::column(n) {
                prop_assert_eq!(r.margin, Rational::from_integer(0.into()));
            }
        }
    }

    #[test]
    fn degree_matched_orbit_bound_holds(class in class(), n in 1usize..=3, m in 1usize..=4, k in 0usize..8, seed in any::<u64>()) {
        let cert = make_instance(class, n, k, seed);
        for r in orbit_sweep(&cert, m, OrbitWeights::Representatives).unwrap() {
            if r.check == CheckKind::OrbitHomogeneous {
                prop_assert_eq!(&r.verdict, &Verdict::Pass, "{:?}", r);
            }
        }
    }

    #[test]
    fn orbit_routes_agree(class in class(), n in 1usize..=3, m in 1usize..=3, seed in any::<u64>()) {
        let cert = make_instance(class, n, 1, seed);
        for mu in enumerate_weak_compositions(m, n) {
            for lambda in enumerate_partitions(m, None) {
                let a = orbit_sides(&cert, &lambda, &mu, OrbitRoute::Immanant).unwrap();
                let b = orbit_sides(&cert, &lambda, &mu, OrbitRoute::Trace).unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn certificates_round_trip(class in class(), n in 1usize..=4, k in 0usize..8, seed in any::<u64>()) {
        let cert = make_instance(class, n, k, seed);
        let text = serde_json::to_string(&cert.to_json()).unwrap();
        let back = Certificate::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back.matrix(), cert.matrix());
        prop_assert_eq!(back, cert);
    }
}

#[test]
fn character_degrees_square_to_the_group_order() {
    for m in 1..=7 {
        let table = character_table(m);
        let identity = Partition::new(vec![1; m]).unwrap();
        let total: i64 = enumerate_partitions(m, None)
            .iter()
            .map(|l| table.value(l, &identity).pow(2))
            .sum();
        assert_eq!(total, (1..=m as i64).product::<i64>());
    }
}

#[test]
fn determinant_shape_gives_exact_zero_margin_on_singular_instances() {
    let cert = make_instance(MatrixClass::Psd, 3, 0, 99);
    assert!(!cert.is_nonsingular());
    assert!(cert.determinant().is_zero());
    let col = schur_sweep(&cert).unwrap().into_iter().find(|r| r.lambda == Partition::column(3)).unwrap();
    assert!(col.lhs.is_zero());
}
