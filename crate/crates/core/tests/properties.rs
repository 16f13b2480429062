use proptest::prelude::*;

use geninv::equations::{check_equation, residual, EquationContext, EquationTag};
use geninv::geninv::{drazin_inverse, group_inverse, index, mp_inverse};
use geninv::inverses::satisfies_definition;
use geninv::linalg::{inverse, is_unitary, rank};
use geninv::sampler::{sample, SampleKind, SampleSpec};
use geninv::weighted::{m_core_solution_set, m_weighted_core, n_dual_core_solution_set, n_weighted_dual_core};
use geninv::{check_membership, ExactMatrix, GaussRat, InverseKind, WeightedProblem, Weights};

use EquationTag::*;

fn entry(complex: bool) -> BoxedStrategy<GaussRat> {
    if complex {
        (-3i64..=3, -2i64..=2).prop_map(|(re, im)| GaussRat::complex((re, 1), (im, 1))).boxed()
    } else {
        (-3i64..=3).prop_map(GaussRat::from_int).boxed()
    }
}

fn matrix(rows: usize, cols: usize, complex: bool) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(entry(complex), rows * cols).prop_map(move |d| ExactMatrix::new(rows, cols, d).unwrap())
}

fn rect() -> impl Strategy<Value = ExactMatrix> {
    (1usize..=4, 1usize..=4, any::<bool>()).prop_flat_map(|(r, c, z)| matrix(r, c, z))
}

fn square() -> impl Strategy<Value = ExactMatrix> {
    (1usize..=4, any::<bool>()).prop_flat_map(|(n, z)| matrix(n, n, z))
}

/// `B* B + I`, positive definite by construction.
fn positive_definite(b: &ExactMatrix) -> ExactMatrix {
    &(&b.adjoint() * b) + &ExactMatrix::identity(b.rows())
}

fn square_with_weight() -> impl Strategy<Value = (ExactMatrix, ExactMatrix)> {
    (1usize..=3, any::<bool>()).prop_flat_map(|(n, z)| (matrix(n, n, z), matrix(n, n, z).prop_map(|b| positive_definite(&b))))
}

fn index_one(n: usize, r: usize, seed: u64) -> ExactMatrix {
    sample(&SampleSpec::new(SampleKind::IndexOne, n, seed).with_rank(r)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mp_inverse_meets_all_four_penrose_equations(a in rect()) {
        let x = mp_inverse(&a).unwrap();
        prop_assert!(check_membership(&a, &x, &[P1, P2, P3, P4], &EquationContext::new()).unwrap());
    }

    #[test]
    fn group_inverse_exists_exactly_when_rank_is_stable(a in square()) {
        let stable = rank(&a) == rank(&(&a * &a));
        let g = group_inverse(&a).unwrap();
        prop_assert_eq!(g.exists(), stable);
        if let Some(x) = g.witness() {
            prop_assert!(check_membership(&a, x, &[P1, P2, P5], &EquationContext::new()).unwrap());
        }
    }

    #[test]
    fn drazin_inverse_meets_its_definition_at_any_index(a in square()) {
        let x = drazin_inverse(&a).unwrap();
        prop_assert!(satisfies_definition(InverseKind::Drazin, &a, &x, Weights::new()).unwrap());
        let k = index(&a).unwrap().k;
        prop_assert_eq!(k == 0, inverse(&a).is_ok());
    }

    #[test]
    fn residual_is_zero_exactly_when_the_equation_holds(
        (a, x, m) in (1usize..=3).prop_flat_map(|n| (matrix(n, n, false), matrix(n, n, false), matrix(n, n, true)))
    ) {
        let ctx = EquationContext::new().with_m(&m).with_n(&m).with_k(1);
        for tag in EquationTag::ALL {
            let c = check_equation(tag, &a, &x, &ctx).unwrap();
            prop_assert_eq!(c.holds, residual(tag, &a, &x, &ctx).unwrap().is_zero());
        }
    }

    #[test]
    fn weighted_cores_exist_with_positive_definite_weights_iff_index_at_most_one((a, w) in square_with_weight()) {
        let core_matrix = rank(&a) == rank(&(&a * &a));
        let p = WeightedProblem::with_mn(a.clone(), w.clone(), w.clone()).unwrap();
        let x = m_weighted_core(&p).unwrap();
        let y = n_weighted_dual_core(&p).unwrap();
        prop_assert_eq!(x.exists(), core_matrix);
        prop_assert_eq!(y.exists(), core_matrix);
        let ws = Weights::new().with_m(&w).with_n(&w);
        if let (Some(x), Some(y)) = (x.witness(), y.witness()) {
            prop_assert!(satisfies_definition(InverseKind::CoreM, &a, x, ws).unwrap());
            prop_assert!(satisfies_definition(InverseKind::DualCoreN, &a, y, ws).unwrap());
            let xs = m_core_solution_set(&a, &w).unwrap();
            let ys = n_dual_core_solution_set(&a, &w).unwrap();
            prop_assert_eq!(xs.singleton(), Some(x));
            prop_assert_eq!(ys.singleton(), Some(y));
        }
    }

    #[test]
    fn index_one_sampler_hits_the_requested_rank((n, r, seed) in (1usize..=4).prop_flat_map(|n| (Just(n), 0..=n, any::<u64>()))) {
        let a = index_one(n, r, seed);
        prop_assert_eq!(rank(&a), r);
        prop_assert_eq!(rank(&(&a * &a)), r);
        prop_assert!(index(&a).unwrap().k <= 1);
        prop_assert_eq!(&a, &index_one(n, r, seed));
    }

    #[test]
    fn rational_unitary_sampler_is_exactly_unitary((n, seed) in (1usize..=4, any::<u64>())) {
        let u = sample(&SampleSpec::new(SampleKind::RationalUnitary, n, seed)).unwrap();
        prop_assert!(is_unitary(&u));
        prop_assert!((&u.adjoint() * &u) == ExactMatrix::identity(n));
    }

    #[test]
    fn gaussian_rationals_form_a_field(a in entry(true), b in entry(true), c in entry(true)) {
        prop_assert_eq!((a.clone() + &b) * &c, a.clone() * &c + &(b.clone() * &c));
        if a != GaussRat::from_int(0) {
            prop_assert_eq!(b.clone() / &a * &a, b);
        }
    }
}
