//! Property tests: field axioms, confluence of the normal form, agreement of
//! module actions with matrix products, and relations on random weights.

use num_traits::Zero;
use proptest::prelude::*;

use hecke_clifford::algebra::{normal_form, Element, Generator};
use hecke_clifford::combinatorics::weights::enumerate_wprime;
use hecke_clifford::combinatorics::Characteristic;
use hecke_clifford::scalars::Rational;
use hecke_clifford::supermodules::{build_d, check_relations, Matrix, SuperModule};
use hecke_clifford::verify::{Check, Report};
use hecke_clifford::{Field, Fp2, Quad};

fn quad() -> impl Strategy<Value = Quad> {
    prop::collection::vec((prop::sample::select(vec![1u64, 2, 3, 5, 6, 10]), -6i128..=6, 1i128..=4), 0..4).prop_map(
        |terms| {
            terms.into_iter().fold(Quad::from_int(0), |acc, (d, a, b)| acc + Quad::term(d, Rational::new(a, b)))
        },
    )
}

fn fp7() -> impl Strategy<Value = Fp2<7>> {
    (0i64..7, 0i64..7).prop_map(|(a, b)| Fp2::new(a, b))
}

fn axioms<F: Field>(a: F, b: F, c: F) -> Result<(), TestCaseError> {
    prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
    prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
    prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
    prop_assert_eq!(a.clone() - a.clone(), F::from_int(0));
    if let Ok(inv) = a.try_inv() {
        prop_assert_eq!(a.clone() * inv, F::from_int(1));
    }
    prop_assert_eq!(F::from_any(&a.to_any()).unwrap(), a);
    Ok(())
}

fn generator(n: usize) -> impl Strategy<Value = Generator> {
    prop_oneof![
        (1..n).prop_map(Generator::S),
        (1..=n).prop_map(Generator::X),
        (1..=n).prop_map(Generator::C),
    ]
}

fn word(n: usize, max: usize) -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(generator(n), 0..=max)
}

fn word_matrix<F: Field>(m: &SuperModule<F>, w: &[Generator]) -> Matrix<F> {
    w.iter().fold(Matrix::identity(m.dim()), |acc, g| acc.mul(m.generator(*g).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiquadratic_field_axioms(a in quad(), b in quad(), c in quad()) {
        if a.terms().len() == 1 {
            prop_assert!(a.try_inv().is_ok());
        }
        axioms(a, b, c)?;
    }

    #[test]
    fn finite_field_axioms(a in fp7(), b in fp7(), c in fp7()) {
        prop_assert_eq!(a.try_inv().is_ok(), !a.is_zero());
        axioms(a, b, c)?;
    }

    #[test]
    fn normal_form_is_multiplicative(u in word(3, 5), v in word(3, 5)) {
        let joined: Vec<Generator> = u.iter().chain(&v).copied().collect();
        let lhs: Element<Quad> = normal_form(3, &joined);
        let rhs = normal_form::<Quad>(3, &u).mul(&normal_form(3, &v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn module_action_matches_matrix_products(w in word(3, 6), pick in 0usize..1000) {
        let weights = enumerate_wprime(3, Characteristic::new(0).unwrap(), 3);
        let m = build_d::<Quad>(&weights[pick % weights.len()]).unwrap();
        let acted = m.act(&normal_form::<Quad>(3, &w)).unwrap();
        prop_assert_eq!(acted, word_matrix(&m, &w));
    }

    #[test]
    fn relations_hold_on_random_weights(p in prop::sample::select(vec![0u32, 3, 5, 7]), n in 1usize..=4, pick in 0usize..10_000) {
        let weights = enumerate_wprime(n, Characteristic::new(p).unwrap(), n as u32);
        prop_assume!(!weights.is_empty());
        let w = &weights[pick % weights.len()];
        let failed = hecke_clifford::with_field!(p, F => build_d::<F>(w).map(|m| {
            check_relations(&m).into_iter().filter(|c| !c.holds).map(|c| c.relation).collect::<Vec<_>>()
        })).unwrap();
        prop_assert!(failed.is_empty(), "{}: {:?}", w, failed);
    }

    #[test]
    fn report_order_ignores_input_order(names in prop::collection::btree_set("[a-z]{1,6}", 1..12), seed in any::<u64>()) {
        let checks: Vec<Check> = names.iter().map(|n| Check::new(n.clone(), "anchor", n.len() % 2 == 0, || n.clone())).collect();
        let mut shuffled = checks.clone();
        let len = shuffled.len();
        for i in 0..len {
            shuffled.swap(i, (seed as usize).wrapping_mul(i + 7) % len);
        }
        prop_assert_eq!(Report::new("r", checks).to_json(), Report::new("r", shuffled).to_json());
    }
}
