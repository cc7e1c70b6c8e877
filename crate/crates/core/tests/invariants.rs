use std::sync::Arc;

use proptest::prelude::*;
use tsra_core::cocycles::{catalog_cocycle, Cocycle, CocycleKind};
use tsra_core::exact::{Cyclotomic, ExactMatrix, Rational};
use tsra_core::groups::{catalog_group, FiniteGroup, GroupKind};
use tsra_core::symplectic::{doubled_cherednik_space, lambda_scalar, pbw_diamond_check, ReflectionParameter};
use tsra_core::twisted_algebra::{character_table, multiply, AlgebraElement};

fn dihedral_psi() -> Cocycle {
    let g = Arc::new(catalog_group(&GroupKind::Dihedral { k: 8 }).unwrap());
    catalog_cocycle(g, &CocycleKind::DihedralNontrivial { m: 4 }).unwrap()
}

fn s3() -> Arc<FiniteGroup> {
    Arc::new(catalog_group(&GroupKind::Symmetric { n: 3 }).unwrap())
}

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (-6i64..=6, 1i64..=5, 0u64..8).prop_map(|(p, q, k)| {
        Cyclotomic::root_of_unity(k, 8).scale(&Rational::new(p, q))
    })
}

fn element(order: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((0..order, cyclotomic()), 0..5).prop_map(AlgebraElement::from_terms)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| Rational::new(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn twisted_multiplication_is_associative(a in element(16), b in element(16), c in element(16)) {
        let psi = dihedral_psi();
        let ab_c = multiply(&multiply(&a, &b, &psi).unwrap(), &c, &psi).unwrap();
        let a_bc = multiply(&a, &multiply(&b, &c, &psi).unwrap(), &psi).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn cyclotomic_field_laws(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            prop_assert!((&a * &a.try_inv().unwrap()).is_one());
        }
    }

    #[test]
    fn central_scalar_is_additive(x in rational(), y in rational()) {
        let g = s3();
        let table = character_table(&Cocycle::trivial(g.clone())).unwrap();
        let t = g.class_of(g.parse_word("s1").unwrap());
        let param = |v: &Rational| ReflectionParameter::from_classes(&g, &[(t, Cyclotomic::from_rational(v.clone()))]);
        let sum = param(&(x.clone() + y.clone()));
        for tau in 0..table.len() {
            let lhs = lambda_scalar(&table, tau, &sum).unwrap();
            let rhs = &lambda_scalar(&table, tau, &param(&x)).unwrap() + &lambda_scalar(&table, tau, &param(&y)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn pbw_verdict_ignores_basis_order(c in rational(), perm in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle()) {
        let g = s3();
        let h = [
            ExactMatrix::from_ints(&[&[-1, 1], &[0, 1]]),
            ExactMatrix::from_ints(&[&[1, 0], &[1, -1]]),
        ];
        let action = doubled_cherednik_space(g.clone(), &h).unwrap();
        let psi = Cocycle::trivial(g.clone());
        let t = g.class_of(g.parse_word("s1").unwrap());
        let good = ReflectionParameter::from_classes(&g, &[(t, Cyclotomic::from_rational(c.clone()))]);
        prop_assert!(pbw_diamond_check(&action, &psi, &good, Some(&perm)).unwrap().passed);
        if !c.is_zero() {
            let mut bad = ReflectionParameter::zero();
            bad.set(g.parse_word("s1").unwrap(), Cyclotomic::from_rational(c));
            prop_assert!(!pbw_diamond_check(&action, &psi, &bad, Some(&perm)).unwrap().passed);
        }
    }
}
