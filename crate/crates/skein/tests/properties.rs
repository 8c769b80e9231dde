//! Randomized algebraic properties of the Laurent ring and the module
//! elements. Set PROPTEST_CASES or SKEIN_SEED to vary the run.

use num_bigint::BigInt;
use proptest::prelude::*;

use skein::elements::{Basis, MonomialIndex, SkeinElement};
use skein::laurent::LaurentPoly;

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(((-8i64..=8), (-20i64..=20)), 0..5).prop_map(|pairs| {
        LaurentPoly::from_terms(pairs.into_iter().map(|(e, c)| (e, BigInt::from(c))))
    })
}

fn arb_nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    arb_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn arb_element() -> impl Strategy<Value = SkeinElement> {
    proptest::collection::vec(((0u32..4), (0u32..4), (0u32..4), arb_poly()), 0..4).prop_map(
        |terms| {
            let mut e = SkeinElement::zero(Basis::Chebyshev);
            for (i, j, k, c) in terms {
                e.add_term(MonomialIndex::new(i, j, k), c);
            }
            e
        },
    )
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &LaurentPoly::zero(), a.clone());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert_eq!(&a - &a, LaurentPoly::zero());
    }

    #[test]
    fn mirror_is_involutive_ring_map(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(a.mirror().mirror(), a.clone());
        prop_assert_eq!((&a + &b).mirror(), &a.mirror() + &b.mirror());
        prop_assert_eq!((&a * &b).mirror(), &a.mirror() * &b.mirror());
    }

    #[test]
    fn breadth_is_additive(a in arb_nonzero_poly(), b in arb_nonzero_poly()) {
        let prod = &a * &b;
        prop_assert_eq!(
            prod.breadth().unwrap(),
            a.breadth().unwrap() + b.breadth().unwrap()
        );
    }

    #[test]
    fn exact_division_inverts_multiplication(a in arb_poly(), b in arb_nonzero_poly()) {
        let prod = &a * &b;
        let q = prod.divide_exact(&b).unwrap().expect("product is divisible");
        prop_assert_eq!(q, a);
    }

    #[test]
    fn evaluation_is_multiplicative(a in arb_poly(), b in arb_poly()) {
        let prod = &a * &b;
        for at in [1i8, -1] {
            prop_assert_eq!(prod.eval_pm1(at), a.eval_pm1(at) * b.eval_pm1(at));
        }
    }

    #[test]
    fn element_mul_commutes_and_associates(
        a in arb_element(),
        b in arb_element(),
        c in arb_element(),
    ) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn basis_conversion_round_trips(e in arb_element()) {
        prop_assert_eq!(e.to_monomial().to_chebyshev(), e.clone());
        prop_assert_eq!(e.to_chebyshev(), e.clone());
        // multiplication commutes with the basis change
        let m = e.to_monomial();
        prop_assert_eq!(m.mul(&m).to_chebyshev(), e.mul(&e));
    }

    #[test]
    fn element_mirror_is_involutive(e in arb_element()) {
        prop_assert_eq!(e.mirror().mirror(), e.clone());
    }
}
