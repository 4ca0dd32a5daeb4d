use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use zetaforge::coxeter::{enumerate_b, SignedPermutation};
use zetaforge::dirichlet::global_coefficients;
use zetaforge::families::{make_W, FamilyId, FamilyInstance};
use zetaforge::numberfield::NumberField;
use zetaforge::symmetry::extract_functional_equation;
use zetaforge::{expand_series, EulerForm, LaurentPoly};

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..4, -3i64..4, -5i64..6), 0..6).prop_map(LaurentPoly::from_terms)
}

fn arb_form() -> impl Strategy<Value = EulerForm> {
    (arb_poly(), prop::collection::vec((0i64..4, 1i64..4), 0..4))
        .prop_map(|(n, d)| EulerForm::new(n, d).unwrap())
}

/// Numerators with nonnegative `Y` exponents, so the form is a power series.
fn arb_series_form() -> impl Strategy<Value = EulerForm> {
    (
        prop::collection::vec((-2i64..3, 0i64..4, -5i64..6), 1..5),
        prop::collection::vec((0i64..3, 1i64..3), 0..3),
    )
        .prop_map(|(t, d)| EulerForm::new(LaurentPoly::from_terms(t), d).unwrap())
}

fn arb_signed(m: usize) -> impl Strategy<Value = SignedPermutation> {
    (Just((1..=m as i32).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), m)).prop_map(
        |(perm, signs)| {
            let w = perm.into_iter().zip(signs).map(|(v, s)| if s { -v } else { v }).collect();
            SignedPermutation::new(w).unwrap()
        },
    )
}

fn small_family() -> impl Strategy<Value = FamilyId> {
    prop_oneof![
        (1u32..4).prop_map(FamilyId::Abelian),
        (1u32..4).prop_map(FamilyId::Heisenberg),
        (2u32..4, 1u32..3).prop_map(|(c, g)| FamilyId::Free { c, g }),
        (1u32..3, 2u32..4).prop_map(|(m, n)| FamilyId::Lmn { m, n }),
        (2u32..5).prop_map(FamilyId::MaxClass),
        Just(FamilyId::FiliformF4),
        Just(FamilyId::Q5),
        Just(FamilyId::BK),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_equality_is_an_equivalence(w in arb_form(), v in arb_form()) {
        prop_assert!(w.ratfunc_equal(&w));
        prop_assert_eq!(w.ratfunc_equal(&v), v.ratfunc_equal(&w));
    }

    #[test]
    fn extending_keeps_the_function(w in arb_form(), a in 0i64..4, b in 1i64..4) {
        let e = w.extend(a, b).unwrap();
        prop_assert!(e.ratfunc_equal(&w));
        prop_assert_eq!(e.denominator().len(), w.denominator().len() + 1);
    }

    #[test]
    fn double_inversion_is_identity(p in arb_poly()) {
        prop_assert_eq!(p.invert().invert(), p);
    }

    #[test]
    fn inversion_identity_holds(w in arb_form()) {
        let inv = w.invert_variables();
        let (num, den) = w.inverted_fraction();
        prop_assert_eq!(&num, &inv.inverted);
        // D(X,Y) = sign X^a Y^b D(1/X,1/Y)
        let rescaled = den.shift(inv.a, inv.b).scale(&BigInt::from(inv.sign));
        prop_assert_eq!(rescaled, w.denominator_poly());
    }

    #[test]
    fn substitution_commutes_with_dilation(w in arb_series_form(), f in 1usize..4, x in 1i64..4) {
        let order = 9;
        let x = BigRational::from_integer(x.into());
        let lhs = expand_series(&w.substitute_powers(1, f as i64).unwrap(), &x, order).unwrap();
        let rhs = expand_series(&w, &x, order).unwrap().dilate(f, order);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eta_is_an_involution(w in (1usize..7).prop_flat_map(arb_signed), j in 1usize..7) {
        let m = w.rank();
        let j = 1 + (j - 1) % m;
        prop_assert_eq!(w.eta(j).unwrap().eta(j).unwrap(), w);
    }

    #[test]
    fn etas_commute(w in (2usize..7).prop_flat_map(arb_signed), i in 1usize..7, j in 1usize..7) {
        let m = w.rank();
        let (i, j) = (1 + (i - 1) % m, 1 + (j - 1) % m);
        prop_assert_eq!(w.eta(i).unwrap().eta(j).unwrap(), w.eta(j).unwrap().eta(i).unwrap());
    }

    #[test]
    fn length_splits(w in (1usize..8).prop_flat_map(arb_signed)) {
        let s = w.stats();
        prop_assert_eq!(s.length, s.inv + s.npr);
        prop_assert_eq!(s.des, s.des_set.count_ones());
        prop_assert_eq!(s.eps1 == 1, w.at(1) < 0);
    }

    #[test]
    fn extraction_ignores_extension(f in small_family(), d in 1u32..4, a in 0i64..3, b in 1i64..3) {
        let w = make_W(&FamilyInstance::new(f, d).unwrap()).unwrap();
        let base = extract_functional_equation(&w);
        let ext = extract_functional_equation(&w.extend(a, b).unwrap());
        prop_assert_eq!(base, ext);
    }

    #[test]
    fn family_series_are_counts(f in small_family(), d in 1u32..5, q in prop::sample::select(vec![2i64, 3, 5])) {
        let w = make_W(&FamilyInstance::new(f, d).unwrap()).unwrap();
        let s = expand_series(&w, &BigRational::from_integer(q.into()), 12).unwrap();
        let ints = s.to_integers();
        prop_assert!(ints.is_some());
        let ints = ints.unwrap();
        prop_assert_eq!(&ints[0], &BigInt::from(1));
        prop_assert!(ints.iter().all(|c| !c.is_negative()));
    }
}

#[test]
fn eta_orbits_have_full_size() {
    for m in 1..=5 {
        let mut seen = HashSet::new();
        for w in enumerate_b(m).unwrap() {
            if seen.contains(&w) {
                continue;
            }
            let mut orbit = HashSet::from([w.clone()]);
            for j in 1..=m {
                let next: Vec<_> = orbit.iter().map(|v| v.eta(j).unwrap()).collect();
                orbit.extend(next);
            }
            assert_eq!(orbit.len(), 1 << m, "m = {m}");
            seen.extend(orbit);
        }
        assert_eq!(seen.len(), (1 << m) * (1..=m).product::<usize>());
    }
}

#[test]
fn longest_element() {
    for m in 1..=6 {
        let w0 = SignedPermutation::new((1..=m as i32).map(|v| -v).collect()).unwrap();
        let s = w0.stats();
        assert_eq!(s.length as usize, m * m);
        assert_eq!(s.des as usize, m);
        let max = enumerate_b(m).unwrap().map(|w| w.stats().length).max().unwrap();
        assert_eq!(max, s.length);
    }
}

#[test]
fn global_series_over_small_fields() {
    let fields = ["0,1", "1,0,1", "-2,0,1"];
    let families = [FamilyId::Heisenberg(1), FamilyId::Abelian(2), FamilyId::MaxClass(3)];
    for k in fields {
        let k = NumberField::parse(k).unwrap();
        for f in families {
            let inst = FamilyInstance::new(f, k.degree() as u32).unwrap();
            let g = global_coefficients(&inst, &k, 200).unwrap();
            assert_eq!(g.len(), 200);
            assert_eq!(g.b(1), &BigInt::from(1));
            assert!(g.all_nonnegative());
            assert!(g.is_multiplicative());
            assert!(g.coefficients().iter().any(|c| !c.is_zero()));
        }
    }
}

#[test]
fn decomposition_degrees_add_up() {
    for k in ["1,0,1", "-2,0,1", "-2,0,0,1", "1,1,1", "3,0,1,0,1"] {
        let k = NumberField::parse(k).unwrap();
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            if let Ok(t) = k.decomposition_type(p) {
                let sum: u32 = t.pairs().iter().map(|(e, f)| e * f).sum();
                assert_eq!(sum as usize, k.degree(), "{p}");
            }
        }
    }
}
