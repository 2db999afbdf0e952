//! Algebraic invariants of the exact coefficient layer.

use proptest::prelude::*;

use urod::coeff::rational::fmt_q;
use urod::coeff::{q, GradedSeries, Mono, Poly, Q, RatFn, Sym, SymbolSet};
use urod::ope::cf::Cf;
use urod::registry::parse_q;

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u16..3, 0u16..3, -5i64..=5), 0..4).prop_map(|ts| {
        Poly::from_terms(ts.into_iter().map(|(i, j, c)| (Mono::var(Sym::B, i).mul(&Mono::var(Sym::P, j)), q(c, 1))))
    })
}

fn ratfn_strategy() -> impl Strategy<Value = RatFn> {
    (poly_strategy(), poly_strategy()).prop_filter_map("nonzero denominator", |(n, d)| {
        let d = d.add(&Poly::one());
        if d.is_zero() {
            None
        } else {
            RatFn::new(n, d).ok()
        }
    })
}

fn rational() -> impl Strategy<Value = Q> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

fn series_strategy() -> impl Strategy<Value = GradedSeries> {
    prop::collection::vec(-6i64..=6, 1..8).prop_map(|mut cs| {
        if cs[0] == 0 {
            cs[0] = 1;
        }
        GradedSeries::from_ints(SymbolSet::default(), RatFn::zero(), &cs, 8)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfn_ring_axioms(a in ratfn_strategy(), b in ratfn_strategy(), c in ratfn_strategy()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn ratfn_division_inverts(a in ratfn_strategy(), b in ratfn_strategy()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.div(&b).unwrap().mul(&b), a);
    }

    #[test]
    fn ratfn_eval_is_homomorphism(a in ratfn_strategy(), b in ratfn_strategy(), x in rational(), y in rational()) {
        let at = |s: Sym| if s == Sym::B { x.clone() } else { y.clone() };
        if let (Some(va), Some(vb)) = (a.eval(&at), b.eval(&at)) {
            if let Some(vs) = a.mul(&b).eval(&at) {
                prop_assert_eq!(vs, &va * &vb);
            }
            if let Some(vs) = a.add(&b).eval(&at) {
                prop_assert_eq!(vs, &va + &vb);
            }
        }
    }

    #[test]
    fn ratfn_json_is_canonical(a in ratfn_strategy(), b in ratfn_strategy()) {
        let syms = SymbolSet::of(&[Sym::B, Sym::P]);
        let s1 = a.add(&b).to_json(syms).to_string();
        let s2 = b.add(&a).to_json(syms).to_string();
        prop_assert_eq!(s1, s2);
    }

    #[test]
    fn series_unit_inverse(s in series_strategy()) {
        let inv = s.invert_unit().unwrap();
        let one = GradedSeries::one(SymbolSet::default(), 32);
        let prod = s.mul(&inv).unwrap();
        prop_assert!(prod.equal_to_order(&one, &q(8, 1)).unwrap().is_equal());
    }

    #[test]
    fn series_mul_commutes(a in series_strategy(), b in series_strategy()) {
        let x = a.mul(&b).unwrap();
        let y = b.mul(&a).unwrap();
        prop_assert!(x.equal_to_order(&y, &q(8, 1)).unwrap().is_equal());
    }

    #[test]
    fn series_json_roundtrip(s in series_strategy()) {
        let back = GradedSeries::from_json(&s.to_json()).unwrap();
        prop_assert!(back.equal_to_order(&s, &q(8, 1)).unwrap().is_equal());
        prop_assert_eq!(back.to_json(), s.to_json());
    }

    #[test]
    fn sqrt2_field_inverse(r in ratfn_strategy(), s in ratfn_strategy()) {
        let x = Cf { r, s };
        prop_assume!(!x.is_zero());
        prop_assert_eq!(x.mul(&x.inv().unwrap()), Cf::one());
        prop_assert_eq!(x.mul(&x.conj()), Cf::rat(x.norm()));
    }

    #[test]
    fn rational_text_roundtrip(x in rational()) {
        prop_assert_eq!(parse_q(&fmt_q(&x)), Some(x));
    }
}
