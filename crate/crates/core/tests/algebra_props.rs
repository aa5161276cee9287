use cuboid::bipoly::IntPoly2;
use cuboid::coefficients::{E21Form, Params};
use cuboid::rational::Rational;
use cuboid::search::SearchRecord;
use cuboid::verifier::grade;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = IntPoly2> {
    prop::collection::vec((-20i64..=20, 0u32..4, 0u32..4), 0..6)
        .prop_map(|terms| IntPoly2::from_terms(&terms))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=30).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &IntPoly2::constant(1), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), x in rational(), y in rational()) {
        prop_assert_eq!((&a + &b).eval(&x, &y), a.eval(&x, &y) + b.eval(&x, &y));
        prop_assert_eq!((&a * &b).eval(&x, &y), a.eval(&x, &y) * b.eval(&x, &y));
    }

    #[test]
    fn display_parse_round_trip(a in poly()) {
        let back: IntPoly2 = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn record_json_round_trip(b in rational(), c in rational(), printed in any::<bool>()) {
        let form = if printed { E21Form::Printed } else { E21Form::Common };
        let v = grade(&Params::new(b, c), form);
        let rec = SearchRecord::from_verdict(&v, "2026-01-01T00:00:00Z".into());
        let json = serde_json::to_string(&rec).unwrap();
        let back: SearchRecord = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, rec);
    }
}
