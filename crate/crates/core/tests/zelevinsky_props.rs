use proptest::prelude::*;
use zelcoh::zelevinsky::{
    jacquet_cuts, make_speh, make_steinberg, mod_l_reduce, normalized_product, twist, Cuspidal, HalfInt,
    Multisegment, Segment,
};

fn bases() -> Vec<Cuspidal> {
    vec![
        Cuspidal::new("π", 1, 1, "ρ").unwrap(),
        Cuspidal::new("π'", 1, 2, "ρ").unwrap(),
        Cuspidal::new("σ", 2, 1, "ς").unwrap(),
    ]
}

fn segment() -> impl Strategy<Value = Segment> {
    (0..3usize, -12i64..12, 1u32..5).prop_map(|(b, start, len)| Segment::new(bases()[b].clone(), HalfInt::from_twice(start), len).unwrap())
}

fn multisegment() -> impl Strategy<Value = Multisegment> {
    prop::collection::vec(segment(), 0..6).prop_map(Multisegment::from_segments)
}

fn half() -> impl Strategy<Value = HalfInt> {
    (-20i64..20).prop_map(HalfInt::from_twice)
}

proptest! {
    #[test]
    fn twist_is_an_action(m in multisegment(), a in half(), b in half()) {
        prop_assert_eq!(twist(&twist(&m, a), -a), m.clone());
        prop_assert_eq!(twist(&twist(&m, a), b), twist(&m, a + b));
        prop_assert_eq!(twist(&m, HalfInt::ZERO), m);
    }

    #[test]
    fn twist_preserves_degree(m in multisegment(), a in half()) {
        prop_assert_eq!(twist(&m, a).degree(), m.degree());
        prop_assert_eq!(mod_l_reduce(&m).degree(), m.degree());
    }

    #[test]
    fn product_is_commutative_and_associative(a in multisegment(), b in multisegment(), c in multisegment()) {
        prop_assert_eq!(normalized_product(&a, &b), normalized_product(&b, &a));
        prop_assert_eq!(
            normalized_product(&normalized_product(&a, &b), &c),
            normalized_product(&a, &normalized_product(&b, &c))
        );
        prop_assert_eq!(normalized_product(&a, &b).degree(), a.degree() + b.degree());
    }

    #[test]
    fn twist_distributes_over_products(a in multisegment(), b in multisegment(), n in half()) {
        prop_assert_eq!(
            twist(&normalized_product(&a, &b), n),
            normalized_product(&twist(&a, n), &twist(&b, n))
        );
    }

    #[test]
    fn reduction_is_a_homomorphism(a in multisegment(), b in multisegment(), n in half()) {
        prop_assert_eq!(
            mod_l_reduce(&normalized_product(&a, &b)),
            normalized_product(&mod_l_reduce(&a), &mod_l_reduce(&b))
        );
        prop_assert_eq!(mod_l_reduce(&twist(&a, n)), twist(&mod_l_reduce(&a), n));
        prop_assert_eq!(mod_l_reduce(&mod_l_reduce(&a)), mod_l_reduce(&a));
    }

    #[test]
    fn reflection_is_an_involution(m in multisegment(), n in half()) {
        prop_assert_eq!(m.reflected().reflected(), m.clone());
        prop_assert_eq!(twist(&m, n).reflected(), twist(&m.reflected(), -n));
    }

    #[test]
    fn json_roundtrip(m in multisegment()) {
        let json = m.to_canonical_json();
        let back = Multisegment::from_json(&json).unwrap();
        prop_assert_eq!(back.to_canonical_json(), json);
        prop_assert_eq!(back, m);
    }

    #[test]
    fn ladder_degrees(b in 0..3usize, s in 1u32..7, t in 1u32..7, n in half()) {
        let pi = bases()[b].clone();
        let ladder = make_speh(make_steinberg(&pi, t).unwrap(), s).unwrap();
        let m = ladder.to_multisegment();
        prop_assert_eq!(m.degree(), (s * t * pi.g()) as u64);
        prop_assert_eq!(twist(&m, n), ladder.twisted(n).to_multisegment());
        for (left, right) in jacquet_cuts(&ladder) {
            prop_assert_eq!(left.degree() + right.degree(), m.degree());
        }
    }
}
