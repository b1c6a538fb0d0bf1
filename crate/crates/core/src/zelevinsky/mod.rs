//! Cuspidal labels, half-integer twists, segments, multisegments and ladders.
//!
//! Twists are stored absolutely on segments, so every product is a multiset
//! union and all identities here are exact equalities of canonical values.

mod halfint;
mod ladder;
mod multisegment;

pub use halfint::HalfInt;
pub use ladder::LadderShape;
pub use multisegment::{Cuspidal, Multisegment, Segment, Wildcard, MULTISEGMENT_SCHEMA_VERSION};

use crate::error::{invalid, Result};

/// `St_t(π)`: one row of length `t` centered at 0.
pub fn make_steinberg(pi: &Cuspidal, t: u32) -> Result<LadderShape> {
    if t == 0 {
        return Err(invalid("make_steinberg: t must be >= 1"));
    }
    LadderShape::new(pi.clone(), 1, t, HalfInt::ZERO)
}

/// `Speh_s(St_t(π))` from a cuspidal (via `St_1(π) = π`) or a Steinberg ladder.
pub fn make_speh(input: impl Into<LadderShape>, s: u32) -> Result<LadderShape> {
    let st = input.into();
    if s == 0 {
        return Err(invalid("make_speh: s must be >= 1"));
    }
    if !st.is_steinberg() {
        return Err(invalid(format!(
            "make_speh expects a cuspidal or a Steinberg ladder, got {st}"
        )));
    }
    LadderShape::new(st.base, s, st.t, st.center)
}

impl From<Cuspidal> for LadderShape {
    fn from(pi: Cuspidal) -> Self {
        LadderShape::from(&pi)
    }
}

/// `m{n}`: every segment start (and every wildcard) shifted by `n`.
pub fn twist(m: &Multisegment, n: HalfInt) -> Multisegment {
    m.twisted(n)
}

/// `a × b`, the normalized parabolic induction.
///
/// Normalized induction does not move the cuspidal support, so the product is
/// the multiset union of the two (absolutely twisted) multisegments.
pub fn normalized_product(a: &Multisegment, b: &Multisegment) -> Multisegment {
    a.union(b)
}

/// `π_1{n_2/2} ⊗ π_2{-n_1/2}`: the twists that turn unnormalized induction
/// into normalized induction, applied to the two factors.
pub fn unnormalized_induction_data(a: &Multisegment, b: &Multisegment) -> (Multisegment, Multisegment) {
    (
        a.twisted(HalfInt::half(b.degree() as i64)),
        b.twisted(HalfInt::half(-(a.degree() as i64))),
    )
}

/// Cut vectors `c_1 >= c_2 >= ... >= c_s` with entries in `0..=t`, in
/// lexicographic order.
pub fn descending_cut_vectors(s: u32, t: u32) -> Vec<Vec<u32>> {
    fn go(rows_left: u32, bound: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rows_left == 0 {
            out.push(prefix.clone());
            return;
        }
        for c in 0..=bound {
            prefix.push(c);
            go(rows_left - 1, c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(s, t, &mut Vec::with_capacity(s as usize), &mut out);
    out
}

/// The cut-combinatorics shadow of the Jacquet module of a ladder: row `j`
/// keeps its first `c_j` cells on the left and the remaining `t - c_j` on the
/// right, for each descending cut vector.
pub fn jacquet_cuts(ladder: &LadderShape) -> Vec<(Multisegment, Multisegment)> {
    descending_cut_vectors(ladder.s, ladder.t)
        .into_iter()
        .map(|cuts| {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (j, &c) in cuts.iter().enumerate() {
                let row = ladder.row(j as u32);
                if c > 0 {
                    left.push(Segment {
                        base: row.base.clone(),
                        start: row.start,
                        length: c,
                    });
                }
                if c < ladder.t {
                    right.push(Segment {
                        base: row.base.clone(),
                        start: row.start + HalfInt::int(c as i64),
                        length: ladder.t - c,
                    });
                }
            }
            (
                Multisegment::from_segments(left),
                Multisegment::from_segments(right),
            )
        })
        .collect()
}

/// Replace every base by the label of its mod-ℓ reduction.
pub fn mod_l_reduce(m: &Multisegment) -> Multisegment {
    m.map_bases(Cuspidal::reduce_mod_l)
}

/// Replace every occurrence of `from` (by id) with `to`.
pub fn substitute(m: &Multisegment, from: &Cuspidal, to: &Cuspidal) -> Multisegment {
    m.map_bases(|b| if b.id() == from.id() { to.clone() } else { b.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi() -> Cuspidal {
        Cuspidal::new("π", 1, 1, "ρ").unwrap()
    }

    fn pi_prime() -> Cuspidal {
        Cuspidal::new("π'", 1, 2, "ρ").unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn steinberg_of_one_is_the_cuspidal() {
        let st = make_steinberg(&pi(), 1).unwrap();
        let m = st.to_multisegment();
        assert_eq!(m, Multisegment::cuspidal(&pi()));
        assert_eq!(m.segments()[0].start, HalfInt::ZERO);
        assert_eq!(m.segments()[0].end(), HalfInt::ZERO);
        assert_eq!(m.degree(), 1);
    }

    #[test]
    fn steinberg_three_is_centered() {
        let g3 = Cuspidal::new("σ", 3, 1, "σ̄").unwrap();
        let st = make_steinberg(&g3, 3).unwrap();
        let m = st.to_multisegment();
        assert_eq!(m.segments().len(), 1);
        assert_eq!(m.segments()[0].center(), HalfInt::ZERO);
        assert_eq!(m.segments()[0].start, HalfInt::int(-1));
        assert_eq!(m.degree(), 9);
    }

    #[test]
    fn steinberg_degree_sweep() {
        for g in 1..=4 {
            let b = Cuspidal::new("b", g, 1, "b").unwrap();
            for t in 1..=50 {
                assert_eq!(
                    make_steinberg(&b, t).unwrap().to_multisegment().degree(),
                    (t * g) as u64
                );
            }
        }
    }

    #[test]
    fn zero_lengths_are_rejected() {
        assert!(matches!(make_steinberg(&pi(), 0), Err(crate::Error::InvalidArgument(_))));
        assert!(make_speh(pi(), 0).is_err());
        let speh = make_speh(pi(), 2).unwrap();
        assert!(make_speh(speh, 2).is_err());
    }

    #[test]
    fn speh_one_is_steinberg_one() {
        assert_eq!(make_speh(pi(), 1).unwrap(), make_steinberg(&pi(), 1).unwrap());
    }

    #[test]
    fn speh_rows_sit_on_the_zelevinsky_line() {
        for s in 1..=7u32 {
            let speh = make_speh(pi(), s).unwrap();
            let starts: Vec<HalfInt> = speh.to_multisegment().segments().iter().map(|x| x.start).collect();
            let expected: Vec<HalfInt> = (0..s)
                .map(|j| HalfInt::half(1 - s as i64 + 2 * j as i64))
                .collect();
            assert_eq!(starts, expected);
        }
    }

    #[test]
    fn speh_four_of_steinberg_three() {
        let g2 = Cuspidal::new("τ", 2, 1, "τ").unwrap();
        let ladder = make_speh(make_steinberg(&g2, 3).unwrap(), 4).unwrap();
        assert_eq!((ladder.s, ladder.t), (4, 3));
        let m = ladder.to_multisegment();
        assert_eq!(m.segments().len(), 4);
        assert!(m.segments().iter().all(|x| x.length == 3));
        assert_eq!(m.degree(), 12 * 2);
        // rows at -3/2, -1/2, 1/2, 3/2
        let centers: Vec<_> = m.segments().iter().map(|x| x.center().twice()).collect();
        assert_eq!(centers, vec![-3, -1, 1, 3]);
    }

    #[test]
    fn speh_agrees_with_its_defining_induction() {
        // Speh_s(π) is a subquotient of π{(1-s)/2} × ... × π{(s-1)/2}, so both
        // have the same cuspidal support.
        for s in 1..=6u32 {
            let induced = (0..s).fold(Multisegment::empty(), |acc, j| {
                normalized_product(
                    &acc,
                    &twist(&Multisegment::cuspidal(&pi()), HalfInt::half(1 - s as i64 + 2 * j as i64)),
                )
            });
            assert_eq!(induced, make_speh(pi(), s).unwrap().to_multisegment());
        }
    }

    #[test]
    fn twist_basics() {
        let m = make_steinberg(&pi(), 2).unwrap().to_multisegment();
        assert_eq!(twist(&m, HalfInt::ZERO), m);
        let t = twist(&m, HalfInt::half(1));
        assert_eq!(t.segments()[0].start, m.segments()[0].start + HalfInt::half(1));
        assert_eq!(twist(&t, HalfInt::half(-1)), m);
    }

    #[test]
    fn product_with_empty_is_identity() {
        let m = make_speh(make_steinberg(&pi(), 2).unwrap(), 3).unwrap().to_multisegment();
        assert_eq!(normalized_product(&m, &Multisegment::empty()), m);
        assert_eq!(normalized_product(&Multisegment::empty(), &m), m);
    }

    #[test]
    fn unnormalized_twists_follow_the_degrees() {
        let a = make_steinberg(&pi(), 2).unwrap().to_multisegment();
        let b = make_steinberg(&pi(), 3).unwrap().to_multisegment();
        let (ta, tb) = unnormalized_induction_data(&a, &b);
        assert_eq!(ta, twist(&a, HalfInt::half(3)));
        assert_eq!(tb, twist(&b, HalfInt::int(-1)));
    }

    #[test]
    fn jacquet_cuts_of_steinberg_two() {
        let st2 = make_steinberg(&pi(), 2).unwrap();
        let cuts = jacquet_cuts(&st2);
        assert_eq!(cuts.len(), 3);
        let full = st2.to_multisegment();
        assert_eq!(cuts[0], (Multisegment::empty(), full.clone()));
        let cell = |x: i64| twist(&Multisegment::cuspidal(&pi()), HalfInt::half(x));
        assert_eq!(cuts[1], (cell(-1), cell(1)));
        assert_eq!(cuts[2], (full, Multisegment::empty()));
    }

    #[test]
    fn jacquet_cuts_of_speh_two() {
        let speh2 = make_speh(pi(), 2).unwrap();
        assert_eq!(
            descending_cut_vectors(2, 1),
            vec![vec![0, 0], vec![1, 0], vec![1, 1]]
        );
        let cuts = jacquet_cuts(&speh2);
        assert_eq!(cuts.len(), 3);
        let lower = twist(&Multisegment::cuspidal(&pi()), HalfInt::half(-1));
        let upper = twist(&Multisegment::cuspidal(&pi()), HalfInt::half(1));
        assert_eq!(cuts[1], (lower, upper));
    }

    #[test]
    fn jacquet_cut_counts_and_degrees() {
        for s in 1..=8u32 {
            for t in 1..=8u32 {
                let ladder = make_speh(make_steinberg(&pi(), t).unwrap(), s).unwrap();
                let cuts = jacquet_cuts(&ladder);
                assert_eq!(cuts.len() as u64, binom((s + t) as u64, s as u64), "s={s} t={t}");
                for (l, r) in &cuts {
                    assert_eq!(l.degree() + r.degree(), ladder.degree());
                }
                let distinct: std::collections::BTreeSet<_> = cuts.iter().collect();
                assert_eq!(distinct.len(), cuts.len());
            }
        }
    }

    #[test]
    fn mod_l_identifies_congruent_bases() {
        for t in 1..=5 {
            let a = mod_l_reduce(&make_steinberg(&pi(), t).unwrap().to_multisegment());
            let b = mod_l_reduce(&make_steinberg(&pi_prime(), t).unwrap().to_multisegment());
            assert_eq!(a, b);
            assert_eq!(mod_l_reduce(&a), a);
        }
    }

    #[test]
    fn ladder_is_symmetric_under_reflection() {
        for s in 1..=6 {
            for t in 1..=6 {
                let m = make_speh(make_steinberg(&pi(), t).unwrap(), s).unwrap().to_multisegment();
                assert_eq!(m.reflected(), m);
            }
        }
    }

    #[test]
    fn canonical_json_is_sorted_and_roundtrips() {
        let sigma = Cuspidal::new("σ", 2, 1, "σ̄").unwrap();
        let a = make_speh(pi(), 2).unwrap().to_multisegment();
        let b = make_steinberg(&sigma, 2).unwrap().to_multisegment();
        let mut m = normalized_product(&b, &a);
        m = normalized_product(&m, &Multisegment::wildcard(Wildcard::new("?", 3)));
        let json = m.to_canonical_json();
        assert_eq!(
            json,
            r#"{"schema_version":1,"bases":[{"id":"π","g":1,"e_pi":1,"modl_class":"ρ"},{"id":"σ","g":2,"e_pi":1,"modl_class":"σ̄"}],"segments":[{"base_id":"π","start_twice":-1,"length":1},{"base_id":"π","start_twice":1,"length":1},{"base_id":"σ","start_twice":-1,"length":2}],"tate_twice":0,"wildcards":[{"id":"?","degree":3,"twist_twice":0}]}"#
        );
        assert_eq!(Multisegment::from_json(&json).unwrap(), m);
        assert_eq!(normalized_product(&a, &b).to_canonical_json().len(), normalized_product(&b, &a).to_canonical_json().len());
    }

    #[test]
    fn json_rejects_unknown_bases() {
        let bad = r#"{"schema_version":1,"bases":[],"segments":[{"base_id":"π","start_twice":0,"length":1}],"tate_twice":0,"wildcards":[]}"#;
        assert!(Multisegment::from_json(bad).is_err());
        let zero = r#"{"schema_version":1,"bases":[{"id":"π","g":1,"e_pi":1,"modl_class":"ρ"}],"segments":[{"base_id":"π","start_twice":0,"length":0}],"tate_twice":0,"wildcards":[]}"#;
        assert!(Multisegment::from_json(zero).is_err());
    }
}
