mod common;

use bergdim::constructions::{glued_monomial, nodal_cubic, unicuspidal};
use bergdim::dichotomy::{
    decide, h0_rational, l2_delta, semigroup_gap_count, triviality_test, Ambient, ComplementKind,
    ExactPolicy, OpenSetSpec, PointClass, Verdict,
};
use bergdim::divisors::Divisor;
use bergdim::error::Error;
use bergdim::invariants::SingularPointRecord;
use bergdim::puiseux::CurveModel;
use common::corpus;
use proptest::prelude::*;
use proptest::sample::Index;

/// Rational curves whose branches carry normalization positions.
fn rational_curve(which: usize) -> CurveModel {
    match which % 5 {
        0 => nodal_cubic(),
        1 => unicuspidal(2 + (which / 5 % 4) as u32),
        2 => glued_monomial(2, 1),
        3 => glued_monomial(3, 2),
        _ => glued_monomial(1, 3),
    }
    .unwrap()
}

fn branch_ids(c: &CurveModel) -> Vec<String> {
    c.branches().map(|b| b.branch_id.clone()).collect()
}

fn divisor_on(c: &CurveModel, coeffs: &[i64]) -> Divisor {
    Divisor::from_entries(branch_ids(c).into_iter().zip(coeffs.iter().copied()))
}

fn interior_subset<'a>(c: &'a CurveModel, picks: &[bool]) -> Vec<&'a SingularPointRecord> {
    c.singular_points()
        .zip(picks.iter().cycle())
        .filter(|(_, p)| **p)
        .map(|(r, _)| r)
        .collect()
}

fn classify(c: &CurveModel, ambient: Ambient, kind: ComplementKind, picks: &[bool]) -> OpenSetSpec {
    let mut spec = OpenSetSpec::new(ambient, kind);
    for (rec, interior) in c.singular_points().zip(picks.iter().cycle()) {
        let class = if *interior {
            PointClass::Interior
        } else {
            PointClass::Boundary
        };
        spec = spec.with(&rec.id, class);
    }
    spec
}

#[test]
fn monomial_sections_match_enumeration() {
    for n in 0..=8u32 {
        for k in 1..=8u32 {
            let c = glued_monomial(n, k).unwrap();
            let spec = OpenSetSpec::new(Ambient::Projective, ComplementKind::LocallyPolar)
                .with("o", PointClass::Interior)
                .with("q", PointClass::Boundary);
            let r = l2_delta(&c, &spec).unwrap();
            // admissible t^l: l < 2k and l in the semigroup <2, 2n+1>
            let admissible = 2 * k as u64 - semigroup_gap_count(2 * k as i64 - 1, &[2, 2 * n + 1]);
            assert_eq!(r.dim_descended, Some(admissible), "n={n} k={k}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sections_without_conditions(which in 0usize..20, coeffs in prop::collection::vec(-4i64..=4, 1..4)) {
        let c = rational_curve(which);
        let d = divisor_on(&c, &coeffs);
        prop_assert_eq!(h0_rational(&c, &d, &[]).unwrap(), (d.degree() + 1).max(0) as u64);
    }

    #[test]
    fn enlarging_a_coefficient_never_loses_sections(
        which in 0usize..20,
        coeffs in prop::collection::vec(-3i64..=3, 1..4),
        bump in any::<Index>(),
        picks in prop::collection::vec(any::<bool>(), 1..3),
    ) {
        let c = rational_curve(which);
        let interior = interior_subset(&c, &picks);
        let at_interior = |k: &str| interior.iter().any(|r| r.branches.iter().any(|b| b.branch_id == k));
        // sections may not have poles inside U
        let d = divisor_on(&c, &coeffs).filter(|k, v| !(at_interior(k) && v > 0));
        let ids = branch_ids(&c);
        let key = bump.get(&ids);
        let mut e = d.clone();
        e.add_at(key.clone(), 1);
        prop_assume!(!(at_interior(key) && e.get(key) > 0));
        prop_assert!(h0_rational(&c, &e, &interior).unwrap() >= h0_rational(&c, &d, &interior).unwrap());
    }

    #[test]
    fn l2_delta_is_bounded_by_delta(i in any::<Index>(), picks in prop::collection::vec(any::<bool>(), 1..5)) {
        let c = i.get(corpus());
        let spec = classify(&c.model, Ambient::Projective, ComplementKind::LocallyPolar, &picks);
        match l2_delta(&c.model, &spec) {
            Ok(r) => {
                let total: u32 = c.model.singular_points().map(|p| p.delta).sum();
                prop_assert!(r.l2_delta <= r.delta_interior as u64);
                prop_assert!(r.delta_interior <= total);
            }
            Err(Error::UnsupportedGenus(_) | Error::MissingNormalization { .. }) => {}
            Err(e) => prop_assert!(false, "{}: {e}", c.name),
        }
    }

    #[test]
    fn verdict_depends_only_on_the_complement(
        i in any::<Index>(),
        picks in prop::collection::vec(any::<bool>(), 1..5),
        non_polar in any::<bool>(),
    ) {
        let c = i.get(corpus());
        let kind = if non_polar { ComplementKind::NonPolar } else { ComplementKind::LocallyPolar };
        let spec = classify(&c.model, Ambient::Projective, kind, &picks);
        let r = decide(&c.model, &spec, ExactPolicy::BoundsOnly).unwrap();
        let expected = if non_polar { Verdict::Infinite } else { Verdict::Finite };
        prop_assert_eq!(r.verdict, expected);
    }

    #[test]
    fn trivial_affine_curves_have_no_sections(i in any::<Index>(), picks in prop::collection::vec(any::<bool>(), 1..5)) {
        let affine: Vec<_> = corpus().iter().filter(|c| c.ambient == Ambient::Affine).collect();
        let c = *i.get(&affine);
        prop_assume!(triviality_test(&c.model).unwrap());
        let mut spec = classify(&c.model, Ambient::Affine, ComplementKind::LocallyPolar, &picks);
        for rec in c.model.infinity_points() {
            spec = spec.with(&rec.id, PointClass::Boundary);
        }
        let r = decide(&c.model, &spec, ExactPolicy::Auto).unwrap();
        prop_assert_eq!(r.exact_dim, Some(0));
    }
}
