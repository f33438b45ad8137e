use std::collections::BTreeMap;

use bergdim::algebra::{rat, resultant, series_compose, Poly, Rat, TruncSeries};
use proptest::prelude::*;

const UV: [&str; 2] = ["u", "v"];

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..4, 0u32..4), -3i64..=3), 1..5).prop_map(|terms| {
        Poly::from_terms(
            &UV,
            terms.into_iter().map(|((a, b), c)| (vec![a, b], rat(c, 1))),
        )
    })
}

/// Centered exact series `sum c_k t^k` with `k >= 1`.
fn series_strategy() -> impl Strategy<Value = TruncSeries> {
    prop::collection::btree_map(
        1u32..5,
        (-3i64..=3).prop_filter("nonzero", |c| *c != 0),
        1..3,
    )
    .prop_map(|m| {
        let coeffs: BTreeMap<u32, Rat> = m.into_iter().map(|(k, c)| (k, rat(c, 1))).collect();
        TruncSeries::exact("t", coeffs)
    })
}

fn order_along(f: &Poly, s: &[TruncSeries]) -> Option<u32> {
    series_compose(f, s).unwrap().valuation()
}

proptest! {
    #[test]
    fn valuation_is_additive(f in poly_strategy(), g in poly_strategy(), a in series_strategy(), b in series_strategy()) {
        let s = [a, b];
        let (vf, vg) = (order_along(&f, &s), order_along(&g, &s));
        prop_assume!(vf.is_some() && vg.is_some());
        prop_assert_eq!(order_along(&(&f * &g), &s), Some(vf.unwrap() + vg.unwrap()));
    }

    #[test]
    fn valuation_of_a_sum(f in poly_strategy(), g in poly_strategy(), a in series_strategy(), b in series_strategy()) {
        let s = [a, b];
        let (vf, vg) = (order_along(&f, &s), order_along(&g, &s));
        prop_assume!(vf.is_some() && vg.is_some());
        let (vf, vg) = (vf.unwrap(), vg.unwrap());
        match order_along(&(&f + &g), &s) {
            None => prop_assert_eq!(vf, vg),
            Some(v) => {
                prop_assert!(v >= vf.min(vg));
                if vf != vg {
                    prop_assert_eq!(v, vf.min(vg));
                }
            }
        }
    }

    #[test]
    fn resultant_vanishes_iff_common_root(
        xs in prop::collection::vec(-4i64..=4, 1..4),
        ys in prop::collection::vec(-4i64..=4, 1..4),
        cx in 1i64..4,
        cy in 1i64..4,
    ) {
        let vars = ["x", "y"];
        // f = cx * prod (x - a) + 0 * y, g likewise, with y as a spectator
        let product = |roots: &[i64], c: i64| {
            roots.iter().fold(Poly::constant(&vars, rat(c, 1)), |acc, &a| {
                &acc * &(&Poly::var(&vars, 0) - &Poly::constant(&vars, rat(a, 1)))
            })
        };
        let f = product(&xs, cx);
        let g = product(&ys, cy);
        let common = xs.iter().any(|a| ys.contains(a));
        prop_assert_eq!(resultant(&f, &g, 0).is_zero(), common);
    }

    #[test]
    fn resultant_of_shifted_factors(a in -5i64..=5, b in -5i64..=5, k in 0i64..=3) {
        // f = (x - a)(x - y - k), g = (x - b)(x + y): common roots along y
        let vars = ["x", "y"];
        let x = Poly::var(&vars, 0);
        let y = Poly::var(&vars, 1);
        let c = |v: i64| Poly::constant(&vars, rat(v, 1));
        let f = &(&x - &c(a)) * &(&(&x - &y) - &c(k));
        let g = &(&x - &c(b)) * &(&x + &y);
        let r = resultant(&f, &g, 0);
        // a shared factor makes the resultant vanish identically
        prop_assert_eq!(r.is_zero(), a == b);
        prop_assume!(a != b);
        // at y = y0 the specializations share a root exactly when r(y0) = 0
        for y0 in -6i64..=6 {
            let fy = [a, y0 + k];
            let gy = [b, -y0];
            let shared = fy.iter().any(|r| gy.contains(r));
            prop_assert_eq!(r.eval(&[Rat::from_integer(0.into()), rat(y0, 1)]) == Rat::from_integer(0.into()), shared);
        }
    }
}
