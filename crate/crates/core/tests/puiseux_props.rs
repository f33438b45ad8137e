use std::collections::BTreeSet;

use bergdim::algebra::{rat, series_compose, Poly};
use bergdim::puiseux::{newton_puiseux_local, LocalBranch};
use proptest::prelude::*;

const UV: [&str; 2] = ["u", "v"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Factor {
    /// `v - c u^k`
    Graph(i64, u32),
    /// `u - c v^k`, `k >= 2`
    Sideways(i64, u32),
    /// `v^2 - c^2 u^3`
    Cusp(i64),
    /// `v^3 - u^4`
    E6,
}

fn factor_poly(f: Factor) -> Poly {
    let u = Poly::var(&UV, 0);
    let v = Poly::var(&UV, 1);
    let c = |x: i64| Poly::constant(&UV, rat(x, 1));
    match f {
        Factor::Graph(a, k) => &v - &(&c(a) * &u.pow(k)),
        Factor::Sideways(a, k) => &u - &(&c(a) * &v.pow(k)),
        Factor::Cusp(a) => &v.pow(2) - &(&c(a * a) * &u.pow(3)),
        Factor::E6 => &v.pow(3) - &u.pow(4),
    }
}

fn factor_strategy() -> impl Strategy<Value = Factor> {
    let c = (-3i64..=3).prop_filter("nonzero", |c| *c != 0);
    prop_oneof![
        (c.clone(), 1u32..4).prop_map(|(a, k)| Factor::Graph(a, k)),
        (c.clone(), 2u32..4).prop_map(|(a, k)| Factor::Sideways(a, k)),
        c.prop_map(Factor::Cusp),
        Just(Factor::E6),
    ]
}

/// Reduced germs through the origin with rational branches.
fn germ_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::btree_set(factor_strategy(), 1..4).prop_map(|fs: BTreeSet<Factor>| {
        fs.into_iter()
            .map(factor_poly)
            .fold(Poly::constant(&UV, rat(1, 1)), |acc, f| &acc * &f)
    })
}

fn mult(b: &LocalBranch) -> u32 {
    [&b.u, &b.v]
        .iter()
        .filter_map(|s| s.valuation())
        .min()
        .unwrap()
}

fn keys(bs: &[LocalBranch], n: u32) -> BTreeSet<(String, String)> {
    bs.iter()
        .map(|b| (b.u.truncate(n).to_string(), b.v.truncate(n).to_string()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn branch_multiplicities_add_up(f in germ_strategy()) {
        let bs = newton_puiseux_local(&f, 24, "o").unwrap();
        let total: u32 = bs.iter().map(mult).sum();
        prop_assert_eq!(Some(total), f.order());
    }

    #[test]
    fn generic_line_meets_with_multiplicity(f in germ_strategy()) {
        let bs = newton_puiseux_local(&f, 24, "o").unwrap();
        // u + 1009 v is transversal to every branch above
        let line = &Poly::var(&UV, 0) + &(&Poly::constant(&UV, rat(1009, 1)) * &Poly::var(&UV, 1));
        let total: u32 = bs
            .iter()
            .map(|b| series_compose(&line, &[b.u.clone(), b.v.clone()]).unwrap().valuation().unwrap())
            .sum();
        prop_assert_eq!(Some(total), f.order());
    }

    #[test]
    fn expansion_is_stable_under_doubling(f in germ_strategy(), n in 12u32..20) {
        let a = newton_puiseux_local(&f, n, "o").unwrap();
        let b = newton_puiseux_local(&f, 2 * n, "o").unwrap();
        prop_assert_eq!(a.len(), b.len());
        prop_assert_eq!(keys(&a, n), keys(&b, n));
    }
}
