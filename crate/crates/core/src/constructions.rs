//! Standard example curves.

use std::collections::BTreeMap;

use crate::algebra::{parse_poly, rat, Rat, UniPoly};
use crate::error::Result;
use crate::puiseux::{
    build_implicit, build_parametrized, Coefficient, CurveModel, GlobalParam,
    NormalizationPosition, ParamBranchInput, ParamPointInput, ParametrizedInput, Place, ProjPoint,
};

fn xyz(s: &str) -> crate::algebra::Poly {
    parse_poly(s, Some(&["x", "y", "z"])).expect("valid equation")
}

fn monomials(terms: &[(u32, i64)]) -> BTreeMap<u32, Coefficient> {
    terms
        .iter()
        .map(|&(e, c)| (e, Coefficient::Value(rat(c, 1))))
        .collect()
}

/// Exact branch with monomial-sum components.
pub fn exact_branch(components: &[&[(u32, i64)]], place: Option<Place>) -> ParamBranchInput {
    ParamBranchInput {
        components: components.iter().map(|c| monomials(c)).collect(),
        order: None,
        infinity_component: None,
        infinity_order: None,
        position: place.map(|place| NormalizationPosition {
            component: 0,
            place,
        }),
        declared_mult: None,
    }
}

/// `y^2 z = x^2 (x + z)` with its parametrization `[s^2 - 1 : s^3 - s : 1]`.
pub fn nodal_cubic() -> Result<CurveModel> {
    let phi = GlobalParam::new([
        UniPoly::from_ints(&[-1, 0, 1]),
        UniPoly::from_ints(&[0, -1, 0, 1]),
        UniPoly::from_ints(&[1]),
    ])?;
    build_implicit(&xyz("y^2*z - x^3 - x^2*z"), false, vec![phi], None)
}

/// `x^(m+1) = y^m z`, rational with a single cusp of multiplicity `m` at
/// `[0:0:1]`, parametrized by `[s^m : s^(m+1) : 1]`.
pub fn unicuspidal(m: u32) -> Result<CurveModel> {
    let mut x = vec![0i64; m as usize + 2];
    let mut y = x.clone();
    x[m as usize] = 1;
    y[m as usize + 1] = 1;
    let phi = GlobalParam::new([
        UniPoly::from_ints(&x),
        UniPoly::from_ints(&y),
        UniPoly::from_ints(&[1]),
    ])?;
    let eq = format!("x^{} - y^{}*z", m + 1, m);
    build_implicit(&xyz(&eq), false, vec![phi], None)
}

/// The affine curve `x^2 = y^(2n+1)` closed up by gluing in the germ
/// `u^(2k) = v^(2k+1)` along `s = 1/t`. The normalization is `P^1` with
/// coordinate `t`; the point `o` sits at `t = 0` and `q` at `t = inf`.
pub fn glued_monomial_input(n: u32, k: u32) -> ParametrizedInput {
    let o = exact_branch(
        &[&[(2 * n + 1, 1)], &[(2, 1)]],
        Some(Place::Finite(Rat::from_integer(0.into()))),
    );
    let q = if k == 0 {
        // u^0 = v: the glued germ is the smooth branch v = 1, recentred
        exact_branch(&[&[(1, 1)], &[]], Some(Place::Infinity))
    } else {
        exact_branch(&[&[(2 * k + 1, 1)], &[(2 * k, 1)]], Some(Place::Infinity))
    };
    ParametrizedInput {
        degree: None,
        genus: Some(0),
        components: 1,
        rational_normalization: true,
        points: vec![
            ParamPointInput {
                id: "o".into(),
                coords: None,
                at_infinity: false,
                repeat: 1,
                delta: None,
                branches: vec![o],
            },
            ParamPointInput {
                id: "q".into(),
                coords: None,
                at_infinity: false,
                repeat: 1,
                delta: None,
                branches: vec![q],
            },
        ],
    }
}

pub fn glued_monomial(n: u32, k: u32) -> Result<CurveModel> {
    build_parametrized(&glued_monomial_input(n, k))
}

/// Degree 36 plane curve with 375 ordinary cusps, met transversally by the
/// line at infinity in 36 points. Only branch data is given.
pub fn cusp_curve_36_input() -> ParametrizedInput {
    let cusp = ParamBranchInput {
        declared_mult: Some(2),
        ..exact_branch(&[&[(2, 1)], &[(3, 1)]], None)
    };
    let transversal = ParamBranchInput {
        infinity_component: Some(1),
        ..exact_branch(&[&[(1, 1)], &[(1, 1)]], None)
    };
    ParametrizedInput {
        degree: Some(36),
        genus: None,
        components: 1,
        rational_normalization: false,
        points: vec![
            ParamPointInput {
                id: "cusp".into(),
                coords: None,
                at_infinity: false,
                repeat: 375,
                delta: Some(1),
                branches: vec![cusp],
            },
            ParamPointInput {
                id: "inf".into(),
                coords: None,
                at_infinity: true,
                repeat: 36,
                delta: None,
                branches: vec![transversal],
            },
        ],
    }
}

pub fn cusp_curve_36() -> Result<CurveModel> {
    build_parametrized(&cusp_curve_36_input())
}

/// `[0:0:1]` as a convenience for open-set keys.
pub fn origin() -> ProjPoint {
    ProjPoint::from_ints(0, 0, 1).expect("nonzero")
}
