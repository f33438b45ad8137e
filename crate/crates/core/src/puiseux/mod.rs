//! Local branches of plane curve germs.
//!
//! Branches come either from a Newton–Puiseux expansion of an implicit
//! equation over the rationals, from a global rational parametrization, or
//! directly from user-supplied parametrizations which are validated here.

mod model;
mod newton;
mod points;

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{rat_to_string, Poly, Rat, TruncSeries};

pub use model::{
    branch_from_input, build_implicit, build_parametrized, validate_branch, Coefficient, CurveMode,
    CurveModel, GlobalParam, ParamBranchInput, ParamPointInput, ParametrizedInput,
};
pub use newton::{newton_puiseux, newton_puiseux_local, LocalBranch};
pub use points::{find_special_points, SpecialPoints};

/// A point of the projective plane, scaled so that its last nonzero
/// coordinate is one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint(pub [Rat; 3]);

impl ProjPoint {
    pub fn new(coords: [Rat; 3]) -> Option<Self> {
        let k = coords.iter().rposition(|c| !c.is_zero())?;
        let s = coords[k].recip();
        Some(ProjPoint(coords.map(|c| c * &s)))
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Option<Self> {
        Self::new([x, y, z].map(|v| Rat::from_integer(v.into())))
    }

    /// Index of the coordinate that equals one (the dehomogenizing chart).
    pub fn chart(&self) -> usize {
        self.0
            .iter()
            .rposition(|c| !c.is_zero())
            .expect("nonzero point")
    }

    pub fn at_infinity(&self) -> bool {
        self.0[2].is_zero()
    }

    /// Sort key placing affine points before points at infinity.
    pub fn sort_key(&self) -> (bool, &[Rat; 3]) {
        (self.at_infinity(), &self.0)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rat_to_string).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// Which affine chart a branch lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chart {
    /// The ambient coordinate `dehomogenized` is set to one and the local
    /// coordinates are the other two, translated to the center.
    Affine {
        dehomogenized: usize,
        local: [usize; 2],
    },
    /// Coordinates supplied by the user.
    Declared,
}

impl Chart {
    pub fn for_point(p: &ProjPoint) -> Chart {
        let c = p.chart();
        let local = match c {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        };
        Chart::Affine {
            dehomogenized: c,
            local,
        }
    }
}

/// Position of a branch on a rational component of the normalization.
/// The branch parameter is `s - a` at a finite place and `1/s` at infinity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Finite(Rat),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationPosition {
    pub component: usize,
    pub place: Place,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxBranch {
    pub branch_id: String,
    pub point_id: String,
    pub center: Option<ProjPoint>,
    pub chart: Chart,
    /// Centered local coordinates as series in the branch parameter.
    pub components: Vec<TruncSeries>,
    pub mult: u32,
    /// Intersection multiplicity with the line at infinity, for branches
    /// centered on it.
    pub infinity_order: Option<u32>,
    /// Index of the component that cuts out the line at infinity, for
    /// branches in declared coordinates.
    pub infinity_component: Option<usize>,
    /// Coefficients were declared symbolic; only orders are meaningful.
    pub symbolic: bool,
    pub position: Option<NormalizationPosition>,
}

impl PuiseuxBranch {
    /// Smallest order among the components; zero components are skipped.
    pub fn component_orders(&self) -> Vec<Option<u32>> {
        self.components.iter().map(|c| c.valuation()).collect()
    }

    /// Working precision of the components (`None` when all are exact).
    pub fn precision(&self) -> Option<u32> {
        self.components.iter().filter_map(|c| c.precision()).min()
    }

    pub fn is_exact(&self) -> bool {
        self.components.iter().all(|c| c.exact)
    }

    /// Leading exponents and coefficients, used for ordering branches.
    pub fn sort_key(&self) -> Vec<(u32, Rat)> {
        self.components
            .iter()
            .map(|c| match c.leading() {
                Some((k, v)) => (k, v.clone()),
                None => (u32::MAX, Rat::zero()),
            })
            .collect()
    }
}

/// Branch multiplicity: the minimal order of the centered components.
pub fn branch_multiplicity(components: &[TruncSeries]) -> Option<u32> {
    components.iter().filter_map(|c| c.valuation()).min()
}

/// Reparametrizes `t -> c t` so that the first nonzero leading coefficient
/// becomes one, when the required root is rational.
pub fn normalize_parameter(components: &mut [TruncSeries]) {
    let Some((k, lead)) = components
        .iter()
        .filter_map(|c| c.leading())
        .min_by_key(|(k, _)| *k)
        .map(|(k, v)| (k, v.clone()))
    else {
        return;
    };
    if lead.is_one() || k == 0 {
        return;
    }
    if let Some(c) = crate::algebra::rational_nth_root(&lead.recip(), k) {
        for comp in components.iter_mut() {
            *comp = comp.substitute_monomial(&c, 1);
        }
    }
}

/// Local equation of `f` at `p` in the chart of `p`, with variables `u, v`.
pub fn local_equation(f: &Poly, p: &ProjPoint) -> Poly {
    let Chart::Affine {
        dehomogenized,
        local,
    } = Chart::for_point(p)
    else {
        unreachable!()
    };
    let uv = ["u", "v"];
    let mut subs = vec![Poly::zero(&uv); 3];
    subs[dehomogenized] = Poly::constant(&uv, Rat::one());
    for (k, &i) in local.iter().enumerate() {
        subs[i] = &Poly::var(&uv, k) + &Poly::constant(&uv, p.0[i].clone());
    }
    f.compose(&subs)
}
