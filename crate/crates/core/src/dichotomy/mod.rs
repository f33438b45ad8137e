//! Finite- versus infinite-dimensionality of Bergman spaces on open subsets
//! of curves, with dimensions of the finite ones.

mod sections;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use sections::{h0_bounds, h0_rational, semigroup_gap_count};

use crate::divisors::{
    affine_multiplicity_divisor, multiplicity_divisor, open_set_restriction, Divisor,
};
use crate::error::{Error, Result};
use crate::invariants::SingularPointRecord;
use crate::puiseux::CurveModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    Projective,
    Affine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplementKind {
    NonPolar,
    LocallyPolar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Interior,
    Boundary,
    Exterior,
}

/// An open subset `U` described through its complement and the position of
/// each special point relative to `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenSetSpec {
    pub ambient: Ambient,
    pub complement: ComplementKind,
    /// Keyed by point id or coordinate string.
    pub classes: BTreeMap<String, PointClass>,
    pub default_class: Option<PointClass>,
}

impl OpenSetSpec {
    pub fn new(ambient: Ambient, complement: ComplementKind) -> Self {
        OpenSetSpec {
            ambient,
            complement,
            classes: BTreeMap::new(),
            default_class: None,
        }
    }

    pub fn with(mut self, key: &str, class: PointClass) -> Self {
        self.classes.insert(key.to_string(), class);
        self
    }

    pub fn with_default(mut self, class: PointClass) -> Self {
        self.default_class = Some(class);
        self
    }

    pub fn class_of(&self, rec: &SingularPointRecord) -> Option<PointClass> {
        if let Some(c) = self.classes.get(&rec.id) {
            return Some(*c);
        }
        if let Some(p) = &rec.coords {
            if let Some(c) = self.classes.get(&p.to_string()) {
                return Some(*c);
            }
        }
        self.default_class
    }

    /// Every key must name a point of the curve; a point at infinity of an
    /// affine curve can only be a boundary point.
    pub fn check_against(&self, curve: &CurveModel) -> Result<()> {
        for (key, class) in &self.classes {
            let rec = curve.find_point(key).ok_or_else(|| {
                Error::InconsistentInput(format!("open set names unknown point {key}"))
            })?;
            if self.ambient == Ambient::Affine && rec.at_infinity && *class != PointClass::Boundary
            {
                return Err(Error::InconsistentInput(format!(
                    "point {key} lies at infinity and cannot be {class:?} in an affine open set"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Infinite,
    Finite,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExactPolicy {
    #[default]
    Auto,
    Require,
    BoundsOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyReport {
    pub verdict: Verdict,
    pub exact_dim: Option<u64>,
    pub lower_bound: Option<u64>,
    pub upper_bound: Option<u64>,
    pub effective_divisor_used: Option<Divisor>,
    pub divisor_degree: Option<i64>,
    pub interior_points: Vec<String>,
    /// Sum of the delta invariants of the interior singular points.
    pub interior_condition_count: u32,
    pub genus: i64,
    pub notes: Vec<String>,
}

struct Prepared<'a> {
    restricted: Divisor,
    interior: Vec<&'a SingularPointRecord>,
}

fn prepare<'a>(curve: &'a CurveModel, spec: &OpenSetSpec) -> Result<Prepared<'a>> {
    spec.check_against(curve)?;
    let d = match spec.ambient {
        Ambient::Projective => multiplicity_divisor(curve),
        Ambient::Affine => affine_multiplicity_divisor(curve)?,
    };
    let mut interior = vec![];
    for rec in curve.singular_points() {
        if spec.ambient == Ambient::Affine && rec.at_infinity {
            continue;
        }
        match spec.class_of(rec) {
            None => {
                return Err(Error::UnclassifiedPoint {
                    point: rec.id.clone(),
                })
            }
            Some(PointClass::Exterior) => {
                return Err(Error::ExteriorUnderPolar {
                    point: rec.id.clone(),
                })
            }
            Some(PointClass::Interior) => interior.push(rec),
            Some(PointClass::Boundary) => {}
        }
    }
    let restricted = open_set_restriction(&d, curve, spec)?;
    Ok(Prepared {
        restricted,
        interior,
    })
}

/// Riemann–Roch bounds for the restricted divisor, lowered by the
/// conditions imposed at interior singular points.
fn bounds(curve: &CurveModel, prep: &Prepared) -> (u64, u64) {
    let deg = prep.restricted.degree();
    let g = curve.genus;
    let c = curve.components.max(1) as i64;
    let delta: i64 = prep.interior.iter().map(|r| r.delta as i64).sum();
    let (mut lower, mut upper) = if c == 1 {
        h0_bounds(deg, g)
    } else {
        (
            (c - g + deg).max(0) as u64,
            (prep.restricted.positive_part().degree() + c) as u64,
        )
    };
    if !prep.interior.is_empty() {
        lower = (lower as i64 - delta).max(0) as u64;
    }
    if c == 1 && prep.restricted.is_effective() {
        // constants descend to every local ring
        lower = lower.max(1);
    }
    upper = upper.max(lower);
    (lower, upper)
}

/// Decides whether `A^2(U)` is infinite-dimensional and, if not, computes
/// its dimension or bounds for it.
pub fn decide(
    curve: &CurveModel,
    spec: &OpenSetSpec,
    policy: ExactPolicy,
) -> Result<DichotomyReport> {
    if spec.complement == ComplementKind::NonPolar {
        return Ok(DichotomyReport {
            verdict: Verdict::Infinite,
            exact_dim: None,
            lower_bound: None,
            upper_bound: None,
            effective_divisor_used: None,
            divisor_degree: None,
            interior_points: vec![],
            interior_condition_count: 0,
            genus: curve.genus,
            notes: vec!["complement is not locally polar".into()],
        });
    }
    let prep = prepare(curve, spec)?;
    let (lower, upper) = bounds(curve, &prep);
    let mut notes = vec![];
    let mut exact = (lower == upper).then_some(lower);
    if exact.is_none() && policy != ExactPolicy::BoundsOnly {
        match h0_rational(curve, &prep.restricted, &prep.interior) {
            Ok(n) => exact = Some(n),
            Err(e @ (Error::UnsupportedGenus(_) | Error::MissingNormalization { .. })) => {
                if policy == ExactPolicy::Require {
                    return Err(e);
                }
                notes.push(format!("bounds only: {e}"));
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(n) = exact {
        if n < lower || n > upper {
            return Err(Error::InconsistentInput(format!(
                "section count {n} outside the bounds [{lower}, {upper}]"
            )));
        }
    }
    Ok(DichotomyReport {
        verdict: Verdict::Finite,
        exact_dim: exact,
        lower_bound: Some(lower),
        upper_bound: Some(upper),
        divisor_degree: Some(prep.restricted.degree()),
        effective_divisor_used: Some(prep.restricted),
        interior_points: prep.interior.iter().map(|r| r.id.clone()).collect(),
        interior_condition_count: prep.interior.iter().map(|r| r.delta).sum(),
        genus: curve.genus,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct L2DeltaReport {
    pub l2_delta: u64,
    /// `dim A^2` of the preimage of `U` in the normalization.
    pub dim_normalization: Option<u64>,
    /// `dim` of the pullback of `A^2(U)`.
    pub dim_descended: Option<u64>,
    /// Sum of the delta invariants of the singular points inside `U`.
    pub delta_interior: u32,
    pub interior_points: Vec<String>,
}

/// `dim A^2(U~) / pi^* A^2(U)`.
pub fn l2_delta(curve: &CurveModel, spec: &OpenSetSpec) -> Result<L2DeltaReport> {
    if spec.complement == ComplementKind::NonPolar {
        return Err(Error::NonPolarComplement);
    }
    let prep = prepare(curve, spec)?;
    let delta_interior = prep.interior.iter().map(|r| r.delta).sum();
    let interior_points = prep.interior.iter().map(|r| r.id.clone()).collect();
    let upstairs = match h0_rational(curve, &prep.restricted, &[]) {
        Ok(n) => Some(n),
        Err(_) if prep.interior.is_empty() => None,
        Err(e) => return Err(e),
    };
    let (l2, downstairs) = match upstairs {
        None => (0, None),
        Some(up) if prep.interior.is_empty() => (0, Some(up)),
        Some(up) => {
            let down = h0_rational(curve, &prep.restricted, &prep.interior)?;
            (up - down, Some(down))
        }
    };
    Ok(L2DeltaReport {
        l2_delta: l2,
        dim_normalization: upstairs,
        dim_descended: downstairs,
        delta_interior,
        interior_points,
    })
}

/// `sum_Y (m - r) < sum_{X cap H} ((X . H)_p + r)`, i.e. `deg D_m^A < 0`.
pub fn triviality_test(curve: &CurveModel) -> Result<bool> {
    let (branchwise, pointwise) = crate::divisors::degree_consistency(curve)?;
    debug_assert_eq!(branchwise, pointwise);
    Ok(pointwise < 0)
}
