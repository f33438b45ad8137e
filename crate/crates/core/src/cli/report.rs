use serde::{Deserialize, Serialize};

use crate::algebra::rat_to_string;
use crate::dichotomy::{Ambient, DichotomyReport, L2DeltaReport};
use crate::divisors::{
    affine_multiplicity_divisor, degree_consistency, multiplicity_divisor, Divisor,
};
use crate::error::Error;
use crate::invariants::SingularPointRecord;
use crate::numeric::{NormEstimate, QuadratureConfig, Side};
use crate::puiseux::{CurveModel, Place, PuiseuxBranch};

use super::input::SCHEMA_VERSION;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisors: Option<DivisorSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<DichotomyReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l2delta: Option<L2DeltaReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericSummary>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            curve: None,
            divisors: None,
            verdict: None,
            l2delta: None,
            numeric: None,
            notes: vec![],
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSummary {
    pub mode: String,
    pub ambient: Ambient,
    pub degree: Option<u32>,
    pub genus: i64,
    pub components: u32,
    pub rational_normalization: bool,
    pub infinity_known: bool,
    pub singular_point_count: usize,
    pub points: Vec<PointSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSummary {
    pub id: String,
    pub coords: Option<String>,
    pub at_infinity: bool,
    pub singular: bool,
    pub multiplicity: u32,
    pub branch_count: u32,
    pub delta: u32,
    pub infinity_intersection: Option<u32>,
    pub branches: Vec<BranchSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchSummary {
    pub id: String,
    pub mult: u32,
    pub orders: Vec<Option<u32>>,
    pub infinity_order: Option<u32>,
    pub position: Option<PositionSummary>,
    pub exact: bool,
    pub symbolic: bool,
    pub series: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PositionSummary {
    pub component: usize,
    pub place: String,
}

fn branch_summary(b: &PuiseuxBranch) -> BranchSummary {
    BranchSummary {
        id: b.branch_id.clone(),
        mult: b.mult,
        orders: b.component_orders(),
        infinity_order: b.infinity_order,
        position: b.position.as_ref().map(|p| PositionSummary {
            component: p.component,
            place: match &p.place {
                Place::Finite(a) => rat_to_string(a),
                Place::Infinity => "inf".into(),
            },
        }),
        exact: b.is_exact(),
        symbolic: b.symbolic,
        series: b.components.iter().map(|c| c.to_string()).collect(),
    }
}

fn point_summary(r: &SingularPointRecord) -> PointSummary {
    PointSummary {
        id: r.id.clone(),
        coords: r.coords.as_ref().map(|p| p.to_string()),
        at_infinity: r.at_infinity,
        singular: r.is_singular(),
        multiplicity: r.m,
        branch_count: r.r,
        delta: r.delta,
        infinity_intersection: r.infinity_intersection(),
        branches: r.branches.iter().map(branch_summary).collect(),
    }
}

impl CurveSummary {
    pub fn new(curve: &CurveModel, ambient: Ambient) -> Self {
        CurveSummary {
            mode: match curve.mode {
                crate::puiseux::CurveMode::Implicit { .. } => "implicit".into(),
                crate::puiseux::CurveMode::Parametrized => "parametrized".into(),
            },
            ambient,
            degree: curve.degree,
            genus: curve.genus,
            components: curve.components,
            rational_normalization: curve.rational_normalization,
            infinity_known: curve.infinity_known,
            singular_point_count: curve.singular_points().count(),
            points: curve.points.iter().map(point_summary).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorSummary {
    pub multiplicity: Divisor,
    pub multiplicity_degree: i64,
    pub affine_multiplicity: Option<Divisor>,
    pub affine_multiplicity_degree: Option<i64>,
    /// Degree of the affine divisor summed over points rather than branches.
    pub affine_pointwise_degree: Option<i64>,
    /// `deg D_m^A < 0`.
    pub trivial: Option<bool>,
}

impl DivisorSummary {
    /// Affine data is left out, with a note, when the points at infinity
    /// are unknown.
    pub fn new(curve: &CurveModel, notes: &mut Vec<String>) -> Result<Self, Error> {
        let d = multiplicity_divisor(curve);
        let (affine, pointwise) = match affine_multiplicity_divisor(curve) {
            Ok(a) => {
                let (_, pw) = degree_consistency(curve)?;
                (Some(a), Some(pw))
            }
            Err(e @ Error::UnresolvedLocus(_)) => {
                notes.push(format!("affine divisor omitted: {e}"));
                (None, None)
            }
            Err(e) => return Err(e),
        };
        Ok(DivisorSummary {
            multiplicity_degree: d.degree(),
            multiplicity: d,
            affine_multiplicity_degree: affine.as_ref().map(Divisor::degree),
            affine_multiplicity: affine,
            affine_pointwise_degree: pointwise,
            trivial: pointwise.map(|p| p < 0),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericSummary {
    pub passed: bool,
    pub quadrature: QuadratureConfig,
    pub radius: f64,
    pub membership: MembershipSummary,
    pub isometry: Vec<IsometryEntry>,
    pub exponents: Vec<ExponentEntry>,
    pub convergence: Option<ConvergenceSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MembershipSummary {
    pub cases: usize,
    pub mismatches: usize,
    pub max_rel_error: Option<f64>,
    pub entries: Vec<MembershipEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MembershipEntry {
    pub j: i32,
    pub m: i32,
    pub expected_finite: bool,
    pub estimate: NormEstimate,
    pub closed_form: Option<f64>,
    pub rel_error: Option<f64>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsometryEntry {
    pub j: i32,
    pub m: i32,
    pub residual: Option<f64>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentEntry {
    pub name: String,
    pub branch: String,
    pub side: Side,
    pub predicted_slope: Option<f64>,
    pub slope: Option<f64>,
    pub fit_residual: Option<f64>,
    pub leading: Option<f64>,
    pub expected_leading: Option<f64>,
    pub skipped: Option<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergenceSummary {
    pub refined: QuadratureConfig,
    pub max_rel_change: f64,
    pub ok: bool,
}
