use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::algebra::{parse_poly, parse_rat, Poly, Rat};
use crate::dichotomy::{Ambient, ComplementKind, OpenSetSpec, PointClass};
use crate::error::{Error, Result};
use crate::numeric::{QuadratureConfig, Side};
use crate::puiseux::{
    build_implicit, build_parametrized, Coefficient, CurveModel, GlobalParam,
    NormalizationPosition, ParamBranchInput, ParamPointInput, ParametrizedInput, Place, ProjPoint,
};

pub const SCHEMA_VERSION: &str = "1";

fn check_version(v: &Option<String>) -> Result<()> {
    match v.as_deref() {
        None | Some(SCHEMA_VERSION) => Ok(()),
        Some(other) => Err(Error::Parse(format!("unsupported schema_version {other}"))),
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveMode {
    Implicit,
    Parametrized,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum CoefLiteral {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PositionFile {
    #[serde(default)]
    pub component: usize,
    /// A rational literal or `"inf"`.
    pub place: CoefLiteral,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchFile {
    /// One map from exponent to coefficient per local coordinate.
    pub components: Vec<BTreeMap<String, CoefLiteral>>,
    pub order: Option<u32>,
    pub infinity_component: Option<usize>,
    pub infinity_order: Option<u32>,
    pub mult: Option<u32>,
    pub position: Option<PositionFile>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointFile {
    pub id: String,
    pub coords: Option<String>,
    #[serde(default)]
    pub at_infinity: bool,
    #[serde(default = "one")]
    pub repeat: u32,
    pub delta: Option<u32>,
    pub branches: Vec<BranchFile>,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub schema_version: Option<String>,
    pub name: Option<String>,
    pub mode: CurveMode,
    #[serde(default = "projective")]
    pub ambient: Ambient,
    pub equation: Option<String>,
    pub variables: Option<Vec<String>>,
    pub degree: Option<u32>,
    pub genus: Option<i64>,
    pub components: Option<u32>,
    /// Homogeneous coordinates as polynomials in `s`, one triple per
    /// component.
    pub parametrization: Option<Vec<[String; 3]>>,
    #[serde(default)]
    pub rational_normalization: bool,
    pub points: Option<Vec<PointFile>>,
}

fn projective() -> Ambient {
    Ambient::Projective
}

fn rat_literal(c: &CoefLiteral) -> Result<Rat> {
    match c {
        CoefLiteral::Int(v) => Ok(Rat::from_integer((*v).into())),
        CoefLiteral::Text(s) => {
            parse_rat(s.trim()).ok_or_else(|| Error::Parse(format!("bad rational {s:?}")))
        }
    }
}

fn coefficient(c: &CoefLiteral) -> Result<Coefficient> {
    match c {
        CoefLiteral::Text(s) if s.trim() == "symbolic" => Ok(Coefficient::Symbolic),
        other => rat_literal(other).map(Coefficient::Value),
    }
}

fn place(c: &CoefLiteral) -> Result<Place> {
    match c {
        CoefLiteral::Text(s) if matches!(s.trim(), "inf" | "infinity") => Ok(Place::Infinity),
        other => rat_literal(other).map(Place::Finite),
    }
}

/// Parses `[a:b:c]`.
pub fn parse_point(s: &str) -> Result<ProjPoint> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("point {s:?} is not of the form [a:b:c]")))?;
    let parts: Vec<Rat> = inner
        .split(':')
        .map(|p| {
            parse_rat(p.trim()).ok_or_else(|| Error::Parse(format!("bad coordinate in {s:?}")))
        })
        .collect::<Result<_>>()?;
    let arr: [Rat; 3] = parts
        .try_into()
        .map_err(|_| Error::Parse(format!("point {s:?} needs three coordinates")))?;
    ProjPoint::new(arr).ok_or_else(|| Error::Parse(format!("point {s:?} is zero")))
}

fn branch_input(b: &BranchFile) -> Result<ParamBranchInput> {
    let components = b
        .components
        .iter()
        .map(|m| {
            m.iter()
                .map(|(e, c)| {
                    let e: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?;
                    Ok((e, coefficient(c)?))
                })
                .collect::<Result<BTreeMap<_, _>>>()
        })
        .collect::<Result<_>>()?;
    let position = b
        .position
        .as_ref()
        .map(|p| {
            Ok::<_, Error>(NormalizationPosition {
                component: p.component,
                place: place(&p.place)?,
            })
        })
        .transpose()?;
    Ok(ParamBranchInput {
        components,
        order: b.order,
        infinity_component: b.infinity_component,
        infinity_order: b.infinity_order,
        position,
        declared_mult: b.mult,
    })
}

/// Homogenizes with `z` when the equation is given in two variables.
fn projective_equation(text: &str, vars: Option<&[String]>) -> Result<Poly> {
    let names: Vec<&str> = match vars {
        Some(v) => v.iter().map(String::as_str).collect(),
        None => {
            let probe = parse_poly(text, None).map_err(|e| Error::Parse(e.to_string()))?;
            if probe.vars().iter().any(|v| v == "z") {
                vec!["x", "y", "z"]
            } else {
                vec!["x", "y"]
            }
        }
    };
    let f = parse_poly(text, Some(&names)).map_err(|e| Error::Parse(e.to_string()))?;
    let xyz = ["x", "y", "z"];
    match names.len() {
        3 => Ok(f.with_vars(&xyz)),
        2 => {
            let d = f
                .total_degree()
                .ok_or_else(|| Error::Parse("equation is zero".into()))?;
            let terms: Vec<(Vec<u32>, Rat)> = f
                .terms()
                .map(|(e, c)| {
                    let deg: u32 = e.iter().sum();
                    (vec![e[0], e[1], d - deg], c.clone())
                })
                .collect();
            Ok(Poly::from_terms(&xyz, terms))
        }
        n => Err(Error::Parse(format!(
            "equation needs 2 or 3 variables, got {n}"
        ))),
    }
}

fn global_param(triple: &[String; 3]) -> Result<GlobalParam> {
    let coords = triple
        .iter()
        .map(|s| {
            parse_poly(s, Some(&["s"]))
                .map_err(|e| Error::Parse(e.to_string()))?
                .to_univariate(0)
                .ok_or_else(|| Error::Parse(format!("{s:?} is not a polynomial in s")))
        })
        .collect::<Result<Vec<_>>>()?;
    let arr = coords.try_into().expect("three coordinates");
    GlobalParam::new(arr)
}

impl CurveFile {
    pub fn load(path: &Path) -> Result<CurveFile> {
        let f: CurveFile = read_json(path)?;
        check_version(&f.schema_version)?;
        Ok(f)
    }

    pub fn from_json(text: &str) -> Result<CurveFile> {
        let f: CurveFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        check_version(&f.schema_version)?;
        Ok(f)
    }

    pub fn build(&self) -> Result<CurveModel> {
        match self.mode {
            CurveMode::Implicit => {
                let text = self
                    .equation
                    .as_deref()
                    .ok_or_else(|| Error::Parse("implicit mode needs an equation".into()))?;
                if self.points.is_some() {
                    return Err(Error::Parse("implicit mode takes no point list".into()));
                }
                let f = projective_equation(text, self.variables.as_deref())?;
                if let (Some(d), Some(actual)) = (self.degree, f.total_degree()) {
                    if d != actual {
                        return Err(Error::InconsistentInput(format!(
                            "declared degree {d} but the equation has degree {actual}"
                        )));
                    }
                }
                let params = self
                    .parametrization
                    .iter()
                    .flatten()
                    .map(global_param)
                    .collect::<Result<Vec<_>>>()?;
                let model =
                    build_implicit(&f, self.ambient == Ambient::Affine, params, self.components)?;
                if let Some(g) = self.genus {
                    if g != model.genus {
                        return Err(Error::InconsistentInput(format!(
                            "declared genus {g} but the computed genus is {}",
                            model.genus
                        )));
                    }
                }
                Ok(model)
            }
            CurveMode::Parametrized => {
                if self.equation.is_some() || self.parametrization.is_some() {
                    return Err(Error::Parse(
                        "parametrized mode takes points, not an equation".into(),
                    ));
                }
                let points = self
                    .points
                    .as_ref()
                    .ok_or_else(|| Error::Parse("parametrized mode needs points".into()))?
                    .iter()
                    .map(|p| {
                        Ok(ParamPointInput {
                            id: p.id.clone(),
                            coords: p.coords.as_deref().map(parse_point).transpose()?,
                            at_infinity: p.at_infinity,
                            repeat: p.repeat,
                            delta: p.delta,
                            branches: p.branches.iter().map(branch_input).collect::<Result<_>>()?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                build_parametrized(&ParametrizedInput {
                    degree: self.degree,
                    genus: self.genus,
                    components: self.components.unwrap_or(1),
                    rational_normalization: self.rational_normalization,
                    points,
                })
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpenSetFile {
    pub schema_version: Option<String>,
    pub ambient: Option<Ambient>,
    pub complement: ComplementKind,
    #[serde(default)]
    pub points: BTreeMap<String, PointClass>,
    pub default: Option<PointClass>,
}

impl OpenSetFile {
    pub fn load(path: &Path) -> Result<OpenSetFile> {
        let f: OpenSetFile = read_json(path)?;
        check_version(&f.schema_version)?;
        Ok(f)
    }

    pub fn from_json(text: &str) -> Result<OpenSetFile> {
        let f: OpenSetFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        check_version(&f.schema_version)?;
        Ok(f)
    }

    /// The ambient defaults to the curve file's and must agree with it.
    pub fn spec(&self, curve_ambient: Ambient) -> Result<OpenSetSpec> {
        let ambient = self.ambient.unwrap_or(curve_ambient);
        if ambient != curve_ambient {
            return Err(Error::InconsistentInput(format!(
                "open set is {ambient:?} but the curve is {curve_ambient:?}"
            )));
        }
        let mut spec = OpenSetSpec::new(ambient, self.complement);
        for (k, v) in &self.points {
            let key = if k.trim_start().starts_with('[') {
                parse_point(k)?.to_string()
            } else {
                k.clone()
            };
            spec = spec.with(&key, *v);
        }
        spec.default_class = self.default;
        Ok(spec)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentCase {
    pub name: String,
    pub side: Side,
    pub branch: BranchFile,
    pub expected_slope: Option<f64>,
    /// Expected leading coefficient of the density.
    pub expected_leading: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyFile {
    pub schema_version: Option<String>,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default = "unit_radius")]
    pub radius: f64,
    #[serde(default = "default_range")]
    pub j_range: [i32; 2],
    #[serde(default = "default_range")]
    pub m_range: [i32; 2],
    pub isometry_pairs: Option<Vec<[i32; 2]>>,
    #[serde(default = "default_isometry_tol")]
    pub isometry_tol: f64,
    #[serde(default = "default_true")]
    pub convergence_check: bool,
    pub exponent_cases: Option<Vec<ExponentCase>>,
    /// Curve files whose branches are fitted, relative to this file.
    #[serde(default)]
    pub curves: Vec<String>,
    #[serde(default = "default_slope_tol")]
    pub slope_tol: f64,
    #[serde(default = "default_fit_residual")]
    pub fit_residual_tol: f64,
    #[serde(default = "default_leading_tol")]
    pub leading_rel_tol: f64,
}

fn unit_radius() -> f64 {
    1.0
}
fn default_range() -> [i32; 2] {
    [-4, 4]
}
fn default_isometry_tol() -> f64 {
    1e-6
}
fn default_true() -> bool {
    true
}
fn default_slope_tol() -> f64 {
    0.05
}
fn default_fit_residual() -> f64 {
    1e-3
}
fn default_leading_tol() -> f64 {
    0.01
}

impl Default for VerifyFile {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all fields default")
    }
}

impl VerifyFile {
    pub fn load(path: &Path) -> Result<VerifyFile> {
        let f: VerifyFile = read_json(path)?;
        check_version(&f.schema_version)?;
        Ok(f)
    }

    pub fn from_json(text: &str) -> Result<VerifyFile> {
        let f: VerifyFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        check_version(&f.schema_version)?;
        Ok(f)
    }

    pub fn branch(b: &BranchFile) -> Result<ParamBranchInput> {
        branch_input(b)
    }
}
