use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{
    branch_multiplicity, local_equation, newton_puiseux, Chart, NormalizationPosition, Place,
    ProjPoint, PuiseuxBranch,
};
use crate::algebra::{compose_unchecked, Poly, Rat, TruncSeries, UniPoly};
use crate::error::{Error, Result};
use crate::invariants::{
    delta_and_conductor, genus_of_normalization, SingularPointRecord, MAX_JET_ORDER,
};
use crate::puiseux::find_special_points;

const FIRST_PASS_ORDER: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveMode {
    /// Homogeneous equation in `x, y, z`, with optional proper rational
    /// parametrizations of its components.
    Implicit {
        equation: Poly,
        parametrization: Vec<GlobalParam>,
    },
    Parametrized,
}

/// `s -> [X(s) : Y(s) : Z(s)]` with coprime coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalParam {
    pub coords: [UniPoly; 3],
}

impl GlobalParam {
    pub fn new(coords: [UniPoly; 3]) -> Result<Self> {
        let g = coords
            .iter()
            .filter(|c| !c.is_zero())
            .fold(UniPoly::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(Error::InconsistentInput(
                "parametrization is identically zero".into(),
            ));
        }
        let coords = coords.map(|c| c.div_rem(&g).0);
        let gp = GlobalParam { coords };
        let lead = gp.at_infinity_vector();
        if (0..3).all(|i| {
            (0..3)
                .all(|j| (&gp.coords[i].scale(&lead[j]) - &gp.coords[j].scale(&lead[i])).is_zero())
        }) {
            return Err(Error::InconsistentInput(
                "parametrization is constant".into(),
            ));
        }
        Ok(gp)
    }

    pub fn degree(&self) -> usize {
        self.coords
            .iter()
            .filter_map(|c| c.degree())
            .max()
            .unwrap_or(0)
    }

    fn at_infinity_vector(&self) -> [Rat; 3] {
        let e = self.degree();
        [0, 1, 2].map(|i| self.coords[i].coeff(e))
    }

    /// Places `s = a` (rational) and `s = inf` mapping to `p`.
    pub fn preimages(&self, p: &ProjPoint) -> Result<Vec<Place>> {
        let mut minors = vec![];
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            minors.push(&self.coords[i].scale(&p.0[j]) - &self.coords[j].scale(&p.0[i]));
        }
        let mut places = vec![];
        let g = minors
            .iter()
            .filter(|m| !m.is_zero())
            .fold(UniPoly::zero(), |acc, m| acc.gcd(m));
        if !g.is_zero() {
            let roots = g.rational_roots();
            if !roots.complete() {
                return Err(Error::UnresolvedLocus(format!(
                    "a preimage of {p} under the parametrization is irrational; supply the curve in parametrized mode"
                )));
            }
            places.extend(roots.roots.into_iter().map(|(a, _)| Place::Finite(a)));
        }
        let lead = self.at_infinity_vector();
        let proportional =
            (0..3).all(|i| (0..3).all(|j| (&lead[i] * &p.0[j] - &lead[j] * &p.0[i]).is_zero()));
        if proportional {
            places.push(Place::Infinity);
        }
        Ok(places)
    }

    /// Homogeneous coordinates as exact series in the local parameter at a
    /// place.
    fn local_coords(&self, place: &Place) -> [TruncSeries; 3] {
        let e = self.degree();
        self.coords.clone().map(|c| match place {
            Place::Finite(a) => TruncSeries::from_unipoly("t", &c.translate(a)),
            Place::Infinity => {
                TruncSeries::exact("t", (0..=e).map(|k| (k as u32, c.coeff(e - k))).collect())
            }
        })
    }

    pub fn as_polys(&self) -> Vec<Poly> {
        self.coords
            .iter()
            .map(|c| Poly::from_univariate(&["s"], 0, c))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    pub mode: CurveMode,
    pub degree: Option<u32>,
    /// Sum of the genera of the components of the normalization.
    pub genus: i64,
    pub components: u32,
    /// Singular points and points on the line at infinity.
    pub points: Vec<SingularPointRecord>,
    /// Every point on the line at infinity is among `points`.
    pub infinity_known: bool,
    /// The normalization is a union of projective lines and branch
    /// positions on them are meaningful.
    pub rational_normalization: bool,
    pub notes: Vec<String>,
}

impl CurveModel {
    pub fn singular_points(&self) -> impl Iterator<Item = &SingularPointRecord> {
        self.points.iter().filter(|r| r.is_singular())
    }

    pub fn infinity_points(&self) -> impl Iterator<Item = &SingularPointRecord> {
        self.points.iter().filter(|r| r.at_infinity)
    }

    pub fn branches(&self) -> impl Iterator<Item = &PuiseuxBranch> {
        self.points.iter().flat_map(|r| r.branches.iter())
    }

    /// Looks a point up by id or by its coordinate string such as `[0:0:1]`.
    pub fn find_point(&self, key: &str) -> Option<&SingularPointRecord> {
        let compact: String = key.chars().filter(|c| !c.is_whitespace()).collect();
        self.points
            .iter()
            .find(|r| r.id == key || r.coords.as_ref().is_some_and(|c| c.to_string() == compact))
    }
}

/// Recomputes the multiplicity of a branch, compares it with a declared
/// value and, given a local equation, checks that the branch lies on it
/// through the working precision.
pub fn validate_branch(
    b: &PuiseuxBranch,
    local_eq: Option<&Poly>,
    declared_mult: Option<u32>,
) -> Result<PuiseuxBranch> {
    let mult = branch_multiplicity(&b.components).ok_or_else(|| {
        Error::InconsistentInput(format!("branch {} has only zero components", b.branch_id))
    })?;
    if let Some(d) = declared_mult {
        if d != mult {
            return Err(Error::InconsistentMultiplicity {
                branch: b.branch_id.clone(),
                declared: d,
                actual: mult,
            });
        }
    }
    if let Some(f) = local_eq {
        if !b.symbolic {
            let r = compose_unchecked(f, &b.components)?;
            if !r.coeffs.is_empty() {
                return Err(Error::NotOnCurve {
                    branch: b.branch_id.clone(),
                });
            }
        }
    }
    Ok(PuiseuxBranch { mult, ..b.clone() })
}

fn param_branches(
    params: &[GlobalParam],
    p: &ProjPoint,
    point_id: &str,
    n: u32,
) -> Result<Vec<PuiseuxBranch>> {
    let chart = Chart::for_point(p);
    let Chart::Affine {
        dehomogenized,
        local,
    } = chart
    else {
        unreachable!()
    };
    let mut out = vec![];
    for (j, phi) in params.iter().enumerate() {
        for place in phi.preimages(p)? {
            let coords = phi.local_coords(&place);
            let den = &coords[dehomogenized];
            let scale = den.coeff(0);
            let components: Vec<TruncSeries> = local
                .iter()
                .map(|&i| {
                    let num = if den.exact && den.coeffs.len() == 1 {
                        coords[i].scale(&scale.recip())
                    } else {
                        coords[i].mul(&den.inverse(n).expect("denominator is a unit"))
                    };
                    num.sub(&TruncSeries::constant("t", p.0[i].clone()))
                })
                .collect();
            let infinity_order = if p.at_infinity() {
                let zi = local.iter().position(|&i| i == 2).expect("z is local");
                components[zi].valuation()
            } else {
                None
            };
            out.push(PuiseuxBranch {
                branch_id: format!("{point_id}.{}", out.len()),
                point_id: point_id.to_string(),
                center: Some(p.clone()),
                chart: chart.clone(),
                mult: branch_multiplicity(&components).unwrap_or(0),
                components,
                infinity_order,
                infinity_component: None,
                symbolic: false,
                position: Some(NormalizationPosition {
                    component: j,
                    place,
                }),
            });
        }
    }
    Ok(out)
}

fn mult_profile(bs: &[PuiseuxBranch]) -> Vec<u32> {
    let mut v: Vec<u32> = bs.iter().map(|b| b.mult).collect();
    v.sort();
    v
}

/// Expands the branches at one point with growing truncation until the
/// delta computation is certified.
fn analyze_point(
    equation: &Poly,
    params: &[GlobalParam],
    p: &ProjPoint,
    id: &str,
    notes: &mut Vec<String>,
) -> Result<SingularPointRecord> {
    let local = local_equation(equation, p);
    let order = local.order().unwrap_or(0);
    let expand = |n: u32| -> Result<Vec<PuiseuxBranch>> {
        let np = newton_puiseux(equation, p, id, n);
        if params.is_empty() {
            return np;
        }
        let pb = param_branches(params, p, id, n)?;
        if mult_profile(&pb).iter().sum::<u32>() != order {
            return Err(Error::InconsistentInput(format!(
                "parametrization branches at {p} do not account for multiplicity {order}"
            )));
        }
        match np {
            Ok(nb) if mult_profile(&nb) != mult_profile(&pb) => Err(Error::InconsistentInput(
                format!("parametrization and Newton–Puiseux disagree at {p}"),
            )),
            Ok(_) | Err(Error::IrrationalCoefficients { .. }) => Ok(pb),
            Err(e) => Err(e),
        }
    };
    let mut n = FIRST_PASS_ORDER;
    let mut branches = expand(n)?;
    let weight: u32 = branches.iter().map(|b| b.mult * (b.mult + 1)).sum();
    let target = (4 * weight).clamp(32, MAX_JET_ORDER);
    if branches.iter().any(|b| !b.is_exact()) && target > n {
        n = target;
        branches = expand(n)?;
    }
    let delta = loop {
        let refs: Vec<&PuiseuxBranch> = branches.iter().collect();
        match delta_and_conductor(&refs) {
            Ok((d, _)) => break d,
            Err(Error::TruncationInsufficient { .. }) if n < MAX_JET_ORDER => {
                n = (2 * n).min(MAX_JET_ORDER);
                branches = expand(n)?;
            }
            Err(e) => return Err(e),
        }
    };
    for b in &branches {
        validate_branch(b, Some(&local), None)?;
    }
    if !params.is_empty() {
        notes.push(format!(
            "branches at {id} come from the global parametrization"
        ));
    }
    SingularPointRecord::new(id, Some(p.clone()), p.at_infinity(), branches, delta)
}

/// Analyzes the projective curve `equation(x, y, z) = 0`. In affine use the
/// points on `z = 0` must all be rational.
pub fn build_implicit(
    equation: &Poly,
    affine: bool,
    parametrization: Vec<GlobalParam>,
    components: Option<u32>,
) -> Result<CurveModel> {
    if equation.nvars() != 3 || !equation.is_homogeneous() || equation.is_constant() {
        return Err(Error::NotHomogeneous);
    }
    let d = equation.total_degree().expect("nonzero");
    let sp = find_special_points(equation)?;
    if sp.unresolved_singular {
        return Err(Error::UnresolvedLocus(
            "a singular point has irrational coordinates; supply the curve in parametrized mode"
                .into(),
        ));
    }
    if affine && sp.unresolved_infinity {
        return Err(Error::UnresolvedLocus(
            "a point at infinity has irrational coordinates; supply the curve in parametrized mode"
                .into(),
        ));
    }
    if affine && sp.component_at_infinity {
        return Err(Error::InconsistentInput(
            "the line at infinity is a component of the curve".into(),
        ));
    }
    let mut pts: Vec<ProjPoint> = sp.singular.clone();
    for q in &sp.infinity {
        if !pts.contains(q) {
            pts.push(q.clone());
        }
    }
    pts.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));

    let sub: Vec<Poly> = parametrization
        .iter()
        .map(|g| g.as_polys())
        .map(|v| equation.compose(&v))
        .collect();
    for (j, r) in sub.iter().enumerate() {
        if !r.is_zero() {
            return Err(Error::NotOnCurve {
                branch: format!("parametrization {j}"),
            });
        }
    }
    if !parametrization.is_empty() {
        let total: usize = parametrization.iter().map(|g| g.degree()).sum();
        if total != d as usize {
            return Err(Error::InconsistentInput(format!(
                "parametrization degrees sum to {total} but the curve has degree {d}; proper parametrizations are required"
            )));
        }
    }
    let c = match (parametrization.len(), components) {
        (0, c) => c.unwrap_or(1),
        (k, None) => k as u32,
        (k, Some(c)) if c == k as u32 => c,
        (k, Some(c)) => {
            return Err(Error::InconsistentInput(format!(
                "{c} components declared but {k} parametrizations given"
            )))
        }
    };

    let mut notes = vec![];
    let mut points = vec![];
    for (i, p) in pts.iter().enumerate() {
        let id = format!("p{i}");
        points.push(analyze_point(
            equation,
            &parametrization,
            p,
            &id,
            &mut notes,
        )?);
    }
    let singular: Vec<SingularPointRecord> =
        points.iter().filter(|r| r.is_singular()).cloned().collect();
    let genus = genus_of_normalization(d, &singular, c)?;
    if !parametrization.is_empty() && genus != 0 {
        return Err(Error::InconsistentInput(format!(
            "rational parametrization given but the genus formula gives {genus}"
        )));
    }
    if sp.unresolved_infinity {
        notes.push("some points at infinity are irrational; affine divisor unavailable".into());
    }
    Ok(CurveModel {
        mode: CurveMode::Implicit {
            equation: equation.clone(),
            parametrization: parametrization.clone(),
        },
        degree: Some(d),
        genus,
        components: c,
        points,
        infinity_known: !sp.unresolved_infinity && !sp.component_at_infinity,
        rational_normalization: !parametrization.is_empty(),
        notes,
    })
}

/// A coefficient of a user-supplied branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Value(Rat),
    Symbolic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamBranchInput {
    pub components: Vec<BTreeMap<u32, Coefficient>>,
    /// Truncation order of the components; `None` means exact polynomials.
    pub order: Option<u32>,
    /// Component that is the local equation of the line at infinity.
    pub infinity_component: Option<usize>,
    pub infinity_order: Option<u32>,
    pub position: Option<NormalizationPosition>,
    pub declared_mult: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPointInput {
    pub id: String,
    pub coords: Option<ProjPoint>,
    pub at_infinity: bool,
    pub repeat: u32,
    pub delta: Option<u32>,
    pub branches: Vec<ParamBranchInput>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametrizedInput {
    pub degree: Option<u32>,
    pub genus: Option<i64>,
    pub components: u32,
    pub rational_normalization: bool,
    pub points: Vec<ParamPointInput>,
}

fn param_branch(
    input: &ParamBranchInput,
    point_id: &str,
    k: usize,
    center: &Option<ProjPoint>,
) -> Result<PuiseuxBranch> {
    let branch_id = format!("{point_id}.{k}");
    let mut symbolic = false;
    let components: Vec<TruncSeries> = input
        .components
        .iter()
        .map(|m| {
            let coeffs: BTreeMap<u32, Rat> = m
                .iter()
                .map(|(e, c)| {
                    (
                        *e,
                        match c {
                            Coefficient::Value(v) => v.clone(),
                            Coefficient::Symbolic => {
                                symbolic = true;
                                Rat::one()
                            }
                        },
                    )
                })
                .collect();
            if coeffs.contains_key(&0) {
                return Err(Error::InconsistentInput(format!(
                    "branch {branch_id} is not centered: a component has a constant term"
                )));
            }
            Ok(match input.order {
                Some(n) => TruncSeries::new("t", coeffs, n),
                None => TruncSeries::exact("t", coeffs),
            })
        })
        .collect::<Result<_>>()?;
    if components.len() < 2 {
        return Err(Error::InconsistentInput(format!(
            "branch {branch_id} needs at least two components"
        )));
    }
    let g = components
        .iter()
        .flat_map(|c| c.coeffs.keys().copied())
        .fold(0u32, |g, e| g.gcd(&e));
    if g > 1 {
        return Err(Error::InconsistentInput(format!(
            "branch {branch_id} is parametrized through t^{g}; the parametrization must be primitive"
        )));
    }
    let infinity_order = match (input.infinity_component, input.infinity_order) {
        (Some(i), declared) => {
            let c = components.get(i).ok_or_else(|| {
                Error::InconsistentInput(format!("branch {branch_id}: no component {i}"))
            })?;
            let v = c.valuation();
            if declared.is_some() && declared != v {
                return Err(Error::InconsistentInput(format!(
                    "branch {branch_id}: declared intersection with infinity disagrees with its component"
                )));
            }
            v
        }
        (None, declared) => declared,
    };
    let b = PuiseuxBranch {
        branch_id,
        point_id: point_id.to_string(),
        center: center.clone(),
        chart: Chart::Declared,
        mult: 0,
        components,
        infinity_order,
        infinity_component: input.infinity_component,
        symbolic,
        position: input.position.clone(),
    };
    validate_branch(&b, None, input.declared_mult)
}

/// Builds a standalone branch from its input data.
pub fn branch_from_input(input: &ParamBranchInput, id: &str) -> Result<PuiseuxBranch> {
    let mut b = param_branch(input, id, 0, &None)?;
    b.branch_id = id.to_string();
    Ok(b)
}

fn expand_repeats(points: &[ParamPointInput]) -> Vec<(String, &ParamPointInput)> {
    let mut out = vec![];
    for p in points {
        if p.repeat <= 1 {
            out.push((p.id.clone(), p));
        } else {
            for k in 0..p.repeat {
                out.push((format!("{}#{k}", p.id), p));
            }
        }
    }
    out
}

/// Builds a curve model from user-supplied branch data.
pub fn build_parametrized(input: &ParametrizedInput) -> Result<CurveModel> {
    let mut points = vec![];
    let mut seen = std::collections::BTreeSet::new();
    for (id, p) in expand_repeats(&input.points) {
        if !seen.insert(id.clone()) {
            return Err(Error::InconsistentInput(format!("duplicate point id {id}")));
        }
        if p.branches.is_empty() {
            return Err(Error::InconsistentInput(format!(
                "point {id} has no branches"
            )));
        }
        let coords = p.coords.clone();
        if let Some(c) = &coords {
            if c.at_infinity() != p.at_infinity {
                return Err(Error::InconsistentInput(format!(
                    "point {id}: coordinates disagree with the at_infinity flag"
                )));
            }
        }
        let branches: Vec<PuiseuxBranch> = p
            .branches
            .iter()
            .enumerate()
            .map(|(k, b)| param_branch(b, &id, k, &coords))
            .collect::<Result<_>>()?;
        let refs: Vec<&PuiseuxBranch> = branches.iter().collect();
        let delta = match (delta_and_conductor(&refs), p.delta) {
            (Ok((d, _)), Some(decl)) if d != decl => {
                return Err(Error::InconsistentInput(format!(
                    "point {id}: declared delta {decl}, computed {d}"
                )))
            }
            (Ok((d, _)), _) => d,
            (Err(Error::InconsistentInput(_)), Some(decl)) => decl,
            (Err(e), _) => return Err(e),
        };
        points.push(SingularPointRecord::new(
            &id,
            coords,
            p.at_infinity,
            branches,
            delta,
        )?);
    }
    let c = input.components.max(1);
    let genus = match (input.genus, input.degree) {
        (Some(g), Some(d)) => {
            let singular: Vec<SingularPointRecord> =
                points.iter().filter(|r| r.is_singular()).cloned().collect();
            let pl = genus_of_normalization(d, &singular, c)?;
            if pl != g {
                return Err(Error::InconsistentInput(format!(
                    "declared genus {g} but the degree and deltas give {pl}"
                )));
            }
            g
        }
        (Some(g), None) if g >= 0 => g,
        (Some(g), None) => return Err(Error::NegativeGenus { value: g }),
        (None, Some(d)) => {
            let singular: Vec<SingularPointRecord> =
                points.iter().filter(|r| r.is_singular()).cloned().collect();
            genus_of_normalization(d, &singular, c)?
        }
        (None, None) => {
            return Err(Error::InconsistentInput(
                "either degree or genus must be given".into(),
            ))
        }
    };
    if input.rational_normalization && genus != 0 {
        return Err(Error::InconsistentInput(format!(
            "rational normalization declared but the genus is {genus}"
        )));
    }
    let infinity_known = points.iter().any(|r| r.at_infinity);
    Ok(CurveModel {
        mode: CurveMode::Parametrized,
        degree: input.degree,
        genus,
        components: c,
        points,
        infinity_known,
        rational_normalization: input.rational_normalization,
        notes: vec![],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat};

    fn cubic(s: &str) -> Poly {
        parse_poly(s, Some(&["x", "y", "z"])).unwrap()
    }

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn cuspidal_cubic_model() {
        let m = build_implicit(&cubic("y^2*z - x^3"), false, vec![], None).unwrap();
        assert_eq!(m.genus, 0);
        let s: Vec<_> = m.singular_points().collect();
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].m, s[0].r, s[0].delta), (2, 1, 1));
        let inf: Vec<_> = m.infinity_points().collect();
        assert_eq!(inf.len(), 1);
        assert_eq!(inf[0].inf_mults, Some(vec![3]));
        assert_eq!(m.find_point("[0:0:1]").unwrap().id, "p0");
    }

    #[test]
    fn nodal_cubic_with_parametrization() {
        // y^2 z = x^2 (x + z), s -> [s^2 - 1 : s^3 - s : 1]
        let phi = GlobalParam::new([up(&[-1, 0, 1]), up(&[0, -1, 0, 1]), up(&[1])]).unwrap();
        let m = build_implicit(&cubic("y^2*z - x^3 - x^2*z"), false, vec![phi], None).unwrap();
        let node = m.find_point("[0:0:1]").unwrap();
        assert_eq!((node.m, node.r, node.delta), (2, 2, 1));
        let places: Vec<_> = node
            .branches
            .iter()
            .map(|b| b.position.clone().unwrap().place)
            .collect();
        assert_eq!(
            places,
            vec![Place::Finite(rat(-1, 1)), Place::Finite(rat(1, 1))]
        );
        assert!(m.rational_normalization);
        let inf = m.find_point("[0:1:0]").unwrap();
        assert_eq!(
            inf.branches[0].position.clone().unwrap().place,
            Place::Infinity
        );
    }

    #[test]
    fn wrong_parametrization_rejected() {
        let phi = GlobalParam::new([up(&[0, 1]), up(&[0, 0, 1]), up(&[1])]).unwrap();
        let err = build_implicit(&cubic("y^2*z - x^3"), false, vec![phi], None).unwrap_err();
        assert!(matches!(err, Error::NotOnCurve { .. }));
    }

    #[test]
    fn affine_conic_needs_rational_infinity() {
        let err = build_implicit(&cubic("x^2 + y^2 - z^2"), true, vec![], None).unwrap_err();
        assert!(matches!(err, Error::UnresolvedLocus(_)));
        assert!(build_implicit(&cubic("x^2 + y^2 - z^2"), false, vec![], None).is_ok());
    }

    #[test]
    fn branch_validation() {
        let b = PuiseuxBranch {
            branch_id: "o.0".into(),
            point_id: "o".into(),
            center: None,
            chart: Chart::Declared,
            mult: 0,
            components: vec![
                TruncSeries::monomial("t", rat(1, 1), 2),
                TruncSeries::monomial("t", rat(1, 1), 3),
            ],
            infinity_order: None,
            infinity_component: None,
            symbolic: false,
            position: None,
        };
        let uv = Some(&["u", "v"][..]);
        let ok = validate_branch(&b, Some(&parse_poly("v^2 - u^3", uv).unwrap()), None).unwrap();
        assert_eq!(ok.mult, 2);
        assert!(matches!(
            validate_branch(&b, Some(&parse_poly("v^2 - u^5", uv).unwrap()), None),
            Err(Error::NotOnCurve { .. })
        ));
        let swapped = PuiseuxBranch {
            components: vec![b.components[1].clone(), b.components[0].clone()],
            ..b
        };
        assert!(matches!(
            validate_branch(&swapped, None, Some(3)),
            Err(Error::InconsistentMultiplicity {
                declared: 3,
                actual: 2,
                ..
            })
        ));
    }
}
