use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::ProjPoint;
use crate::algebra::{resultant, Poly, Rat, UniPoly};
use crate::error::{Error, Result};

/// Rational special points of a projective plane curve.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecialPoints {
    pub singular: Vec<ProjPoint>,
    /// Rational points on the line `z = 0`.
    pub infinity: Vec<ProjPoint>,
    /// Some singular point may have irrational coordinates.
    pub unresolved_singular: bool,
    /// Some point on `z = 0` has irrational coordinates.
    pub unresolved_infinity: bool,
    /// The line `z = 0` is a component of the curve.
    pub component_at_infinity: bool,
}

fn univariate(p: &Poly, var: usize) -> UniPoly {
    p.to_univariate(var)
        .expect("polynomial in a single variable")
}

fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a UniPoly>) -> Option<UniPoly> {
    let mut g: Option<UniPoly> = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        g = Some(match g {
            None => p.monic(),
            Some(g) => g.gcd(p),
        });
    }
    g
}

/// Singular points of the affine curve `f(x, y) = 0` with a rational
/// coordinate in position `elim_keep` (the coordinate that survives the
/// elimination). Returns the points and whether some singular point with
/// rational kept coordinate has an irrational partner coordinate, plus
/// whether the eliminant had irrational roots.
fn singular_by_elimination(
    f: &Poly,
    fx: &Poly,
    fy: &Poly,
    eliminate: usize,
) -> Result<(Vec<(Rat, Rat)>, bool, bool)> {
    let keep = 1 - eliminate;
    let r1 = resultant(f, if eliminate == 1 { fy } else { fx }, eliminate);
    if r1.is_zero() {
        return Err(Error::NotSquareFree);
    }
    let r2 = resultant(f, if eliminate == 1 { fx } else { fy }, eliminate);
    let r3 = resultant(fx, fy, eliminate);
    let rs: Vec<UniPoly> = [r1, r2, r3].iter().map(|r| univariate(r, keep)).collect();
    let g = gcd_all(&rs).expect("first resultant is nonzero");
    let roots = g.rational_roots();
    let mut points = vec![];
    let mut partner_irrational = false;
    for (c, _) in &roots.roots {
        let spec: Vec<UniPoly> = [f, fx, fy]
            .iter()
            .map(|p| univariate(&p.specialize(keep, c), eliminate))
            .collect();
        let Some(h) = gcd_all(&spec) else {
            return Err(Error::NotSquareFree);
        };
        let hr = h.rational_roots();
        if !hr.complete() {
            partner_irrational = true;
        }
        for (d, _) in hr.roots {
            points.push(if keep == 0 {
                (c.clone(), d)
            } else {
                (d, c.clone())
            });
        }
    }
    Ok((points, partner_irrational, !roots.complete()))
}

fn affine_singular(f: &Poly) -> Result<(BTreeSet<(Rat, Rat)>, bool)> {
    let mut found = BTreeSet::new();
    if f.is_constant() {
        return Ok((found, false));
    }
    let fx = f.derivative(0);
    let fy = f.derivative(1);
    let mut leftovers = vec![];
    let mut genuine = false;
    for elim in [1, 0] {
        if f.degree_in(elim).unwrap_or(0) == 0 {
            continue;
        }
        let (pts, partner, leftover) = singular_by_elimination(f, &fx, &fy, elim)?;
        found.extend(pts);
        genuine |= partner;
        leftovers.push(leftover);
    }
    // A singular point with both coordinates irrational leaves irrational
    // roots in both eliminants; one clean eliminant rules it out.
    let unresolved = genuine || (!leftovers.is_empty() && leftovers.iter().all(|&l| l));
    Ok((found, unresolved))
}

/// Locates the rational singular points of the projective curve `F = 0` in
/// variables `(x, y, z)` and its rational points on the line `z = 0`.
pub fn find_special_points(big_f: &Poly) -> Result<SpecialPoints> {
    assert_eq!(big_f.nvars(), 3);
    if big_f.is_zero() || !big_f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let d = big_f.total_degree().unwrap_or(0);
    let mut out = SpecialPoints::default();
    let one = Rat::one();
    let zero = Rat::zero();

    let f_aff = big_f.specialize(2, &one).drop_var(2);
    let (affine, unresolved) = affine_singular(&f_aff)?;
    out.unresolved_singular |= unresolved;
    for (x, y) in affine {
        out.singular
            .push(ProjPoint::new([x, y, one.clone()]).expect("affine"));
    }

    // the line z = 0, chart y = 1 plus the point [1:0:0]
    let grads: Vec<Poly> = (0..3).map(|i| big_f.derivative(i)).collect();
    let on_line = |p: &Poly| univariate(&p.specialize(1, &one).specialize(2, &zero), 0);
    let b = on_line(big_f);
    let gs: Vec<UniPoly> = grads.iter().map(on_line).collect();
    if b.is_zero() && gs.iter().all(|g| g.is_zero()) {
        return Err(Error::NotSquareFree);
    }
    let gsing = gcd_all(std::iter::once(&b).chain(&gs)).expect("not all zero");
    let sr = gsing.rational_roots();
    if !sr.complete() {
        out.unresolved_singular = true;
    }
    for (x, _) in sr.roots {
        out.singular
            .push(ProjPoint::new([x, one.clone(), zero.clone()]).expect("nonzero"));
    }
    let e100 = [one.clone(), zero.clone(), zero.clone()];
    let f_at_100 = big_f.eval(&e100);
    if f_at_100.is_zero() && grads.iter().all(|g| g.eval(&e100).is_zero()) {
        out.singular
            .push(ProjPoint::new(e100.clone()).expect("nonzero"));
    }

    if b.is_zero() {
        out.component_at_infinity = true;
    } else {
        let br = b.rational_roots();
        if !br.complete() {
            out.unresolved_infinity = true;
        }
        for (x, _) in br.roots {
            out.infinity
                .push(ProjPoint::new([x, one.clone(), zero.clone()]).expect("nonzero"));
        }
        // b(x) = F(x, 1, 0) has degree d exactly when [1:0:0] is off the curve
        if b.degree().unwrap_or(0) < d as usize {
            out.infinity.push(ProjPoint::new(e100).expect("nonzero"));
        }
    }
    out.singular.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out.singular.dedup();
    out.infinity.sort();
    Ok(out)
}
