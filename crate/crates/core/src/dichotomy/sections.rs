use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::algebra::{EchelonBasis, Rat, TruncSeries, UniPoly};
use crate::divisors::Divisor;
use crate::error::{Error, Result};
use crate::invariants::{delta_and_conductor, jet_span, SingularPointRecord};
use crate::puiseux::{CurveModel, Place, PuiseuxBranch};

/// `num / den` on one component of the normalization, in its affine
/// coordinate `s`.
#[derive(Clone, Debug)]
struct RationalFunction {
    component: usize,
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    /// Expansion in the local parameter at `place`, modulo `t^n`.
    fn expand(&self, place: &Place, n: u32) -> Result<TruncSeries> {
        let (num, den, shift) = match place {
            Place::Finite(a) => (self.num.translate(a), self.den.translate(a), 0),
            Place::Infinity => {
                let dn = self.num.degree().unwrap_or(0);
                let dd = self.den.degree().unwrap_or(0);
                if dn > dd {
                    return Err(Error::InconsistentInput(
                        "section has a pole at an interior point".into(),
                    ));
                }
                (self.num.reversed(), self.den.reversed(), (dd - dn) as u32)
            }
        };
        let den = TruncSeries::from_unipoly("t", &den);
        let inv = den.inverse(n).ok_or_else(|| {
            Error::InconsistentInput("section has a pole at an interior point".into())
        })?;
        Ok(TruncSeries::from_unipoly("t", &num)
            .mul(&inv)
            .shift_up(shift)
            .truncate(n))
    }
}

fn linear_power(a: &Rat, e: i64) -> UniPoly {
    UniPoly::linear_root(a).pow(e as u32)
}

/// Riemann–Roch basis of `H^0(P^1, O(D_j))` on every component, as
/// `s^i * prod (s - a)^(-c_a)`.
fn rational_basis(
    parts: &BTreeMap<usize, Vec<(Place, i64)>>,
    components: usize,
) -> Vec<RationalFunction> {
    let mut out = vec![];
    for j in 0..components {
        let entries = parts.get(&j).map(Vec::as_slice).unwrap_or(&[]);
        let deg: i64 = entries.iter().map(|(_, c)| c).sum();
        if deg < 0 {
            continue;
        }
        let mut num = UniPoly::one();
        let mut den = UniPoly::one();
        for (place, c) in entries {
            if let Place::Finite(a) = place {
                if *c > 0 {
                    den = &den * &linear_power(a, *c);
                } else {
                    num = &num * &linear_power(a, -c);
                }
            }
        }
        for i in 0..=deg as usize {
            out.push(RationalFunction {
                component: j,
                num: &num * &UniPoly::monomial(Rat::one(), i),
                den: den.clone(),
            });
        }
    }
    out
}

fn branch_index(curve: &CurveModel) -> BTreeMap<&str, &PuiseuxBranch> {
    curve
        .branches()
        .map(|b| (b.branch_id.as_str(), b))
        .collect()
}

fn position_of(b: &PuiseuxBranch, components: u32) -> Result<(usize, Place)> {
    let p = b
        .position
        .as_ref()
        .ok_or_else(|| Error::MissingNormalization {
            branch: b.branch_id.clone(),
        })?;
    if p.component >= components as usize {
        return Err(Error::InconsistentInput(format!(
            "branch {} lies on component {} but the curve has {components}",
            b.branch_id, p.component
        )));
    }
    Ok((p.component, p.place.clone()))
}

/// Dimension of `{ f : div f + D >= 0 }` on a normalization made of
/// projective lines, cut down by the requirement that `f` descends to the
/// local ring at each interior point.
pub fn h0_rational(
    curve: &CurveModel,
    d: &Divisor,
    interior: &[&SingularPointRecord],
) -> Result<u64> {
    if curve.genus != 0 {
        return Err(Error::UnsupportedGenus(format!(
            "the normalization has genus {}",
            curve.genus
        )));
    }
    let c = curve.components.max(1);
    if c == 1 && interior.is_empty() {
        return Ok((d.degree() + 1).max(0) as u64);
    }
    if !curve.rational_normalization {
        return Err(Error::UnsupportedGenus(
            "normalization components are not given as parametrized lines".into(),
        ));
    }
    let index = branch_index(curve);
    let mut parts: BTreeMap<usize, Vec<(Place, i64)>> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for (id, coef) in d.entries() {
        let b = index
            .get(id)
            .ok_or_else(|| Error::InconsistentInput(format!("unknown branch {id}")))?;
        let (j, place) = position_of(b, c)?;
        if !seen.insert((j, place.clone())) {
            return Err(Error::InconsistentInput(format!(
                "two branches share the normalization point of {id}"
            )));
        }
        parts.entry(j).or_default().push((place, coef));
    }
    let basis = rational_basis(&parts, c as usize);
    if interior.is_empty() || basis.is_empty() {
        return Ok(basis.len() as u64);
    }

    let mut residuals: Vec<BTreeMap<(usize, usize, u32), Rat>> = vec![BTreeMap::new(); basis.len()];
    for (pi, rec) in interior.iter().enumerate() {
        if rec.branches.iter().any(|b| b.symbolic) {
            return Err(Error::UnsupportedGenus(format!(
                "branches at {} have symbolic coefficients",
                rec.id
            )));
        }
        let refs: Vec<&PuiseuxBranch> = rec.branches.iter().collect();
        let (_, conductor) = delta_and_conductor(&refs)?;
        let nc = conductor.iter().copied().max().unwrap_or(0);
        if nc == 0 {
            continue;
        }
        let span = jet_span(&refs, nc)?;
        let places: Vec<(usize, Place)> = refs
            .iter()
            .map(|b| position_of(b, c))
            .collect::<Result<_>>()?;
        for (f, res) in basis.iter().zip(residuals.iter_mut()) {
            let mut jet = BTreeMap::new();
            for (bi, (j, place)) in places.iter().enumerate() {
                if *j != f.component {
                    continue;
                }
                for (e, v) in f.expand(place, nc)?.coeffs {
                    jet.insert((bi, e), v);
                }
            }
            for ((bi, e), v) in span.reduce(jet) {
                res.insert((pi, bi, e), v);
            }
        }
    }
    let mut rows = EchelonBasis::new();
    for r in residuals {
        if !r.values().all(Zero::is_zero) {
            rows.insert(r);
        }
    }
    Ok((basis.len() - rows.rank()) as u64)
}

/// Riemann–Roch bounds for `h^0` of a divisor of degree `deg` on a connected
/// curve of genus `g`.
pub fn h0_bounds(deg: i64, g: i64) -> (u64, u64) {
    if deg < 0 {
        return (0, 0);
    }
    let lower = (1 - g + deg).max(0) as u64;
    let upper = (deg + 1) as u64;
    if deg > 2 * g - 2 {
        return (lower, lower);
    }
    (lower, upper)
}

/// Number of `0 <= l <= lmax` that are not non-negative combinations of
/// `gens`.
pub fn semigroup_gap_count(lmax: i64, gens: &[u32]) -> u64 {
    if lmax < 0 {
        return 0;
    }
    let n = lmax as usize;
    let mut member = vec![false; n + 1];
    member[0] = true;
    for l in 1..=n {
        member[l] = gens
            .iter()
            .any(|&g| g as usize <= l && g > 0 && member[l - g as usize]);
    }
    member.iter().filter(|m| !**m).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn gap_counts() {
        assert_eq!(semigroup_gap_count(5, &[2, 7]), 3);
        assert_eq!(semigroup_gap_count(100, &[1]), 0);
        for n in 0..7 {
            for k in 0..7 {
                assert_eq!(
                    semigroup_gap_count(2 * k - 1, &[2, 2 * n as u32 + 1]),
                    k.min(n) as u64
                );
            }
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(h0_bounds(303, 220).0, 84);
        assert_eq!(h0_bounds(-2, 5), (0, 0));
        assert_eq!(h0_bounds(5, 0), (6, 6));
        assert_eq!(h0_bounds(3, 3), (1, 4));
    }

    #[test]
    fn expansion_at_infinity() {
        // f = 1 / (s (s - 1)) at s = inf is t^2 / (1 - t)
        let f = RationalFunction {
            component: 0,
            num: UniPoly::one(),
            den: &UniPoly::linear_root(&rat(0, 1)) * &UniPoly::linear_root(&rat(1, 1)),
        };
        let e = f.expand(&Place::Infinity, 5).unwrap();
        assert_eq!(e.coeffs.keys().copied().collect::<Vec<_>>(), vec![2, 3, 4]);
        let g = f.expand(&Place::Finite(rat(2, 1)), 2).unwrap();
        assert_eq!(g.coeff(0), rat(1, 2));
        assert_eq!(g.coeff(1), rat(-3, 4));
    }
}
