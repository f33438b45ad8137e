use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dichotomy::{Ambient, OpenSetSpec, PointClass};
use crate::error::{Error, Result};
use crate::puiseux::CurveModel;

/// Integer combination of points of the normalization, keyed by branch id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Divisor {
    entries: BTreeMap<String, i64>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries<I, S>(it: I) -> Self
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        let mut d = Divisor::new();
        for (k, v) in it {
            d.add_at(k, v);
        }
        d
    }

    pub fn add_at(&mut self, key: impl Into<String>, c: i64) {
        let key = key.into();
        let v = self.entries.get(&key).copied().unwrap_or(0) + c;
        if v == 0 {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
    }

    pub fn get(&self, key: &str) -> i64 {
        self.entries.get(key).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, i64)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.entries.values().all(|&v| v > 0)
    }

    pub fn positive_part(&self) -> Divisor {
        self.filter(|_, v| v > 0)
    }

    pub fn filter(&self, mut keep: impl FnMut(&str, i64) -> bool) -> Divisor {
        Divisor {
            entries: self
                .entries
                .iter()
                .filter(|(k, v)| keep(k, **v))
                .map(|(k, v)| (k.clone(), *v))
                .collect(),
        }
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (k, v) in other.entries() {
            d.add_at(k, v);
        }
        d
    }
}

/// `D_m`: coefficient `m(X_i, p) - 1` at every branch through a singular point.
pub fn multiplicity_divisor(curve: &CurveModel) -> Divisor {
    let mut d = Divisor::new();
    for rec in curve.singular_points() {
        for b in &rec.branches {
            d.add_at(b.branch_id.clone(), b.mult as i64 - 1);
        }
    }
    d
}

/// `D_m^A`: `m(X_i, p) - 1` over affine singular points and
/// `-((X_i . H) + 1)` over every branch at infinity.
pub fn affine_multiplicity_divisor(curve: &CurveModel) -> Result<Divisor> {
    if !curve.infinity_known {
        return Err(Error::UnresolvedLocus(
            "points at infinity are not all known; list them with at_infinity set".into(),
        ));
    }
    let mut d = Divisor::new();
    for rec in &curve.points {
        if rec.at_infinity {
            for b in &rec.branches {
                let h = b.infinity_order.ok_or_else(|| {
                    Error::InconsistentInput(format!(
                        "branch {} at infinity has no intersection number",
                        b.branch_id
                    ))
                })?;
                d.add_at(b.branch_id.clone(), -(h as i64 + 1));
            }
        } else if rec.is_singular() {
            for b in &rec.branches {
                d.add_at(b.branch_id.clone(), b.mult as i64 - 1);
            }
        }
    }
    Ok(d)
}

/// Degree of `D_m^A` summed branch by branch and point by point.
pub fn degree_consistency(curve: &CurveModel) -> Result<(i64, i64)> {
    let branchwise = affine_multiplicity_divisor(curve)?.degree();
    let mut pointwise = 0i64;
    for rec in &curve.points {
        if rec.at_infinity {
            let h = rec.infinity_intersection().ok_or_else(|| {
                Error::InconsistentInput(format!("point {} lacks intersection numbers", rec.id))
            })?;
            pointwise -= h as i64 + rec.r as i64;
        } else {
            pointwise += rec.m as i64 - rec.r as i64;
        }
    }
    Ok((branchwise, pointwise))
}

/// Class of the point carrying `branch_id`. Points at infinity are boundary
/// points of every open subset of an affine curve.
pub fn branch_class(curve: &CurveModel, spec: &OpenSetSpec, branch_id: &str) -> Result<PointClass> {
    let rec = curve
        .points
        .iter()
        .find(|r| r.branches.iter().any(|b| b.branch_id == branch_id))
        .ok_or_else(|| Error::InconsistentInput(format!("unknown branch {branch_id}")))?;
    if spec.ambient == Ambient::Affine && rec.at_infinity {
        return Ok(PointClass::Boundary);
    }
    spec.class_of(rec).ok_or_else(|| Error::UnclassifiedPoint {
        point: rec.id.clone(),
    })
}

/// Keeps positive coefficients at boundary points and negative
/// coefficients at interior or boundary points.
pub fn open_set_restriction(
    d: &Divisor,
    curve: &CurveModel,
    spec: &OpenSetSpec,
) -> Result<Divisor> {
    let mut out = Divisor::new();
    for (k, v) in d.entries() {
        let keep = match branch_class(curve, spec, k)? {
            PointClass::Boundary => true,
            PointClass::Interior => v < 0,
            PointClass::Exterior => false,
        };
        if keep {
            out.add_at(k, v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Divisor::from_entries([("p.0", 2), ("q.0", -3)]);
        let b = Divisor::from_entries([("p.0", -2), ("r.0", 1)]);
        let s = a.add(&b);
        assert_eq!(s, Divisor::from_entries([("q.0", -3), ("r.0", 1)]));
        assert_eq!(s.degree(), -2);
        assert_eq!(s.positive_part().degree(), 1);
        assert!(!s.is_effective());
        assert!(Divisor::from_entries([("x", 0)]).is_zero());
    }
}
