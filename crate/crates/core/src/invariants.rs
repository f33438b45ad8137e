//! Intersection multiplicities, multiplicities, delta invariants, value
//! semigroups and the genus of the normalization.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Zero};

use crate::algebra::{compose_unchecked, EchelonBasis, Poly, Rat, TruncSeries};
use crate::error::{Error, Result};
use crate::puiseux::{ProjPoint, PuiseuxBranch};

/// Largest jet order used by the delta and semigroup computations.
pub const MAX_JET_ORDER: u32 = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPointRecord {
    pub id: String,
    pub coords: Option<ProjPoint>,
    pub at_infinity: bool,
    pub branches: Vec<PuiseuxBranch>,
    pub m: u32,
    pub r: u32,
    pub delta: u32,
    /// `(X_i . H)_p` per branch, for points on the line at infinity.
    pub inf_mults: Option<Vec<u32>>,
}

impl SingularPointRecord {
    pub fn new(
        id: &str,
        coords: Option<ProjPoint>,
        at_infinity: bool,
        branches: Vec<PuiseuxBranch>,
        delta: u32,
    ) -> Result<Self> {
        let m = branches.iter().map(|b| b.mult).sum();
        let r = branches.len() as u32;
        let inf_mults = if at_infinity {
            let orders: Option<Vec<u32>> = branches.iter().map(|b| b.infinity_order).collect();
            Some(orders.ok_or_else(|| {
                Error::InconsistentInput(format!(
                    "point {id} lies at infinity but a branch lacks its intersection with the line at infinity"
                ))
            })?)
        } else {
            None
        };
        if (delta == 0) != (m == 1 && r == 1) {
            return Err(Error::InconsistentInput(format!(
                "point {id}: delta {delta} with m = {m}, r = {r}"
            )));
        }
        Ok(SingularPointRecord {
            id: id.to_string(),
            coords,
            at_infinity,
            branches,
            m,
            r,
            delta,
            inf_mults,
        })
    }

    pub fn is_singular(&self) -> bool {
        !(self.m == 1 && self.r == 1)
    }

    /// `(X . H)_p`, the sum of the branch-wise intersection numbers.
    pub fn infinity_intersection(&self) -> Option<u32> {
        self.inf_mults.as_ref().map(|v| v.iter().sum())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupData {
    pub generators: Vec<u32>,
    pub gaps: Vec<u32>,
    pub conductor: u32,
}

/// Order of `g(components)` along the branch; `None` when `g` vanishes
/// identically on it. `g` is written in the centered local coordinates.
pub fn intersection_multiplicity(b: &PuiseuxBranch, g: &Poly) -> Result<Option<u32>> {
    if b.symbolic {
        return Err(Error::InconsistentInput(format!(
            "branch {} has symbolic coefficients",
            b.branch_id
        )));
    }
    if !g.constant_term().is_zero() {
        return Ok(Some(0));
    }
    let s = compose_unchecked(g, &b.components)?;
    if s.is_exact_zero() {
        return Ok(None);
    }
    match s.valuation() {
        Some(v) => Ok(Some(v)),
        None => Err(Error::TruncationInsufficient { order: s.order }),
    }
}

/// Sparse jet tuples keyed by `(branch index, exponent)`.
pub type JetVector = BTreeMap<(usize, u32), Rat>;

fn check_precision(branches: &[&PuiseuxBranch], nc: u32) -> Result<()> {
    for b in branches {
        if let Some(p) = b.precision() {
            if p < nc {
                return Err(Error::TruncationInsufficient { order: p });
            }
        }
    }
    Ok(())
}

fn truncated_components(branches: &[&PuiseuxBranch], nc: u32) -> Vec<Vec<TruncSeries>> {
    branches
        .iter()
        .map(|b| b.components.iter().map(|c| c.truncate(nc)).collect())
        .collect()
}

fn mul_jets(a: &JetVector, comp: &[Vec<TruncSeries>], var: usize, nc: u32) -> JetVector {
    let mut out = JetVector::new();
    for (&(bi, e), c) in a {
        for (k, v) in &comp[bi][var].coeffs {
            let d = e + k;
            if d >= nc {
                break;
            }
            let slot = out.entry((bi, d)).or_insert_with(Rat::zero);
            *slot += c * v;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Echelon basis of the jets modulo `t^nc` of all pulled-back polynomials
/// in the local coordinates, generated as an algebra from the components.
pub fn jet_span(branches: &[&PuiseuxBranch], nc: u32) -> Result<EchelonBasis<(usize, u32)>> {
    check_precision(branches, nc)?;
    let comps = truncated_components(branches, nc);
    let nvars = branches.first().map_or(0, |b| b.components.len());
    if branches.iter().any(|b| b.components.len() != nvars) {
        return Err(Error::InconsistentInput(
            "branches at one point have different numbers of components".into(),
        ));
    }
    let mut basis = EchelonBasis::new();
    let one: JetVector = (0..branches.len()).map(|b| ((b, 0), Rat::one())).collect();
    let mut queue = VecDeque::new();
    if nc > 0 && basis.insert(one.clone()) {
        queue.push_back(one);
    }
    while let Some(v) = queue.pop_front() {
        for var in 0..nvars {
            let w = mul_jets(&v, &comps, var, nc);
            if !w.is_empty() && basis.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    Ok(basis)
}

/// Per-branch conductor exponents certified by the span, if every unit jet
/// from the exponent up to `nc` lies in it.
fn certified_conductor(basis: &EchelonBasis<(usize, u32)>, r: usize, nc: u32) -> Option<Vec<u32>> {
    let mut out = vec![];
    for b in 0..r {
        let mut c = nc;
        while c > 0 && basis.contains(BTreeMap::from([((b, c - 1), Rat::one())])) {
            c -= 1;
        }
        if c >= nc {
            return None;
        }
        out.push(c);
    }
    Some(out)
}

fn substitute_symbolic(branches: &[&PuiseuxBranch]) -> Option<Vec<PuiseuxBranch>> {
    // symbolic coefficients are harmless only for a single monomial branch
    if branches.len() != 1 || branches[0].components.iter().any(|c| c.coeffs.len() > 1) {
        return None;
    }
    let mut b = branches[0].clone();
    for c in b.components.iter_mut() {
        for v in c.coeffs.values_mut() {
            *v = Rat::one();
        }
    }
    Some(vec![b])
}

/// Delta invariant and per-branch conductor exponents of the germ formed by
/// `branches`, from the corank of pulled-back polynomial jets.
pub fn delta_and_conductor(branches: &[&PuiseuxBranch]) -> Result<(u32, Vec<u32>)> {
    if branches.is_empty() {
        return Ok((0, vec![]));
    }
    let owned;
    let branches: Vec<&PuiseuxBranch> = if branches.iter().any(|b| b.symbolic) {
        owned = substitute_symbolic(branches).ok_or_else(|| {
            Error::InconsistentInput(format!(
                "delta at {} needs numeric coefficients; declare it",
                branches[0].point_id
            ))
        })?;
        owned.iter().collect()
    } else {
        branches.to_vec()
    };
    let r = branches.len();
    if r == 1 && branches[0].mult == 1 {
        return Ok((0, vec![0]));
    }
    let s: u32 = branches.iter().map(|b| b.mult * (b.mult + 1)).sum();
    let mut nc = (2 * s).max(2);
    loop {
        let basis = jet_span(&branches, nc)?;
        if let Some(cond) = certified_conductor(&basis, r, nc) {
            let delta = r as u32 * nc - basis.rank() as u32;
            return Ok((delta, cond));
        }
        if nc >= MAX_JET_ORDER {
            return Err(Error::TruncationInsufficient { order: nc });
        }
        nc = (2 * nc).min(MAX_JET_ORDER);
    }
}

pub fn delta_point(branches: &[&PuiseuxBranch]) -> Result<u32> {
    delta_and_conductor(branches).map(|(d, _)| d)
}

/// Values `ord(h o pi)` of local polynomials `h` up to `bound`.
pub fn value_semigroup(b: &PuiseuxBranch, bound: u32) -> Result<SemigroupData> {
    let owned;
    let b = if b.symbolic {
        owned = substitute_symbolic(&[b]).ok_or_else(|| {
            Error::InconsistentInput(format!("branch {} has symbolic coefficients", b.branch_id))
        })?;
        &owned[0]
    } else {
        b
    };
    let basis = jet_span(&[b], bound + 1)?;
    let values: BTreeSet<u32> = basis.pivots().map(|&(_, e)| e).collect();
    let gaps: Vec<u32> = (0..=bound).filter(|v| !values.contains(v)).collect();
    let conductor = gaps.last().map_or(0, |g| g + 1);
    let m1 = values.iter().copied().find(|&v| v > 0);
    match m1 {
        Some(m1) if bound + 1 >= conductor + m1 => {}
        _ => return Err(Error::BoundTooSmall { bound }),
    }
    let positive: Vec<u32> = values.iter().copied().filter(|&v| v > 0).collect();
    let generators = positive
        .iter()
        .copied()
        .filter(|&v| {
            !positive
                .iter()
                .take_while(|&&a| a <= v / 2)
                .any(|&a| values.contains(&(v - a)))
        })
        .collect();
    Ok(SemigroupData {
        generators,
        gaps,
        conductor,
    })
}

/// Arithmetic genus minus the delta invariants, plus `components - 1`
/// (the sum of the genera of the normalization's components).
pub fn genus_of_normalization(
    d: u32,
    records: &[SingularPointRecord],
    components: u32,
) -> Result<i64> {
    let d = d as i64;
    let sum: i64 = records.iter().map(|r| r.delta as i64).sum();
    let g = (d - 1) * (d - 2) / 2 - sum + components.max(1) as i64 - 1;
    if g < 0 {
        return Err(Error::NegativeGenus { value: g });
    }
    Ok(g)
}
