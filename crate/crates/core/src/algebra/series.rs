use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rat::{rat_to_string, Rat};
use super::univariate::UniPoly;
use super::AlgebraError;

/// Power series in one parameter, known modulo `param^order`.
///
/// An exact series is a polynomial known completely; its `order` is
/// meaningless and arithmetic with it never loses precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    pub param: String,
    pub coeffs: BTreeMap<u32, Rat>,
    pub order: u32,
    pub exact: bool,
}

impl TruncSeries {
    /// Series known modulo `param^order`; coefficients at or beyond `order`
    /// are dropped.
    pub fn new(param: &str, coeffs: BTreeMap<u32, Rat>, order: u32) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(k, c)| *k < order && !c.is_zero())
            .collect();
        TruncSeries {
            param: param.to_string(),
            coeffs,
            order,
            exact: false,
        }
    }

    pub fn exact(param: &str, coeffs: BTreeMap<u32, Rat>) -> Self {
        let coeffs: BTreeMap<u32, Rat> = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = coeffs.keys().next_back().map_or(0, |k| k + 1);
        TruncSeries {
            param: param.to_string(),
            coeffs,
            order,
            exact: true,
        }
    }

    pub fn from_unipoly(param: &str, u: &UniPoly) -> Self {
        Self::exact(
            param,
            u.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (k as u32, c.clone()))
                .collect(),
        )
    }

    pub fn zero(param: &str) -> Self {
        Self::exact(param, BTreeMap::new())
    }

    pub fn constant(param: &str, c: Rat) -> Self {
        Self::exact(param, BTreeMap::from([(0, c)]))
    }

    pub fn monomial(param: &str, c: Rat, k: u32) -> Self {
        Self::exact(param, BTreeMap::from([(k, c)]))
    }

    pub fn with_param(&self, param: &str) -> TruncSeries {
        TruncSeries {
            param: param.to_string(),
            ..self.clone()
        }
    }

    pub fn coeff(&self, k: u32) -> Rat {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` for an exact series (infinite precision).
    pub fn precision(&self) -> Option<u32> {
        if self.exact {
            None
        } else {
            Some(self.order)
        }
    }

    /// Known to be identically zero.
    pub fn is_exact_zero(&self) -> bool {
        self.exact && self.coeffs.is_empty()
    }

    /// Index of the first nonzero coefficient, if one is known.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// A certified lower bound for the valuation (`u32::MAX` for exact zero).
    fn valuation_bound(&self) -> u32 {
        match self.valuation() {
            Some(v) => v,
            None if self.exact => u32::MAX,
            None => self.order,
        }
    }

    pub fn leading(&self) -> Option<(u32, &Rat)> {
        self.coeffs.iter().next().map(|(k, c)| (*k, c))
    }

    pub fn truncate(&self, order: u32) -> TruncSeries {
        if !self.exact && order >= self.order {
            return self.clone();
        }
        TruncSeries::new(&self.param, self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &Rat) -> TruncSeries {
        let mut out = self.clone();
        if c.is_zero() {
            out.coeffs.clear();
            return out;
        }
        for v in out.coeffs.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn add(&self, rhs: &TruncSeries) -> TruncSeries {
        self.combine(rhs, &Rat::one())
    }

    pub fn sub(&self, rhs: &TruncSeries) -> TruncSeries {
        self.combine(rhs, &-Rat::one())
    }

    fn combine(&self, rhs: &TruncSeries, sign: &Rat) -> TruncSeries {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &rhs.coeffs {
            *coeffs.entry(*k).or_insert_with(Rat::zero) += c * sign;
        }
        self.with_precision(coeffs, min_prec(self.precision(), rhs.precision()))
    }

    fn with_precision(&self, coeffs: BTreeMap<u32, Rat>, prec: Option<u32>) -> TruncSeries {
        match prec {
            Some(n) => TruncSeries::new(&self.param, coeffs, n),
            None => TruncSeries::exact(&self.param, coeffs),
        }
    }

    pub fn mul(&self, rhs: &TruncSeries) -> TruncSeries {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return TruncSeries::zero(&self.param);
        }
        let va = self.valuation_bound();
        let vb = rhs.valuation_bound();
        let prec = min_prec(
            self.precision().map(|n| n.saturating_add(vb)),
            rhs.precision().map(|n| n.saturating_add(va)),
        );
        let limit = prec.unwrap_or(u32::MAX);
        let mut coeffs: BTreeMap<u32, Rat> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            if *i >= limit {
                break;
            }
            for (j, b) in &rhs.coeffs {
                let k = i + j;
                if k >= limit {
                    break;
                }
                *coeffs.entry(k).or_insert_with(Rat::zero) += a * b;
            }
        }
        self.with_precision(coeffs, prec)
    }

    pub fn pow(&self, n: u32) -> TruncSeries {
        let mut acc = TruncSeries::constant(&self.param, Rat::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> TruncSeries {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(k, _)| **k > 0)
            .map(|(k, c)| (k - 1, c * Rat::from_integer((*k).into())))
            .collect();
        self.with_precision(coeffs, self.precision().map(|n| n.saturating_sub(1)))
    }

    /// Divides by `param^k`; the first `k` coefficients must vanish.
    pub fn shift_down(&self, k: u32) -> TruncSeries {
        assert!(
            self.valuation_bound() >= k,
            "series not divisible by param^{k}"
        );
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| (e - k, c.clone()))
            .collect();
        self.with_precision(coeffs, self.precision().map(|n| n - k))
    }

    pub fn shift_up(&self, k: u32) -> TruncSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| (e + k, c.clone()))
            .collect();
        self.with_precision(coeffs, self.precision().map(|n| n + k))
    }

    /// Multiplicative inverse modulo `param^order` of a series with nonzero
    /// constant term.
    pub fn inverse(&self, order: u32) -> Option<TruncSeries> {
        let a0 = self.coeff(0);
        if a0.is_zero() {
            return None;
        }
        let order = match self.precision() {
            Some(n) => n.min(order),
            None => order,
        };
        let inv0 = a0.recip();
        let mut out: Vec<Rat> = Vec::with_capacity(order as usize);
        for k in 0..order {
            if k == 0 {
                out.push(inv0.clone());
                continue;
            }
            let mut s = Rat::zero();
            for (i, a) in self.coeffs.range(1..=k) {
                let b = &out[(k - i) as usize];
                if !b.is_zero() {
                    s += a * b;
                }
            }
            out.push(-s * &inv0);
        }
        Some(TruncSeries::new(
            &self.param,
            out.into_iter()
                .enumerate()
                .map(|(k, c)| (k as u32, c))
                .collect(),
            order,
        ))
    }

    /// Substitutes `param -> c * param^k`.
    pub fn substitute_monomial(&self, c: &Rat, k: u32) -> TruncSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, v)| (e * k, v * num_traits::pow(c.clone(), *e as usize)))
            .collect();
        self.with_precision(coeffs, self.precision().map(|n| n.saturating_mul(k)))
    }

    pub fn to_f64_coeffs(&self) -> Vec<(u32, f64)> {
        self.coeffs
            .iter()
            .map(|(k, c)| (*k, super::rat_to_f64(c)))
            .collect()
    }
}

fn min_prec(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

/// Evaluates `f(args)`. Fails with `TruncationInsufficient` when the result
/// is zero through its precision but vanishing cannot be certified.
pub fn series_compose(f: &Poly, args: &[TruncSeries]) -> Result<TruncSeries, AlgebraError> {
    let out = compose_unchecked(f, args)?;
    if !out.exact && out.coeffs.is_empty() {
        return Err(AlgebraError::TruncationInsufficient { order: out.order });
    }
    Ok(out)
}

/// Evaluates `f(args)` without the vanishing check.
pub fn compose_unchecked(f: &Poly, args: &[TruncSeries]) -> Result<TruncSeries, AlgebraError> {
    if f.nvars() != args.len() {
        return Err(AlgebraError::ArityMismatch {
            expected: f.nvars(),
            found: args.len(),
        });
    }
    let param = args.first().map(|a| a.param.clone()).unwrap_or_default();
    if args.iter().any(|a| a.param != param) {
        return Err(AlgebraError::ParameterMismatch);
    }
    let mut powers: Vec<Vec<TruncSeries>> = args
        .iter()
        .map(|a| vec![TruncSeries::constant(&param, Rat::one()), a.clone()])
        .collect();
    let mut out = TruncSeries::zero(&param);
    for (e, c) in f.terms() {
        let mut t = TruncSeries::constant(&param, c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            while powers[i].len() <= k as usize {
                let next = powers[i].last().expect("nonempty").mul(&args[i]);
                powers[i].push(next);
            }
            t = t.mul(&powers[i][k as usize]);
        }
        out = out.add(&t);
    }
    Ok(out)
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| match k {
                0 => rat_to_string(c),
                1 => format!("{}*{}", rat_to_string(c), self.param),
                _ => format!("{}*{}^{}", rat_to_string(c), self.param, k),
            })
            .collect();
        if parts.is_empty() {
            parts.push("0".into());
        }
        if !self.exact {
            parts.push(format!("O({}^{})", self.param, self.order));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat};

    fn s(terms: &[(u32, i64)], order: Option<u32>) -> TruncSeries {
        let m = terms.iter().map(|&(k, c)| (k, rat(c, 1))).collect();
        match order {
            Some(n) => TruncSeries::new("t", m, n),
            None => TruncSeries::exact("t", m),
        }
    }

    #[test]
    fn precision_tracks_valuation() {
        // (t^2 + O(t^5)) * t^3 exactly is known to O(t^8)
        let a = s(&[(2, 1)], Some(5));
        let b = s(&[(3, 1)], None);
        let c = a.mul(&b);
        assert_eq!(c.precision(), Some(8));
        let d = a.mul(&a);
        assert_eq!(d.precision(), Some(7));
        assert_eq!(d.coeff(4), rat(1, 1));
    }

    #[test]
    fn compose_cusp_vanishes_exactly() {
        let f = parse_poly("y^2 - x^3", Some(&["x", "y"])).unwrap();
        let r = series_compose(&f, &[s(&[(2, 1)], None), s(&[(3, 1)], None)]).unwrap();
        assert!(r.is_exact_zero());
        let err = series_compose(&f, &[s(&[(2, 1)], Some(10)), s(&[(3, 1)], Some(10))]);
        assert!(matches!(
            err,
            Err(AlgebraError::TruncationInsufficient { .. })
        ));
    }

    #[test]
    fn inverse_of_geometric() {
        let one_minus_t = s(&[(0, 1), (1, -1)], None);
        let inv = one_minus_t.inverse(6).unwrap();
        for k in 0..6 {
            assert_eq!(inv.coeff(k), rat(1, 1));
        }
        assert_eq!(inv.precision(), Some(6));
        assert!(s(&[(1, 1)], None).inverse(4).is_none());
    }

    #[test]
    fn shifts_and_derivative() {
        let a = s(&[(2, 3), (4, 1)], Some(9));
        assert_eq!(a.shift_down(2).coeff(0), rat(3, 1));
        assert_eq!(a.shift_down(2).precision(), Some(7));
        assert_eq!(a.derivative().coeff(1), rat(6, 1));
        assert_eq!(a.substitute_monomial(&rat(2, 1), 2).coeff(4), rat(12, 1));
    }
}
