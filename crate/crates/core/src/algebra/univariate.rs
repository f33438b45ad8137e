use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rat::Rat;

/// Dense univariate polynomial over the rationals, lowest degree first,
/// without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

/// Rational roots with multiplicities plus the cofactor that carries every
/// remaining (irrational or complex) root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoots {
    pub roots: Vec<(Rat, u32)>,
    pub leftover: UniPoly,
}

impl RationalRoots {
    /// True when every root of the input was rational.
    pub fn complete(&self) -> bool {
        self.leftover.degree().unwrap_or(0) == 0
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &Rat) -> Self {
        Self::new(vec![-r.clone(), Rat::one()])
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `u(a + t)` as a polynomial in `t`.
    pub fn translate(&self, a: &Rat) -> UniPoly {
        let lin = UniPoly::new(vec![a.clone(), Rat::one()]);
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// `t^e u(1/t)` with `e` the degree.
    pub fn reversed(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc();
        self.scale(&lc.recip())
    }

    pub fn pow(&self, n: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc = d.lc();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Primitive integer polynomial with the same roots.
    pub fn to_primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Finds all rational roots exactly. Candidates come from divisor
    /// enumeration when the extreme coefficients are small, otherwise from
    /// complex root approximations refined into continued-fraction
    /// convergents; every candidate is verified exactly, so the only failure
    /// mode of the fallback is an undetected root, which surfaces as a
    /// non-constant leftover.
    pub fn rational_roots(&self) -> RationalRoots {
        let mut roots: Vec<(Rat, u32)> = vec![];
        if self.is_zero() {
            return RationalRoots {
                roots,
                leftover: UniPoly::zero(),
            };
        }
        let mut rest = self.clone();
        // root at zero
        let zero_mult = rest.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zero_mult > 0 {
            rest = UniPoly::new(rest.coeffs[zero_mult..].to_vec());
            roots.push((Rat::zero(), zero_mult as u32));
        }
        let sqf = rest.squarefree_part();
        let mut candidates = candidate_roots(&sqf);
        candidates.sort();
        candidates.dedup();
        for c in candidates {
            if c.is_zero() || !sqf.eval(&c).is_zero() {
                continue;
            }
            let lin = UniPoly::linear_root(&c);
            let mut mult = 0;
            loop {
                let (q, r) = rest.div_rem(&lin);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            roots.push((c, mult));
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        RationalRoots {
            roots,
            leftover: rest,
        }
    }
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut small = vec![];
    let mut large = vec![];
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

fn candidate_roots(p: &UniPoly) -> Vec<Rat> {
    if p.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let ints = p.to_primitive_integer();
    let a0 = &ints[0];
    let an = ints.last().expect("nonzero");
    if let (Some(num_divs), Some(den_divs)) = (small_divisors(a0), small_divisors(an)) {
        if num_divs.len() * den_divs.len() <= 200_000 {
            let mut out = vec![];
            for &q in &den_divs {
                for &pn in &num_divs {
                    let r = Rat::new(BigInt::from(pn), BigInt::from(q));
                    out.push(r.clone());
                    out.push(-r);
                }
            }
            return out;
        }
    }
    numeric_candidates(p)
}

/// Continued-fraction convergents of the real parts of approximate roots.
fn numeric_candidates(p: &UniPoly) -> Vec<Rat> {
    let coeffs: Vec<f64> = p.monic().coeffs.iter().map(super::rat_to_f64).collect();
    let approx = aberth_roots(&coeffs);
    let mut out = vec![];
    for (re, im) in approx {
        if im.abs() > 1e-6 * (1.0 + re.abs()) {
            continue;
        }
        out.extend(convergents(re, 40));
    }
    out
}

fn convergents(x: f64, max_terms: usize) -> Vec<Rat> {
    let mut out = vec![];
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut v = x;
    for _ in 0..max_terms {
        if !v.is_finite() || v.abs() > 1e15 {
            break;
        }
        let a = v.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        out.push(Rat::new(h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-13 {
            break;
        }
        v = 1.0 / frac;
    }
    out
}

/// Simultaneous Aberth–Ehrlich iteration on a monic polynomial given by
/// ascending coefficients. Returns `(re, im)` pairs.
fn aberth_roots(coeffs: &[f64]) -> Vec<(f64, f64)> {
    let n = coeffs.len() - 1;
    let bound = 1.0 + coeffs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64;
            (0.5 * bound * ang.cos(), 0.5 * bound * ang.sin())
        })
        .collect();
    let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let cdiv = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    let eval = |x: (f64, f64)| {
        let mut p = (0.0, 0.0);
        let mut dp = (0.0, 0.0);
        for c in coeffs.iter().rev() {
            dp = cmul(dp, x);
            dp = (dp.0 + p.0, dp.1 + p.1);
            p = cmul(p, x);
            p.0 += c;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.0 == 0.0 && p.1 == 0.0 {
                continue;
            }
            let ratio = cdiv(p, dp);
            let mut s = (0.0, 0.0);
            for j in 0..n {
                if i != j {
                    let d = (z[i].0 - z[j].0, z[i].1 - z[j].1);
                    let inv = cdiv((1.0, 0.0), d);
                    s = (s.0 + inv.0, s.1 + inv.1);
                }
            }
            let denom = (1.0 - cmul(ratio, s).0, -cmul(ratio, s).1);
            let w = cdiv(ratio, denom);
            if !w.0.is_finite() || !w.1.is_finite() {
                continue;
            }
            z[i] = (z[i].0 - w.0, z[i].1 - w.1);
            max_step = max_step.max((w.0 * w.0 + w.1 * w.1).sqrt());
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn gcd_and_division() {
        let a = UniPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let b = UniPoly::from_ints(&[1, 1]); // x + 1
        assert_eq!(a.gcd(&b), b);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, UniPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(
            UniPoly::from_ints(&[0, 0, 1, 1]).squarefree_part(),
            UniPoly::from_ints(&[0, 1, 1])
        );
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (2x - 1)^2 (x + 3) x^2 (x^2 + 1)
        let p = &(&(&UniPoly::from_ints(&[-1, 2]).pow(2) * &UniPoly::from_ints(&[3, 1]))
            * &UniPoly::from_ints(&[0, 0, 1]))
            * &UniPoly::from_ints(&[1, 0, 1]);
        let rr = p.rational_roots();
        assert_eq!(
            rr.roots,
            vec![(rat(-3, 1), 1), (rat(0, 1), 2), (rat(1, 2), 2)]
        );
        assert!(!rr.complete());
        assert_eq!(rr.leftover.monic(), UniPoly::from_ints(&[1, 0, 1]));
    }

    #[test]
    fn numeric_fallback_finds_large_roots() {
        // roots 1234567891/7 and -10000000019 exceed the divisor limit
        let r1 = Rat::new(BigInt::from(1_234_567_891i64), BigInt::from(7));
        let r2 = rat(-10_000_000_019, 1);
        let p = &UniPoly::linear_root(&r1) * &UniPoly::linear_root(&r2);
        let p = &p * &UniPoly::from_ints(&[13, 0, 0, 1]);
        let rr = p.rational_roots();
        assert_eq!(rr.roots.len(), 2);
        assert!(rr.roots.contains(&(r1, 1)));
        assert!(rr.roots.contains(&(r2, 1)));
    }
}
