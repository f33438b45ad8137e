use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rat::{rat_to_string, Rat};
use super::univariate::UniPoly;

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are keyed by exponent vectors whose length always equals the number
/// of variables; zero coefficients are never stored. The lexicographically
/// largest exponent vector is the leading term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        Poly {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Rat) -> Self {
        let mut p = Self::zero(vars);
        let n = p.vars.len();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn var<S: AsRef<str>>(vars: &[S], index: usize) -> Self {
        let mut p = Self::zero(vars);
        let mut e = vec![0; p.vars.len()];
        e[index] = 1;
        p.add_term(e, Rat::one());
        p
    }

    pub fn from_terms<S: AsRef<str>>(
        vars: &[S],
        terms: impl IntoIterator<Item = (Vec<u32>, Rat)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent vector length mismatch");
            p.add_term(e, c);
        }
        p
    }

    fn same_ring(&self, other: &Poly) -> Self {
        assert_eq!(self.vars, other.vars, "polynomials live in different rings");
        Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Smallest total degree among the terms (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn min_degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        let mut out = self.same_ring(self);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() == d {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn leading_term(&self) -> Option<(&Vec<u32>, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        let mut out = self.same_ring(self);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::constant(&self.vars, Rat::one());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = self.same_ring(self);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c * Rat::from_integer(e[i].into()));
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes variable `i` by the polynomial `subs[i]`; all substitutes
    /// must share one variable list, which becomes the result's ring.
    pub fn compose(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.vars.len());
        let target_vars = subs.first().map(|p| p.vars.clone()).unwrap_or_default();
        let mut powers: Vec<Vec<Poly>> = subs
            .iter()
            .map(|s| vec![Poly::constant(&target_vars, Rat::one()), s.clone()])
            .collect();
        let mut out = Poly::zero(&target_vars);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(&target_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &subs[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Replaces variable `i` by the constant `value` (the variable stays in
    /// the ring with exponent zero everywhere).
    pub fn specialize(&self, i: usize, value: &Rat) -> Poly {
        let mut out = self.same_ring(self);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[i] = 0;
            out.add_term(ne, c * num_traits::pow(value.clone(), e[i] as usize));
        }
        out
    }

    /// Coefficients with respect to variable `i`, lowest power first; each
    /// coefficient keeps the full variable list with exponent zero in `i`.
    pub fn coefficients_in(&self, i: usize) -> Vec<Poly> {
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![self.same_ring(self); deg + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[i] as usize;
            ne[i] = 0;
            out[k].terms.insert(ne, c.clone());
        }
        out
    }

    /// Dense univariate view in variable `i`; `None` if another variable
    /// occurs.
    pub fn to_univariate(&self, i: usize) -> Option<UniPoly> {
        let mut coeffs = vec![];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k != 0) {
                return None;
            }
            let k = e[i] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rat::zero());
            }
            coeffs[k] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn from_univariate<S: AsRef<str>>(vars: &[S], i: usize, u: &UniPoly) -> Poly {
        let mut p = Poly::zero(vars);
        let n = p.vars.len();
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Divides every term by `var_i^k`; panics if some term has a smaller
    /// exponent.
    pub fn divide_by_var_power(&self, i: usize, k: u32) -> Poly {
        let mut out = self.same_ring(self);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[i] = ne[i].checked_sub(k).expect("monomial does not divide");
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lt_e, lt_c) = divisor.leading_term()?;
        let (lt_e, lt_c) = (lt_e.clone(), lt_c.clone());
        let mut rem = self.clone();
        let mut quot = self.same_ring(self);
        while let Some((re, rc)) = rem.leading_term() {
            if re.iter().zip(&lt_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = re.iter().zip(&lt_e).map(|(a, b)| a - b).collect();
            let qc = rc / &lt_c;
            let mut t = self.same_ring(self);
            t.terms.insert(qe.clone(), qc.clone());
            rem = &rem - &(&t * divisor);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Renames the ring (same arity) without touching the terms.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Poly {
        assert_eq!(vars.len(), self.vars.len());
        Poly {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: self.terms.clone(),
        }
    }

    /// Drops variable `i`, which must not occur.
    pub fn drop_var(&self, i: usize) -> Poly {
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut out = Poly::zero(&vars);
        for (e, c) in &self.terms {
            assert_eq!(e[i], 0, "dropped variable still occurs");
            let mut ne = e.clone();
            ne.remove(i);
            out.terms.insert(ne, c.clone());
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        assert_eq!(self.vars, rhs.vars, "polynomials live in different rings");
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        assert_eq!(self.vars, rhs.vars, "polynomials live in different rings");
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = self.same_ring(rhs);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| {
                    if *k == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", rat_to_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", rat_to_string(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat};

    fn p(s: &str) -> Poly {
        parse_poly(s, Some(&["x", "y"])).unwrap()
    }

    #[test]
    fn arithmetic_and_display() {
        let f = p("y^2 - x^3");
        let g = p("x - y");
        assert_eq!((&f + &g).to_string(), "-x^3 + x + y^2 - y");
        assert_eq!((&g * &g).to_string(), "x^2 - 2*x*y + y^2");
        assert!((&f - &f).is_zero());
        assert_eq!(f.derivative(0).to_string(), "-3*x^2");
        assert_eq!(f.eval(&[rat(1, 1), rat(2, 1)]), rat(3, 1));
        assert_eq!(g.pow(3).total_degree(), Some(3));
    }

    #[test]
    fn exact_division() {
        let a = p("x^2 - y^2");
        let b = p("x + y");
        assert_eq!(a.div_exact(&b), Some(p("x - y")));
        assert_eq!(a.div_exact(&p("x + 2*y")), None);
    }

    #[test]
    fn composition_and_specialization() {
        let f = p("x*y + 1");
        let t = ["t"];
        let subs = [
            Poly::from_terms(&t, [(vec![2], rat(1, 1))]),
            Poly::from_terms(&t, [(vec![3], rat(1, 1))]),
        ];
        assert_eq!(f.compose(&subs).to_string(), "t^5 + 1");
        assert_eq!(f.specialize(0, &rat(2, 1)), p("2*y + 1"));
        let c = f.coefficients_in(1);
        assert_eq!(c.len(), 2);
        assert_eq!(c[1], p("x"));
    }

    #[test]
    fn homogeneity() {
        assert!(parse_poly("y^2*z - x^3", None).unwrap().is_homogeneous());
        assert!(!p("y^2 - x^3").is_homogeneous());
        assert_eq!(p("y^2 - x^2 - x^3").order(), Some(2));
        assert_eq!(p("y^2 - x^2 - x^3").homogeneous_part(2), p("y^2 - x^2"));
    }
}
