//! Quadrature checks of weighted Bergman norms and of the growth of pulled
//! back area forms along branches.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::algebra::{rat_to_f64, TruncSeries};
use crate::error::{Error, Result};
use crate::puiseux::{Chart, PuiseuxBranch};

/// Weight `|z|^(2m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub m: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    pub annuli: u32,
    pub nodes_radial: u32,
    pub nodes_angular: u32,
    pub rel_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            annuli: 48,
            nodes_radial: 512,
            nodes_angular: 4,
            rel_tol: 1e-4,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 0.1) {
            return Err(Error::InconsistentInput(
                "rel_tol must lie in (0, 0.1]".into(),
            ));
        }
        if self.annuli < 6 || self.nodes_radial == 0 || self.nodes_angular == 0 {
            return Err(Error::InconsistentInput(
                "need at least 6 annuli and one node per direction".into(),
            ));
        }
        Ok(())
    }

    pub fn refined(&self) -> Self {
        QuadratureConfig {
            nodes_radial: 2 * self.nodes_radial,
            nodes_angular: 2 * self.nodes_angular,
            ..*self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum NormEstimate {
    Finite(f64),
    Divergent,
    /// Neither the divergence nor the convergence rule fired.
    Inconclusive,
}

impl NormEstimate {
    pub fn is_finite(&self) -> bool {
        matches!(self, NormEstimate::Finite(_))
    }
}

/// Midpoint rule in `(log r, theta)` over `R 2^(-k-1) < |z| < R 2^(-k)`.
fn annulus_integral(
    integrand: impl Fn(f64, f64) -> f64,
    r_outer: f64,
    cfg: &QuadratureConfig,
) -> f64 {
    let lo = (r_outer / 2.0).ln();
    let h = std::f64::consts::LN_2 / cfg.nodes_radial as f64;
    let ht = 2.0 * PI / cfg.nodes_angular as f64;
    let mut total = 0.0;
    for i in 0..cfg.nodes_radial {
        let r = (lo + (i as f64 + 0.5) * h).exp();
        let mut ring = 0.0;
        for j in 0..cfg.nodes_angular {
            ring += integrand(r, (j as f64 + 0.5) * ht);
        }
        total += ring * ht * r * r;
    }
    total * h
}

/// Per-annulus contributions, outermost first.
fn dyadic_contributions(
    integrand: impl Fn(f64, f64) -> f64 + Copy,
    radius: f64,
    cfg: &QuadratureConfig,
) -> Vec<f64> {
    (0..cfg.annuli)
        .map(|k| annulus_integral(integrand, radius * 0.5f64.powi(k as i32), cfg))
        .collect()
}

fn classify(contrib: &[f64]) -> NormEstimate {
    let tail = &contrib[contrib.len() - 5..];
    if tail.windows(2).all(|w| w[1] >= w[0]) {
        return NormEstimate::Divergent;
    }
    if tail.windows(2).all(|w| w[1] < 0.75 * w[0]) {
        let last = tail[4];
        let ratio = tail[4] / tail[3];
        // geometric remainder of the untouched inner disc
        let sum: f64 = contrib.iter().sum::<f64>() + last * ratio / (1.0 - ratio);
        return NormEstimate::Finite(sum);
    }
    NormEstimate::Inconclusive
}

/// `int_{0 < |z| < R} |z|^(2j) |z|^(2m) dA`.
pub fn weighted_monomial_norm(
    j: i32,
    w: WeightSpec,
    radius: f64,
    cfg: &QuadratureConfig,
) -> NormEstimate {
    let integrand = move |r: f64, _t: f64| r.powi(2 * j) * r.powi(2 * w.m);
    classify(&dyadic_contributions(integrand, radius, cfg))
}

/// `int_{0 < |z| < R} |z|^(2s) dA`.
pub fn monomial_norm(s: i32, radius: f64, cfg: &QuadratureConfig) -> NormEstimate {
    let integrand = move |r: f64, _t: f64| r.powi(2 * s);
    classify(&dyadic_contributions(integrand, radius, cfg))
}

/// `pi R^(2(s+1)) / (s+1)` for `s > -1`.
pub fn closed_form_norm(s: i32, radius: f64) -> Option<f64> {
    (s > -1).then(|| PI * radius.powi(2 * (s + 1)) / (s + 1) as f64)
}

/// Relative gap between `||z^j||` in the weight `|z|^(2m)` and `||z^(j+m)||`
/// unweighted.
pub fn isometry_residual(
    j: i32,
    w: WeightSpec,
    radius: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if j + w.m < 0 {
        return Err(Error::InconsistentInput(format!(
            "z^{j} is not square integrable against |z|^{}",
            2 * w.m
        )));
    }
    match (
        weighted_monomial_norm(j, w, radius, cfg),
        monomial_norm(j + w.m, radius, cfg),
    ) {
        (NormEstimate::Finite(a), NormEstimate::Finite(b)) => Ok((a - b).abs() / b),
        _ => Err(Error::GridUnderflow(format!(
            "quadrature failed to converge for j = {j}, m = {}",
            w.m
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    AtCenter,
    AtInfinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub slope: f64,
    /// Natural log of the leading coefficient of the density.
    pub intercept: f64,
    /// Root mean square deviation of the fit.
    pub residual: f64,
}

/// Least squares line through `(x, y)`.
pub fn fit_line(points: &[(f64, f64)]) -> ExponentFit {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    ExponentFit {
        slope,
        intercept,
        residual,
    }
}

/// Value and derivative of a real series at `t`.
fn eval(coeffs: &[(u32, f64)], t: f64) -> (f64, f64) {
    let mut v = 0.0;
    let mut d = 0.0;
    for &(k, c) in coeffs {
        v += c * t.powi(k as i32);
        if k > 0 {
            d += c * k as f64 * t.powi(k as i32 - 1);
        }
    }
    (v, d)
}

/// Sample exponents `k` of `t = 2^-k`.
pub const FIT_GRID: std::ops::RangeInclusive<i32> = 12..=32;

/// Density of the pulled back Euclidean area form at real `t`. At the
/// center it is `sum |pi_i'|^2`; at infinity the chart formula
/// `|f_N'|^2 / |f_N|^4 + sum |(f_j / f_N)'|^2` with `f_N` the local equation
/// of the line at infinity.
pub fn pullback_density(b: &PuiseuxBranch, side: Side, t: f64) -> Result<f64> {
    let comps: Vec<Vec<(u32, f64)>> = b
        .components
        .iter()
        .map(TruncSeries::to_f64_coeffs)
        .collect();
    match side {
        Side::AtCenter => Ok(comps.iter().map(|c| eval(c, t).1.powi(2)).sum()),
        Side::AtInfinity => {
            let n = infinity_component(b)?;
            let shift = |i: usize| -> Vec<(u32, f64)> {
                // homogeneous coordinate: the center plus the local component
                let mut c = comps[i].clone();
                if let (Chart::Affine { local, .. }, Some(p)) = (&b.chart, &b.center) {
                    let a = rat_to_f64(&p.0[local[i]]);
                    if a != 0.0 {
                        c.push((0, a));
                    }
                }
                c
            };
            let (fn_v, fn_d) = eval(&comps[n], t);
            let mut total = fn_d.powi(2) / fn_v.powi(4);
            for j in (0..comps.len()).filter(|&j| j != n) {
                let (fj, dj) = eval(&shift(j), t);
                total += ((dj * fn_v - fj * fn_d) / fn_v.powi(2)).powi(2);
            }
            Ok(total)
        }
    }
}

fn infinity_component(b: &PuiseuxBranch) -> Result<usize> {
    match &b.chart {
        Chart::Affine { local, .. } => local.iter().position(|&i| i == 2).ok_or_else(|| {
            Error::InconsistentInput(format!("branch {} is not at infinity", b.branch_id))
        }),
        Chart::Declared => b.infinity_component.ok_or_else(|| {
            Error::InconsistentInput(format!(
                "branch {} has no component cutting out the line at infinity",
                b.branch_id
            ))
        }),
    }
}

/// Predicted log-log slope: `2(m - 1)` at the center, `-2(m_N + 1)` at
/// infinity.
pub fn predicted_slope(b: &PuiseuxBranch, side: Side) -> Option<f64> {
    match side {
        Side::AtCenter => Some(2.0 * (b.mult as f64 - 1.0)),
        Side::AtInfinity => b.infinity_order.map(|m| -2.0 * (m as f64 + 1.0)),
    }
}

/// Fits `log density` against `log t` on `t = 2^-k`, `k` in [`FIT_GRID`].
pub fn pullback_form_exponent(b: &PuiseuxBranch, side: Side) -> Result<ExponentFit> {
    if b.symbolic {
        return Err(Error::InconsistentInput(format!(
            "branch {} has symbolic coefficients",
            b.branch_id
        )));
    }
    let mut pts = vec![];
    for k in FIT_GRID {
        let t = 0.5f64.powi(k);
        let rho = pullback_density(b, side, t)?;
        if !rho.is_finite() || rho < f64::MIN_POSITIVE {
            return Err(Error::GridUnderflow(format!(
                "density {rho:e} at t = 2^-{k} on branch {}",
                b.branch_id
            )));
        }
        pts.push((t.ln(), rho.ln()));
    }
    Ok(fit_line(&pts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let cfg = QuadratureConfig::default();
        let NormEstimate::Finite(v) = weighted_monomial_norm(0, WeightSpec { m: 0 }, 1.0, &cfg)
        else {
            panic!()
        };
        assert!((v - PI).abs() / PI < 1e-4);
        let NormEstimate::Finite(v) = weighted_monomial_norm(2, WeightSpec { m: -1 }, 1.0, &cfg)
        else {
            panic!()
        };
        assert!((v - PI / 2.0).abs() / (PI / 2.0) < 1e-4);
        assert_eq!(
            weighted_monomial_norm(0, WeightSpec { m: -1 }, 1.0, &cfg),
            NormEstimate::Divergent
        );
    }

    #[test]
    fn isometry() {
        let cfg = QuadratureConfig::default();
        assert!(isometry_residual(3, WeightSpec { m: -2 }, 1.0, &cfg).unwrap() < 1e-6);
        assert_eq!(
            isometry_residual(0, WeightSpec { m: 0 }, 1.0, &cfg).unwrap(),
            0.0
        );
        assert!(isometry_residual(0, WeightSpec { m: -1 }, 1.0, &cfg).is_err());
    }

    #[test]
    fn line_fit() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 2.0 * i as f64 + 1.0)).collect();
        let f = fit_line(&pts);
        assert!((f.slope - 2.0).abs() < 1e-12 && (f.intercept - 1.0).abs() < 1e-12);
        assert!(f.residual < 1e-12);
    }
}
