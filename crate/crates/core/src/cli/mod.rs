//! Command-line front end. Reads JSON curve, open-set and verification
//! files and writes deterministic JSON reports.

pub mod input;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::dichotomy::{decide, l2_delta, ExactPolicy};
use crate::error::{Error, Result};
use crate::numeric::{
    closed_form_norm, isometry_residual, predicted_slope, pullback_form_exponent,
    weighted_monomial_norm, NormEstimate, QuadratureConfig, Side, WeightSpec,
};
use crate::puiseux::{branch_from_input, PuiseuxBranch};

pub use input::{CurveFile, OpenSetFile, VerifyFile};
pub use report::Report;

use report::{
    ConvergenceSummary, CurveSummary, DivisorSummary, ExponentEntry, IsometryEntry,
    MembershipEntry, MembershipSummary, NumericSummary,
};

#[derive(Debug, Parser)]
#[command(
    name = "bergdim",
    version,
    about = "Bergman space dimensions on singular plane curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Singular points, delta invariants, genus and multiplicity divisors.
    Analyze {
        #[arg(long)]
        curve: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Finite or infinite dimension of the Bergman space of an open set.
    Decide {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        openset: PathBuf,
        /// Fail unless an exact dimension can be computed.
        #[arg(long, conflicts_with = "bounds_only")]
        exact: bool,
        /// Skip the exact computation and report bounds only.
        #[arg(long)]
        bounds_only: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Codimension of the descended Bergman space.
    L2delta {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        openset: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Quadrature checks; exits with 6 when a check is out of tolerance.
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Args)]
struct OutArg {
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Runs the front end and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (report, out) = match execute(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let text = report.to_json();
    let written = match &out {
        Some(p) => std::fs::write(p, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return 1;
    }
    match &report.numeric {
        Some(n) if !n.passed => {
            eprintln!("error: numeric checks out of tolerance");
            6
        }
        _ => 0,
    }
}

fn execute(cmd: Command) -> Result<(Report, Option<PathBuf>)> {
    match cmd {
        Command::Analyze { curve, out } => Ok((analyze(&CurveFile::load(&curve)?)?, out.out)),
        Command::Decide {
            curve,
            openset,
            exact,
            bounds_only,
            out,
        } => {
            let policy = if exact {
                ExactPolicy::Require
            } else if bounds_only {
                ExactPolicy::BoundsOnly
            } else {
                ExactPolicy::Auto
            };
            let r = decide_files(
                &CurveFile::load(&curve)?,
                &OpenSetFile::load(&openset)?,
                policy,
            )?;
            Ok((r, out.out))
        }
        Command::L2delta {
            curve,
            openset,
            out,
        } => {
            let r = l2delta_files(&CurveFile::load(&curve)?, &OpenSetFile::load(&openset)?)?;
            Ok((r, out.out))
        }
        Command::Verify { config, out } => {
            let (cfg, base) = match &config {
                Some(p) => (VerifyFile::load(p)?, p.parent().map(Path::to_path_buf)),
                None => (VerifyFile::default(), None),
            };
            Ok((verify(&cfg, base.as_deref())?, out.out))
        }
    }
}

fn base_report(command: &str, file: &CurveFile) -> Result<(Report, crate::puiseux::CurveModel)> {
    let curve = file.build()?;
    let mut report = Report::new(command);
    report.curve = Some(CurveSummary::new(&curve, file.ambient));
    report.divisors = Some(DivisorSummary::new(&curve, &mut report.notes)?);
    report.notes.extend(curve.notes.iter().cloned());
    Ok((report, curve))
}

pub fn analyze(file: &CurveFile) -> Result<Report> {
    Ok(base_report("analyze", file)?.0)
}

pub fn decide_files(
    file: &CurveFile,
    openset: &OpenSetFile,
    policy: ExactPolicy,
) -> Result<Report> {
    let (mut report, curve) = base_report("decide", file)?;
    let spec = openset.spec(file.ambient)?;
    report.verdict = Some(decide(&curve, &spec, policy)?);
    Ok(report)
}

pub fn l2delta_files(file: &CurveFile, openset: &OpenSetFile) -> Result<Report> {
    let (mut report, curve) = base_report("l2delta", file)?;
    let spec = openset.spec(file.ambient)?;
    report.l2delta = Some(l2_delta(&curve, &spec)?);
    Ok(report)
}

fn default_isometry_pairs() -> Vec<[i32; 2]> {
    (-2..=2)
        .flat_map(|m: i32| (0..4).map(move |i| [i - m, m]))
        .collect()
}

fn rel_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn membership(cfg: &VerifyFile, q: &QuadratureConfig) -> MembershipSummary {
    let mut entries = vec![];
    for j in cfg.j_range[0]..=cfg.j_range[1] {
        for m in cfg.m_range[0]..=cfg.m_range[1] {
            let estimate = weighted_monomial_norm(j, WeightSpec { m }, cfg.radius, q);
            let expected_finite = j + m >= 0;
            let closed_form = closed_form_norm(j + m, cfg.radius);
            let rel = match (estimate, closed_form) {
                (NormEstimate::Finite(v), Some(c)) => Some(rel_error(v, c)),
                _ => None,
            };
            let ok = match estimate {
                NormEstimate::Finite(_) => expected_finite && rel.is_some_and(|r| r <= q.rel_tol),
                NormEstimate::Divergent => !expected_finite,
                NormEstimate::Inconclusive => false,
            };
            entries.push(MembershipEntry {
                j,
                m,
                expected_finite,
                estimate,
                closed_form,
                rel_error: rel,
                ok,
            });
        }
    }
    MembershipSummary {
        cases: entries.len(),
        mismatches: entries.iter().filter(|e| !e.ok).count(),
        max_rel_error: entries.iter().filter_map(|e| e.rel_error).reduce(f64::max),
        entries,
    }
}

fn exponent_entry(
    name: &str,
    b: &PuiseuxBranch,
    side: Side,
    expected_leading: Option<f64>,
    cfg: &VerifyFile,
) -> ExponentEntry {
    let predicted = predicted_slope(b, side);
    let mut entry = ExponentEntry {
        name: name.into(),
        branch: b.branch_id.clone(),
        side,
        predicted_slope: predicted,
        slope: None,
        fit_residual: None,
        leading: None,
        expected_leading,
        skipped: None,
        ok: false,
    };
    if b.symbolic {
        entry.skipped = Some("symbolic coefficients".into());
        entry.ok = true;
        return entry;
    }
    match pullback_form_exponent(b, side) {
        Ok(fit) => {
            let leading = fit.intercept.exp();
            entry.slope = Some(fit.slope);
            entry.fit_residual = Some(fit.residual);
            entry.leading = Some(leading);
            entry.ok = predicted.is_some_and(|p| (fit.slope - p).abs() <= cfg.slope_tol)
                && fit.residual <= cfg.fit_residual_tol
                && expected_leading.is_none_or(|c| rel_error(leading, c) <= cfg.leading_rel_tol);
        }
        Err(e) => entry.skipped = Some(e.to_string()),
    }
    entry
}

fn default_exponent_cases() -> Vec<input::ExponentCase> {
    serde_json::from_str(
        r#"[
        {"name": "cusp", "side": "at_center", "expected_slope": 2.0, "expected_leading": 4.0,
         "branch": {"components": [{"2": 1}, {"3": 1}]}},
        {"name": "smooth", "side": "at_center", "expected_slope": 0.0,
         "branch": {"components": [{"1": 1}, {}]}},
        {"name": "tangent at infinity", "side": "at_infinity", "expected_slope": -6.0,
         "branch": {"components": [{"1": 1}, {"2": 1}], "infinity_component": 1}}
    ]"#,
    )
    .expect("built-in cases parse")
}

/// Runs the numeric checks described by `cfg`; curve paths are resolved
/// against `base`.
pub fn verify(cfg: &VerifyFile, base: Option<&Path>) -> Result<Report> {
    let q = cfg.quadrature;
    q.validate()?;
    if !(cfg.radius > 0.0 && cfg.radius.is_finite()) {
        return Err(Error::InconsistentInput("radius must be positive".into()));
    }
    let mut report = Report::new("verify");
    let membership = membership(cfg, &q);

    let pairs = cfg
        .isometry_pairs
        .clone()
        .unwrap_or_else(default_isometry_pairs);
    let isometry: Vec<IsometryEntry> = pairs
        .iter()
        .map(|&[j, m]| {
            let r = isometry_residual(j, WeightSpec { m }, cfg.radius, &q);
            let residual = r.as_ref().ok().copied();
            IsometryEntry {
                j,
                m,
                residual,
                ok: residual.is_some_and(|v| v < cfg.isometry_tol),
            }
        })
        .collect();

    let mut exponents = vec![];
    let cases = cfg
        .exponent_cases
        .clone()
        .unwrap_or_else(default_exponent_cases);
    for case in &cases {
        let b = branch_from_input(&VerifyFile::branch(&case.branch)?, &case.name)?;
        let mut e = exponent_entry(&case.name, &b, case.side, case.expected_leading, cfg);
        if let Some(s) = case.expected_slope {
            if e.predicted_slope != Some(s) {
                e.ok = false;
                report.notes.push(format!(
                    "{}: expected slope {s} differs from the predicted one",
                    case.name
                ));
            }
        }
        exponents.push(e);
    }
    for path in &cfg.curves {
        let full = match base {
            Some(b) => b.join(path),
            None => PathBuf::from(path),
        };
        let curve = CurveFile::load(&full)?.build()?;
        for rec in &curve.points {
            for b in &rec.branches {
                exponents.push(exponent_entry(path, b, Side::AtCenter, None, cfg));
                if rec.at_infinity && b.infinity_order.is_some() {
                    exponents.push(exponent_entry(path, b, Side::AtInfinity, None, cfg));
                }
            }
        }
    }

    let convergence = cfg.convergence_check.then(|| {
        let refined = q.refined();
        let fine = self::membership(cfg, &refined);
        let max_rel_change = membership
            .entries
            .iter()
            .zip(&fine.entries)
            .filter_map(|(a, b)| match (a.estimate, b.estimate) {
                (NormEstimate::Finite(x), NormEstimate::Finite(y)) => Some(rel_error(x, y)),
                _ => None,
            })
            .fold(0.0, f64::max);
        ConvergenceSummary {
            refined,
            max_rel_change,
            ok: max_rel_change < q.rel_tol / 2.0,
        }
    });

    let passed = membership.mismatches == 0
        && isometry.iter().all(|e| e.ok)
        && exponents.iter().all(|e| e.ok)
        && convergence.as_ref().is_none_or(|c| c.ok);
    report.numeric = Some(NumericSummary {
        passed,
        quadrature: q,
        radius: cfg.radius,
        membership,
        isometry,
        exponents,
        convergence,
    });
    Ok(report)
}
