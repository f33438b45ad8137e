use bergdim::constructions::exact_branch;
use bergdim::numeric::{
    closed_form_norm, predicted_slope, pullback_form_exponent, weighted_monomial_norm,
    NormEstimate, QuadratureConfig, Side, WeightSpec,
};
use bergdim::puiseux::{branch_from_input, ParamBranchInput};
use num_integer::Integer;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn membership_follows_the_analytic_rule(j in -4i32..=4, m in -4i32..=4, radius in 0.5f64..2.0) {
        let cfg = QuadratureConfig::default();
        let est = weighted_monomial_norm(j, WeightSpec { m }, radius, &cfg);
        prop_assert_eq!(est.is_finite(), j + m >= 0);
        if let NormEstimate::Finite(v) = est {
            let exact = closed_form_norm(j + m, radius).unwrap();
            prop_assert!((v - exact).abs() / exact < cfg.rel_tol, "{v} vs {exact}");
        } else {
            prop_assert_eq!(est, NormEstimate::Divergent);
        }
    }

    #[test]
    fn refinement_moves_estimates_by_less_than_half_the_tolerance(s in 0i32..=8) {
        let cfg = QuadratureConfig::default();
        let (NormEstimate::Finite(a), NormEstimate::Finite(b)) = (
            weighted_monomial_norm(s, WeightSpec { m: 0 }, 1.0, &cfg),
            weighted_monomial_norm(s, WeightSpec { m: 0 }, 1.0, &cfg.refined()),
        ) else {
            panic!("finite norm expected for s = {s}");
        };
        prop_assert!((a - b).abs() / b < cfg.rel_tol / 2.0);
    }

    #[test]
    fn exponent_fit_at_center(a in 1u32..=5, gap in 1u32..=4, c in 1i64..=3, extra in 0i64..=2) {
        let b = a + gap;
        prop_assume!(a.gcd(&b) == 1);
        let input = exact_branch(&[&[(a, 1)], &[(b, c), (b + 1, extra)]], None);
        let branch = branch_from_input(&input, "p.0").unwrap();
        let fit = pullback_form_exponent(&branch, Side::AtCenter).unwrap();
        let predicted = predicted_slope(&branch, Side::AtCenter).unwrap();
        prop_assert!((fit.slope - predicted).abs() < 0.05, "{} vs {predicted}", fit.slope);
        prop_assert!(fit.residual < 1e-3);
        // leading coefficient of the density is a^2
        let lead = f64::from(a * a);
        prop_assert!((fit.intercept.exp() - lead).abs() / lead < 0.01);
    }

    #[test]
    fn exponent_fit_at_infinity(mn in 1u32..=5, other in 1u32..=5) {
        // f_N = t^mn cuts out the line at infinity, the other coordinate is t^other
        let input = ParamBranchInput {
            infinity_component: Some(1),
            ..exact_branch(&[&[(other, 1)], &[(mn, 1)]], None)
        };
        prop_assume!(other.gcd(&mn) == 1);
        let branch = branch_from_input(&input, "h.0").unwrap();
        let fit = pullback_form_exponent(&branch, Side::AtInfinity).unwrap();
        let predicted = -2.0 * (mn as f64 + 1.0);
        prop_assert_eq!(predicted_slope(&branch, Side::AtInfinity), Some(predicted));
        prop_assert!((fit.slope - predicted).abs() < 0.05, "{} vs {predicted}", fit.slope);
        prop_assert!(fit.residual < 1e-3);
    }
}
