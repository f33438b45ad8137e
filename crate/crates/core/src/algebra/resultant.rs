use num_traits::One;

use super::poly::Poly;
use super::rat::Rat;

/// Resultant of `f` and `g` with respect to variable `var`, computed as the
/// Sylvester determinant by fraction-free Bareiss elimination. The result
/// stays in the same ring and does not involve `var`.
pub fn resultant(f: &Poly, g: &Poly, var: usize) -> Poly {
    let vars = f.vars().to_vec();
    if f.is_zero() || g.is_zero() {
        return Poly::zero(&vars);
    }
    let m = f.degree_in(var).unwrap_or(0) as usize;
    let n = g.degree_in(var).unwrap_or(0) as usize;
    if m == 0 {
        return f.pow(n as u32);
    }
    if n == 0 {
        return g.pow(m as u32);
    }
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    let size = m + n;
    let zero = Poly::zero(&vars);
    let mut mat = vec![vec![zero.clone(); size]; size];
    // rows hold coefficients from the highest power down
    for r in 0..n {
        for k in 0..=m {
            mat[r][r + k] = fc[m - k].clone();
        }
    }
    for r in 0..m {
        for k in 0..=n {
            mat[n + r][r + k] = gc[n - k].clone();
        }
    }
    bareiss_det(mat, &vars)
}

fn bareiss_det(mut mat: Vec<Vec<Poly>>, vars: &[String]) -> Poly {
    let size = mat.len();
    let mut sign_negative = false;
    let mut prev = Poly::constant(vars, Rat::one());
    for k in 0..size {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&r| !mat[r][k].is_zero()) else {
                return Poly::zero(vars);
            };
            mat.swap(k, swap);
            sign_negative = !sign_negative;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step is an exact division");
            }
            mat[i][k] = Poly::zero(vars);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if sign_negative {
        -&det
    } else {
        det
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
    fn discriminant_of_quadratic() {
        // Res_y(y^2 + x, 2y) = 4x
        let f = p("y^2 + x");
        let r = resultant(&f, &f.derivative(1), 1);
        assert_eq!(r, p("4*x"));
    }

    #[test]
    fn cusp_singular_locus() {
        let f = p("y^2 - x^3");
        let r = resultant(&f, &f.derivative(1), 1);
        assert_eq!(r, p("-4*x^3"));
    }

    #[test]
    fn common_root_detection() {
        let a = p("(y - x)*(y + 1)");
        let b = p("(y - x)*(y - 2)");
        assert!(resultant(&a, &b, 1).is_zero());
        let c = p("y - 3");
        let d = p("y - 5");
        assert_eq!(resultant(&c, &d, 1).constant_term(), rat(-2, 1));
    }

    #[test]
    fn constant_arguments() {
        let f = p("y^3 + x");
        assert_eq!(resultant(&f, &p("2"), 1), p("8"));
        assert_eq!(resultant(&p("x"), &f, 1), p("x^3"));
        assert!(resultant(&f, &p("0"), 1).is_zero());
    }
}
