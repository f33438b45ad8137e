use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"7"`, `"-3/4"` or `"+2"`.
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.strip_prefix('+').unwrap_or(num).parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Round-to-nearest conversion; falls back to a ratio of separately
/// converted parts when the integers overflow `f64` individually.
pub fn rat_to_f64(r: &Rat) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Returns `Some(s)` with `s^n == r` when such a rational exists.
pub fn rational_nth_root(r: &Rat, n: u32) -> Option<Rat> {
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some(r.clone());
    }
    if r.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let root_int = |x: &BigInt| -> Option<BigInt> {
        let s = x.abs().nth_root(n);
        if num_traits::pow(s.clone(), n as usize) == x.abs() {
            Some(if x.is_negative() { -s } else { s })
        } else {
            None
        }
    };
    let num = root_int(r.numer())?;
    let den = root_int(r.denom())?;
    Some(Rat::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_rat("+5"), Some(rat(5, 1)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
        assert_eq!(rat_to_string(&rat(4, 2)), "2");
        assert_eq!(rat_to_string(&rat(-1, 3)), "-1/3");
    }

    #[test]
    fn nth_roots() {
        assert_eq!(rational_nth_root(&rat(8, 27), 3), Some(rat(2, 3)));
        assert_eq!(rational_nth_root(&rat(-8, 1), 3), Some(rat(-2, 1)));
        assert_eq!(rational_nth_root(&rat(2, 1), 2), None);
        assert_eq!(rational_nth_root(&rat(-4, 1), 2), None);
    }
}
