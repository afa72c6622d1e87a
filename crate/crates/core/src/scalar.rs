//! Scalar abstraction shared by the exact (rational) and floating-point
//! region code paths.

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Exact rate type used by the linear deterministic model.
pub type Rational = Ratio<i64>;

/// A number a rate region can be built from.
///
/// Rationals compare exactly (their default tolerance is zero); floats carry
/// an explicit tolerance through every comparison.
pub trait Scalar:
    Num + Signed + FromPrimitive + ToPrimitive + Clone + PartialOrd + Debug + Display + Send + Sync
{
    /// Tolerance used when the caller does not supply one.
    fn default_tol() -> Self;

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// `max(self, 0)`.
    fn pos(self) -> Self {
        self.max_of(Self::zero())
    }

    fn approx_eq(&self, other: &Self, tol: &Self) -> bool {
        (self.clone() - other.clone()).abs() <= *tol
    }
}

impl Scalar for f64 {
    fn default_tol() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn default_tol() -> Self {
        1e-5
    }
}

impl Scalar for Rational {
    fn default_tol() -> Self {
        Ratio::from_integer(0)
    }
}

/// Integer as an exact rational.
pub fn rat(n: i64) -> Rational {
    Ratio::from_integer(n)
}

/// Parses `"3"`, `"0.125"`, `"-2.5"` or `"1/8"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().ok()?;
        let den: i64 = den.trim().parse().ok()?;
        if den == 0 {
            return None;
        }
        return Some(Ratio::new(num, den));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    if frac_part.len() > 15 {
        return None;
    }
    let den = 10i64.checked_pow(frac_part.len() as u32)?;
    let int_val: i64 = if int_part.is_empty() { 0 } else { int_part.parse().ok()? };
    let frac_val: i64 = if frac_part.is_empty() { 0 } else { frac_part.parse().ok()? };
    let num = int_val.checked_mul(den)?.checked_add(frac_val)?;
    let r = Ratio::new(num, den);
    Some(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_and_fraction_forms() {
        assert_eq!(parse_rational("0.125"), Some(Ratio::new(1, 8)));
        assert_eq!(parse_rational("1/8"), Some(Ratio::new(1, 8)));
        assert_eq!(parse_rational("3"), Some(rat(3)));
        assert_eq!(parse_rational("-2.5"), Some(Ratio::new(-5, 2)));
        assert_eq!(parse_rational(".5"), Some(Ratio::new(1, 2)));
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational(""), None);
    }

    #[test]
    fn min_max_pos() {
        assert_eq!(rat(3).max_of(rat(5)), rat(5));
        assert_eq!(rat(3).min_of(rat(5)), rat(3));
        assert_eq!(rat(-2).pos(), rat(0));
        assert_eq!((-1.5f64).pos(), 0.0);
    }
}
