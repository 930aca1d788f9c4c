//! Scalar backends: exact rationals and IEEE floats behind one trait.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Relative tolerance used by float comparisons.
pub const FLOAT_RTOL: f64 = 1e-9;

/// Numeric field the geometry is computed over.
///
/// Exact backends compare with `==`; float backends compare with a
/// relative tolerance of [`FLOAT_RTOL`].
pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + ToPrimitive + Send + Sync + 'static
{
    /// True for backends with exact field arithmetic.
    const EXACT: bool;

    fn from_int(i: i64) -> Self;

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_int(n) / Self::from_int(d)
    }

    /// Exact conversion for rationals (every finite double is a dyadic rational).
    fn from_float(x: f64) -> Option<Self>;

    fn as_f64(&self) -> f64;

    /// Nearest backend value to an exact rational.
    fn from_big(r: &BigRational) -> Self;

    /// Square root when it exists in the backend.
    ///
    /// Rationals only have roots for perfect squares; floats for non-negative input.
    fn try_sqrt(&self) -> Option<Self>;

    /// Zero test used for singularity decisions.
    fn is_negligible(&self, scale: &Self) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            let s = scale.abs().as_f64().max(1.0);
            self.abs().as_f64() <= FLOAT_RTOL * s
        }
    }

    fn approx_eq(&self, other: &Self) -> bool {
        if Self::EXACT {
            self == other
        } else {
            let a = self.as_f64();
            let b = other.as_f64();
            (a - b).abs() <= FLOAT_RTOL * a.abs().max(b.abs()).max(1.0)
        }
    }

    fn two() -> Self {
        Self::from_int(2)
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    fn sq(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(i: i64) -> Self {
        i as f64
    }

    fn from_float(x: f64) -> Option<Self> {
        Some(x)
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn from_big(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn try_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_int(i: i64) -> Self {
        i as f32
    }

    fn from_float(x: f64) -> Option<Self> {
        Some(x as f32)
    }

    fn as_f64(&self) -> f64 {
        *self as f64
    }

    fn from_big(r: &BigRational) -> Self {
        ToPrimitive::to_f32(r).unwrap_or(f32::NAN)
    }

    fn try_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f32::sqrt(*self))
    }

    fn is_negligible(&self, scale: &Self) -> bool {
        self.abs() <= 1e-5 * scale.abs().max(1.0)
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-5 * self.abs().max(other.abs()).max(1.0)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(i: i64) -> Self {
        BigRational::from_integer(BigInt::from(i))
    }

    fn from_float(x: f64) -> Option<Self> {
        BigRational::from_f64(x)
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_big(r: &BigRational) -> Self {
        r.clone()
    }

    fn try_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
    }
}

/// Parses "p/q", an integer, or a decimal literal into a scalar.
///
/// Decimals are read exactly (`0.1` is `1/10`) before conversion.
pub fn parse_scalar<T: Scalar>(text: &str) -> Option<T> {
    parse_rational(text).map(|r| T::from_big(&r))
}

/// Parses "p/q", an integer, or a decimal literal exactly.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::parse_bytes(p.trim().as_bytes(), 10)?;
        let q = BigInt::parse_bytes(q.trim().as_bytes(), 10)?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    parse_decimal(t)
}

/// Exact rational value of a decimal literal such as `-12.375` or `3e-2`.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let t = text.trim();
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches(['-', '+']);
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num = BigInt::parse_bytes(digits.as_bytes(), 10).unwrap_or_else(BigInt::zero);
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Some(r)
}

/// Formats a rational as "p/q" (or "p" for integers).
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BigRational;

    #[test]
    fn rational_sqrt_only_for_squares() {
        assert_eq!(Q::from_ratio(9, 4).try_sqrt(), Some(Q::from_ratio(3, 2)));
        assert_eq!(Q::from_int(2).try_sqrt(), None);
        assert_eq!(Q::from_int(-4).try_sqrt(), None);
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_decimal("0.1"), Some(Q::from_ratio(1, 10)));
        assert_eq!(parse_decimal("-12.375"), Some(Q::from_ratio(-99, 8)));
        assert_eq!(parse_decimal("3e-2"), Some(Q::from_ratio(3, 100)));
        assert_eq!(parse_decimal("abc"), None);
        assert_eq!(parse_scalar::<Q>("3/4"), Some(Q::from_ratio(3, 4)));
        assert_eq!(parse_scalar::<f64>("0.25"), Some(0.25));
    }

    #[test]
    fn float_tolerance() {
        assert!(1.0f64.approx_eq(&(1.0 + 1e-12)));
        assert!(!1.0f64.approx_eq(&1.001));
        assert!(1e-12f64.is_negligible(&1.0));
    }
}
