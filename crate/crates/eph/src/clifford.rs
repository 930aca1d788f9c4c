//! The two-generator Clifford algebra Cl(σ): e0² = −1, e1² = σ, e0e1 = −e1e0.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use crate::error::{EphError, Result};
use crate::scalar::Scalar;
use crate::sign::Sign;

/// Element c1·1 + c_e0·e0 + c_e1·e1 + c_e01·e0e1 of Cl(σ).
#[derive(Clone, Debug, PartialEq)]
pub struct CliffNum<T> {
    pub c1: T,
    pub c_e0: T,
    pub c_e1: T,
    pub c_e01: T,
    pub sigma: Sign,
}

impl<T: Scalar> CliffNum<T> {
    pub fn new(c1: T, c_e0: T, c_e1: T, c_e01: T, sigma: Sign) -> Self {
        CliffNum { c1, c_e0, c_e1, c_e01, sigma }
    }

    pub fn scalar(x: T, sigma: Sign) -> Self {
        CliffNum::new(x, T::zero(), T::zero(), T::zero(), sigma)
    }

    pub fn zero(sigma: Sign) -> Self {
        Self::scalar(T::zero(), sigma)
    }

    pub fn one(sigma: Sign) -> Self {
        Self::scalar(T::one(), sigma)
    }

    pub fn e0(sigma: Sign) -> Self {
        CliffNum::new(T::zero(), T::one(), T::zero(), T::zero(), sigma)
    }

    pub fn e1(sigma: Sign) -> Self {
        CliffNum::new(T::zero(), T::zero(), T::one(), T::zero(), sigma)
    }

    pub fn e01(sigma: Sign) -> Self {
        CliffNum::new(T::zero(), T::zero(), T::zero(), T::one(), sigma)
    }

    /// The vector w = u·e0 + v·e1.
    pub fn vector(u: T, v: T, sigma: Sign) -> Self {
        CliffNum::new(T::zero(), u, v, T::zero(), sigma)
    }

    pub fn coeffs(&self) -> [T; 4] {
        [self.c1.clone(), self.c_e0.clone(), self.c_e1.clone(), self.c_e01.clone()]
    }

    fn from_coeffs(c: [T; 4], sigma: Sign) -> Self {
        let [a, b, c, d] = c;
        CliffNum::new(a, b, c, d, sigma)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|x| x.is_zero())
    }

    /// True when only the scalar part is nonzero.
    pub fn is_scalar(&self) -> bool {
        self.c_e0.is_zero() && self.c_e1.is_zero() && self.c_e01.is_zero()
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::from_coeffs(self.coeffs().map(|x| x * k.clone()), self.sigma)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.sigma != other.sigma {
            return Err(EphError::SignatureMismatch);
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, y: &Self) -> Self {
        let s: T = self.sigma.as_scalar();
        let [a0, a1, a2, a3] = self.coeffs();
        let [b0, b1, b2, b3] = y.coeffs();
        let c0 = a0.clone() * b0.clone() - a1.clone() * b1.clone()
            + s.clone() * a2.clone() * b2.clone()
            + s.clone() * a3.clone() * b3.clone();
        let c1 = a0.clone() * b1.clone() + a1.clone() * b0.clone() - s.clone() * a2.clone() * b3.clone()
            + s * a3.clone() * b2.clone();
        let c2 = a0.clone() * b2.clone() + a2.clone() * b0.clone() - a1.clone() * b3.clone()
            + a3.clone() * b1.clone();
        let c3 = a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1;
        CliffNum::new(c0, c1, c2, c3, self.sigma)
    }

    /// 4×4 matrix of y ↦ self·y in the basis (1, e0, e1, e01).
    pub fn left_matrix(&self) -> [[T; 4]; 4] {
        let mut m: [[T; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| T::zero()));
        let basis = [Self::one(self.sigma), Self::e0(self.sigma), Self::e1(self.sigma), Self::e01(self.sigma)];
        for (j, b) in basis.iter().enumerate() {
            let col = self.mul_unchecked(b).coeffs();
            for (i, x) in col.into_iter().enumerate() {
                m[i][j] = x;
            }
        }
        m
    }

    /// Two-sided inverse obtained by solving the left-multiplication system.
    pub fn inverse(&self) -> Result<Self> {
        let m = self.left_matrix();
        let rhs = [T::one(), T::zero(), T::zero(), T::zero()];
        let sol = solve4(m, rhs).ok_or(EphError::ZeroDivisor)?;
        let inv = Self::from_coeffs(sol, self.sigma);
        // in degenerate signature a left inverse need not be a right inverse
        let right = inv.mul_unchecked(self);
        if !right.approx_eq(&Self::one(self.sigma)) {
            return Err(EphError::ZeroDivisor);
        }
        Ok(inv)
    }

    /// self · other⁻¹
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.sigma == other.sigma
            && self.coeffs().iter().zip(other.coeffs().iter()).all(|(a, b)| a.approx_eq(b))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> CliffNum<U> {
        CliffNum::new(f(&self.c1), f(&self.c_e0), f(&self.c_e1), f(&self.c_e01), self.sigma)
    }
}

/// Gaussian elimination with partial pivoting; `None` when singular.
pub(crate) fn solve4<T: Scalar>(mut m: [[T; 4]; 4], mut b: [T; 4]) -> Option<[T; 4]> {
    let scale = m
        .iter()
        .flatten()
        .map(|x| x.abs())
        .fold(T::zero(), |acc, x| if x > acc { x } else { acc });
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| {
            m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if m[piv][col].is_negligible(&scale) {
            return None;
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..4 {
            let f = m[row][col].clone() / m[col][col].clone();
            if f.is_zero() {
                continue;
            }
            for k in col..4 {
                let t = f.clone() * m[col][k].clone();
                m[row][k] = m[row][k].clone() - t;
            }
            b[row] = b[row].clone() - f * b[col].clone();
        }
    }
    let mut x: [T; 4] = std::array::from_fn(|_| T::zero());
    for row in (0..4).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..4 {
            acc = acc - m[row][k].clone() * x[k].clone();
        }
        x[row] = acc / m[row][row].clone();
    }
    Some(x)
}

impl<T: Scalar> Add for CliffNum<T> {
    type Output = CliffNum<T>;
    fn add(self, o: Self) -> Self {
        assert_eq!(self.sigma, o.sigma, "signature mismatch");
        CliffNum::new(self.c1 + o.c1, self.c_e0 + o.c_e0, self.c_e1 + o.c_e1, self.c_e01 + o.c_e01, self.sigma)
    }
}

impl<T: Scalar> Sub for CliffNum<T> {
    type Output = CliffNum<T>;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Scalar> Neg for CliffNum<T> {
    type Output = CliffNum<T>;
    fn neg(self) -> Self {
        CliffNum::new(-self.c1, -self.c_e0, -self.c_e1, -self.c_e01, self.sigma)
    }
}

impl<T: Scalar> Mul for CliffNum<T> {
    type Output = CliffNum<T>;
    /// Panics on signature mismatch; use [`CliffNum::try_mul`] to get an error instead.
    fn mul(self, o: Self) -> Self {
        self.try_mul(&o).expect("signature mismatch")
    }
}

impl<'a, T: Scalar> Mul<&'a CliffNum<T>> for &'a CliffNum<T> {
    type Output = CliffNum<T>;
    fn mul(self, o: &CliffNum<T>) -> CliffNum<T> {
        self.try_mul(o).expect("signature mismatch")
    }
}

impl<T: Scalar> fmt::Display for CliffNum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·e0 + {}·e1 + {}·e01", self.c1, self.c_e0, self.c_e1, self.c_e01)
    }
}

/// 2×2 matrix with entries in Cl(σ).
#[derive(Clone, Debug, PartialEq)]
pub struct CliffMatrix<T> {
    pub m: [[CliffNum<T>; 2]; 2],
}

impl<T: Scalar> CliffMatrix<T> {
    pub fn new(a: CliffNum<T>, b: CliffNum<T>, c: CliffNum<T>, d: CliffNum<T>) -> Self {
        CliffMatrix { m: [[a, b], [c, d]] }
    }

    pub fn identity(sigma: Sign) -> Self {
        Self::new(CliffNum::one(sigma), CliffNum::zero(sigma), CliffNum::zero(sigma), CliffNum::one(sigma))
    }

    pub fn sigma(&self) -> Sign {
        self.m[0][0].sigma
    }

    pub fn mul(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| {
            &self.m[i][0] * &o.m[0][j] + &self.m[i][1] * &o.m[1][j]
        };
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.m[0][0].scale(k), self.m[0][1].scale(k), self.m[1][0].scale(k), self.m[1][1].scale(k))
    }

    pub fn trace(&self) -> CliffNum<T> {
        self.m[0][0].clone() + self.m[1][1].clone()
    }

    /// Linear-fractional action w ↦ (a·w + b)(c·w + d)⁻¹.
    pub fn act(&self, w: &CliffNum<T>) -> Result<CliffNum<T>> {
        let num = &self.m[0][0] * w + self.m[0][1].clone();
        let den = &self.m[1][0] * w + self.m[1][1].clone();
        num.div(&den)
    }

    pub fn approx_eq(&self, o: &Self) -> bool {
        (0..2).all(|i| (0..2).all(|j| self.m[i][j].approx_eq(&o.m[i][j])))
    }

    /// True if the two matrices agree up to a nonzero real factor.
    pub fn proportional(&self, o: &Self) -> bool {
        let a: Vec<T> = self.m.iter().flatten().flat_map(|c| c.coeffs()).collect();
        let b: Vec<T> = o.m.iter().flatten().flat_map(|c| c.coeffs()).collect();
        crate::cycles::proportional(&a, &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn generator_squares() {
        for s in Sign::ALL {
            let e0 = CliffNum::<Q>::e0(s);
            let e1 = CliffNum::<Q>::e1(s);
            assert_eq!(&e0 * &e0, CliffNum::scalar(q(-1), s));
            assert_eq!(&e1 * &e1, CliffNum::scalar(s.as_scalar(), s));
            let i = &e1 * &e0;
            assert_eq!(&i * &i, CliffNum::scalar(s.as_scalar(), s));
            assert_eq!(&e0 * &e1, -(&e1 * &e0));
        }
    }

    #[test]
    fn vector_inverse() {
        let w = CliffNum::vector(q(3), q(4), Sign::Minus);
        let inv = w.inverse().unwrap();
        assert_eq!(inv, w.scale(&Q::from_ratio(-1, 25)));
        let light = CliffNum::vector(q(1), q(1), Sign::Plus);
        assert_eq!(light.inverse(), Err(EphError::ZeroDivisor));
        assert_eq!(CliffNum::<Q>::one(Sign::Zero).inverse().unwrap(), CliffNum::one(Sign::Zero));
    }

    #[test]
    fn dual_zero_divisor() {
        // 1·0 + u·e1e0 has vanishing scalar part in the dual numbers
        let x = CliffNum::new(q(0), q(0), q(0), q(2), Sign::Zero);
        assert!(x.inverse().is_err());
    }

    #[test]
    fn parabolic_vector_square() {
        let w = CliffNum::vector(q(2), q(3), Sign::Zero);
        assert_eq!(&w * &w, CliffNum::scalar(q(-4), Sign::Zero));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = CliffNum::<Q>::e0(Sign::Minus);
        let b = CliffNum::<Q>::e0(Sign::Plus);
        assert_eq!(a.try_mul(&b), Err(EphError::SignatureMismatch));
    }
}
