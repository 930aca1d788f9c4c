//! SL(2,R) and its Möbius action on the plane of signature σ.

use std::fmt;


use crate::clifford::{CliffMatrix, CliffNum};
use crate::cycles::{proportional, sl2_transform_in, zero_radius_cycle, Cycle};
use crate::error::{EphError, Result};
use crate::scalar::Scalar;
use crate::sign::Sign;

/// Real 2×2 matrix with unit determinant.
#[derive(Clone, Debug, PartialEq)]
pub struct SL2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> SL2<T> {
    /// Checks ad − bc = 1 (exactly, or within 1e-12 for floats).
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        let ok = if T::EXACT {
            det.is_one()
        } else {
            (det.as_f64() - 1.0).abs() <= 1e-12 * 4.0f64.max(a.as_f64().abs().max(d.as_f64().abs()).powi(2))
        };
        if ok {
            Ok(SL2 { a, b, c, d })
        } else {
            Err(EphError::NotUnimodular)
        }
    }

    pub fn new_unchecked(a: T, b: T, c: T, d: T) -> Self {
        SL2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        SL2::new_unchecked(T::one(), T::zero(), T::zero(), T::one())
    }

    /// Shift by ν: [[1, ν], [0, 1]].
    pub fn shift(nu: T) -> Self {
        SL2::new_unchecked(T::one(), nu, T::zero(), T::one())
    }

    /// diag(α⁻¹, α): the dilation w ↦ w/α².
    pub fn dilation(alpha: T) -> Result<Self> {
        if alpha.is_zero() {
            return Err(EphError::ZeroParameter);
        }
        Ok(SL2::new_unchecked(T::one() / alpha.clone(), T::zero(), T::zero(), alpha))
    }

    /// [[1, 0], [ν, 1]], the parabolic fix group of e1.
    pub fn lower_shift(nu: T) -> Self {
        SL2::new_unchecked(T::one(), T::zero(), nu, T::one())
    }

    /// Rotation with rational half-angle tangent τ: cos = (1−τ²)/(1+τ²), sin = 2τ/(1+τ²).
    pub fn rotation_rational(tau: T) -> Self {
        let den = T::one() + tau.sq();
        let c = (T::one() - tau.sq()) / den.clone();
        let s = T::two() * tau / den;
        SL2::new_unchecked(c.clone(), s.clone(), -s, c)
    }

    /// Hyperbolic rotation [[cosh, sinh], [sinh, cosh]] with rational tanh(τ/2) = t, |t| < 1.
    pub fn boost_rational(t: T) -> Result<Self> {
        let den = T::one() - t.sq();
        if !den.is_positive() {
            return Err(EphError::Invalid("|t| must be below 1"));
        }
        let ch = (T::one() + t.sq()) / den.clone();
        let sh = T::two() * t / den;
        Ok(SL2::new_unchecked(ch.clone(), sh.clone(), sh, ch))
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn mul(&self, o: &Self) -> Self {
        SL2::new_unchecked(
            self.a.clone() * o.a.clone() + self.b.clone() * o.c.clone(),
            self.a.clone() * o.b.clone() + self.b.clone() * o.d.clone(),
            self.c.clone() * o.a.clone() + self.d.clone() * o.c.clone(),
            self.c.clone() * o.b.clone() + self.d.clone() * o.d.clone(),
        )
    }

    pub fn inverse(&self) -> Self {
        SL2::new_unchecked(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    /// Clifford form [[a, b·e0], [−c·e0, d]] over Cl(σ).
    pub fn clifford(&self, sigma: Sign) -> CliffMatrix<T> {
        let e0 = CliffNum::<T>::e0(sigma);
        CliffMatrix::new(
            CliffNum::scalar(self.a.clone(), sigma),
            e0.scale(&self.b),
            e0.scale(&-self.c.clone()),
            CliffNum::scalar(self.d.clone(), sigma),
        )
    }

    pub fn approx_eq(&self, o: &Self) -> bool {
        self.a.approx_eq(&o.a) && self.b.approx_eq(&o.b) && self.c.approx_eq(&o.c) && self.d.approx_eq(&o.d)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SL2<U> {
        SL2::new_unchecked(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }
}

impl<T: Scalar> fmt::Display for SL2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// A point of the plane or of its compactification.
///
/// Ideal points are stored as the projective triple (l : n : m) of the
/// flat zero-radius cycle (0, l, n, m) they correspond to; the first
/// nonzero coordinate is scaled to 1.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtendedPoint<T> {
    Finite { u: T, v: T },
    Ideal { l: T, n: T, m: T },
}

impl<T: Scalar> ExtendedPoint<T> {
    pub fn finite(u: T, v: T) -> Self {
        ExtendedPoint::Finite { u, v }
    }

    /// Normalised ideal point; `None` for the zero triple.
    pub fn ideal(l: T, n: T, m: T) -> Option<Self> {
        let scale = [&l, &n, &m].iter().map(|x| x.abs()).fold(T::zero(), |a, x| if x > a { x } else { a });
        let lead = [&l, &n, &m].into_iter().find(|x| !x.is_negligible(&scale) && !x.is_zero())?.clone();
        Some(ExtendedPoint::Ideal { l: l / lead.clone(), n: n / lead.clone(), m: m / lead })
    }

    /// The point ∞ = (0 : 0 : 1), image of the origin under inversion in the unit circle.
    pub fn infinity() -> Self {
        ExtendedPoint::Ideal { l: T::zero(), n: T::zero(), m: T::one() }
    }

    pub fn as_finite(&self) -> Option<(T, T)> {
        match self {
            ExtendedPoint::Finite { u, v } => Some((u.clone(), v.clone())),
            ExtendedPoint::Ideal { .. } => None,
        }
    }

    pub fn is_ideal(&self) -> bool {
        matches!(self, ExtendedPoint::Ideal { .. })
    }

    pub fn approx_eq(&self, o: &Self) -> bool {
        match (self, o) {
            (ExtendedPoint::Finite { u, v }, ExtendedPoint::Finite { u: u2, v: v2 }) => u.approx_eq(u2) && v.approx_eq(v2),
            (ExtendedPoint::Ideal { l, n, m }, ExtendedPoint::Ideal { l: l2, n: n2, m: m2 }) => proportional(
                &[l.clone(), n.clone(), m.clone()],
                &[l2.clone(), n2.clone(), m2.clone()],
            ),
            _ => false,
        }
    }

    /// The cycle encoding this point in cycle space of signature σ̆.
    pub fn cycle(&self, sigma_breve: Sign) -> Cycle<T> {
        match self {
            ExtendedPoint::Finite { u, v } => zero_radius_cycle((u.clone(), v.clone()), sigma_breve),
            ExtendedPoint::Ideal { l, n, m } => Cycle::new_unchecked(T::zero(), l.clone(), n.clone(), m.clone()),
        }
    }

    /// Inverse of [`ExtendedPoint::cycle`]: the point a zero-radius cycle stands for.
    pub fn from_cycle(c: &Cycle<T>) -> Self {
        if c.k.is_zero() {
            ExtendedPoint::ideal(c.l.clone(), c.n.clone(), c.m.clone()).unwrap_or_else(Self::infinity)
        } else {
            ExtendedPoint::finite(c.l.clone() / c.k.clone(), c.n.clone() / c.k.clone())
        }
    }
}

impl<T: Scalar> fmt::Display for ExtendedPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedPoint::Finite { u, v } => write!(f, "({u}, {v})"),
            ExtendedPoint::Ideal { l, n, m } => write!(f, "ideal({l} : {n} : {m})"),
        }
    }
}

/// Möbius action (a·w + b·e0)(−c·e0·w + d)⁻¹ of g on a point of signature σ.
///
/// Singular denominators and ideal inputs go through conjugation of the
/// corresponding zero-radius cycle, so the action is total.
pub fn moebius_apply<T: Scalar>(g: &SL2<T>, p: &ExtendedPoint<T>, sigma: Sign) -> ExtendedPoint<T> {
    if let ExtendedPoint::Finite { u, v } = p {
        let w = CliffNum::vector(u.clone(), v.clone(), sigma);
        if let Ok(img) = g.clifford(sigma).act(&w) {
            return ExtendedPoint::finite(img.c_e0, img.c_e1);
        }
    }
    let z = p.cycle(sigma);
    let img = sl2_transform_in(&z, g, sigma, Sign::Plus).expect("s = 1 is recoverable");
    ExtendedPoint::from_cycle(&img)
}

/// Parameters of g = diag(α⁻¹, α) · [[1, ν], [0, 1]] · K(φ).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IwasawaFactors {
    pub alpha: f64,
    pub nu: f64,
    pub phi: f64,
}

impl IwasawaFactors {
    pub fn recompose(&self) -> SL2<f64> {
        let a = SL2::dilation(self.alpha).expect("alpha > 0");
        let n = SL2::shift(self.nu);
        a.mul(&n).mul(&rotation(self.phi))
    }
}

/// Iwasawa factors: α = √(c²+d²), ν = ac + bd, φ = atan2(−c, d).
///
/// φ lies in (−π, π]; the half-open range (−π/2, π/2] cannot hold with α > 0
/// once d < 0.
pub fn iwasawa<T: Scalar>(g: &SL2<T>) -> IwasawaFactors {
    let (a, b, c, d) = (g.a.as_f64(), g.b.as_f64(), g.c.as_f64(), g.d.as_f64());
    IwasawaFactors { alpha: c.hypot(d), nu: a * c + b * d, phi: (-c).atan2(d) }
}

pub fn rotation(phi: f64) -> SL2<f64> {
    let (s, c) = phi.sin_cos();
    SL2::new_unchecked(c, s, -s, c)
}

/// One-parameter subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subgroup {
    A,
    N,
    K,
    AhFix,
    NpFix,
}

/// Element of a one-parameter subgroup; A uses α = eᵗ.
pub fn subgroup_element<T: Scalar>(family: Subgroup, t: &T) -> SL2<T> {
    let x = t.as_f64();
    let f = |y: f64| T::from_float(y).expect("finite");
    match family {
        Subgroup::N => SL2::shift(t.clone()),
        Subgroup::NpFix => SL2::lower_shift(t.clone()),
        Subgroup::A => SL2::new_unchecked(f((-x).exp()), T::zero(), T::zero(), f(x.exp())),
        Subgroup::K => {
            let (s, c) = x.sin_cos();
            SL2::new_unchecked(f(c), f(s), f(-s), f(c))
        }
        Subgroup::AhFix => {
            let (ch, sh) = (x.cosh(), x.sinh());
            SL2::new_unchecked(f(ch), f(sh), f(sh), f(ch))
        }
    }
}

/// Vector-field families of the derived action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    A,
    N,
    K,
    Fix,
}

pub fn vector_field<T: Scalar>(family: Field, p: &(T, T), sigma: Sign) -> (T, T) {
    let (u, v) = p.clone();
    let s: T = sigma.as_scalar();
    match family {
        Field::A => (T::two() * u, T::two() * v),
        Field::N => (T::one(), T::zero()),
        Field::K => (T::one() + u.sq() - s * v.sq(), T::two() * u * v),
        Field::Fix => (u.sq() + s * (v.sq() - T::one()), T::two() * u * v),
    }
}

/// Splits g = h·f with h upper triangular and f in the fix group of e1.
pub fn factor_via_fix_subgroup<T: Scalar>(g: &SL2<T>, sigma: Sign) -> Result<(SL2<T>, SL2<T>)> {
    let (c, d) = (g.c.clone(), g.d.clone());
    let f = match sigma {
        // f = [[1, 0], [c/d, 1]]
        Sign::Zero => {
            if d.is_zero() {
                return Err(EphError::NotFactorable);
            }
            SL2::lower_shift(c / d)
        }
        // f = K(φ) with (cos, sin) = (d, −c)/√(c²+d²)
        Sign::Minus => {
            let r = (c.sq() + d.sq()).try_sqrt().ok_or(EphError::IrrationalRoot)?;
            let (co, si) = (d / r.clone(), -c / r);
            SL2::new_unchecked(co.clone(), si.clone(), -si, co)
        }
        // f = [[ch, sh], [sh, ch]] with (ch, sh) = (d, c)/ρ, ρ = sign(d)·√(d²−c²)
        Sign::Plus => {
            let q = d.sq() - c.sq();
            if !q.is_positive() {
                return Err(EphError::NotFactorable);
            }
            let mut r = q.try_sqrt().ok_or(EphError::IrrationalRoot)?;
            if d.is_negative() {
                r = -r;
            }
            let (ch, sh) = (d / r.clone(), c / r);
            SL2::new_unchecked(ch.clone(), sh.clone(), sh, ch)
        }
    };
    let h = g.mul(&f.inverse());
    Ok((h, f))
}

/// K-orbit through (0, t): the cycle (1, 0, (t⁻¹ − σt)/2, 1) and its curvature
/// 2t/(1 + σt²), `None` when that denominator vanishes.
pub fn k_orbit_cycle<T: Scalar>(t: &T, sigma: Sign) -> Result<(Cycle<T>, Option<T>)> {
    if t.is_zero() {
        return Err(EphError::ZeroParameter);
    }
    let s: T = sigma.as_scalar();
    let n = (T::one() / t.clone() - s.clone() * t.clone()) / T::two();
    let den = T::one() + s * t.sq();
    let curvature = (!den.is_zero()).then(|| T::two() * t.clone() / den);
    Ok((Cycle::new_unchecked(T::one(), T::zero(), n, T::one()), curvature))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn pt(u: i64, v: i64) -> ExtendedPoint<Q> {
        ExtendedPoint::finite(q(u), q(v))
    }

    #[test]
    fn shifts_and_dilations() {
        for s in Sign::ALL {
            assert_eq!(moebius_apply(&SL2::shift(q(2)), &pt(1, 1), s), pt(3, 1));
            assert_eq!(moebius_apply(&SL2::dilation(q(2)).unwrap(), &pt(4, 8), s), pt(1, 2));
        }
    }

    #[test]
    fn rotation_fixes_e1_elliptic() {
        let k = SL2::rotation_rational(Q::from_ratio(1, 3));
        assert_eq!(moebius_apply(&k, &pt(0, 1), Sign::Minus), pt(0, 1));
    }

    #[test]
    fn elliptic_pole_goes_to_infinity() {
        // -c·e0·w + d vanishes at w = (d/c)·... i.e. u = d/c on the real axis for [[0,1],[-1,0]]
        let g = SL2::new(q(0), q(1), q(-1), q(0)).unwrap();
        assert_eq!(moebius_apply(&g, &pt(0, 0), Sign::Minus), ExtendedPoint::infinity());
        assert_eq!(moebius_apply(&g, &ExtendedPoint::infinity(), Sign::Minus), pt(0, 0));
    }

    #[test]
    fn iwasawa_examples() {
        let f = iwasawa(&SL2::shift(1.0));
        assert_eq!((f.alpha, f.nu, f.phi), (1.0, 1.0, 0.0));
        let f = iwasawa(&SL2::new_unchecked(2.0, 0.0, 0.0, 0.5));
        assert_eq!((f.alpha, f.nu, f.phi), (0.5, 0.0, 0.0));
        let g = SL2::new_unchecked(0.3, -2.0, 0.8, -2.0);
        assert!(g.det().approx_eq(&1.0));
        assert!(iwasawa(&g).recompose().approx_eq(&g));
    }

    #[test]
    fn subgroup_examples() {
        assert_eq!(subgroup_element(Subgroup::N, &0.0), SL2::identity());
        let k = subgroup_element(Subgroup::K, &std::f64::consts::FRAC_PI_2);
        assert!(k.approx_eq(&SL2::new_unchecked(0.0, 1.0, -1.0, 0.0)));
        let h = subgroup_element(Subgroup::AhFix, &0.7).mul(&subgroup_element(Subgroup::AhFix, &-0.7));
        assert!(h.approx_eq(&SL2::identity()));
        let a = subgroup_element(Subgroup::A, &2f64.ln());
        assert!(a.approx_eq(&SL2::new_unchecked(0.5, 0.0, 0.0, 2.0)));
    }

    #[test]
    fn vector_field_examples() {
        assert_eq!(vector_field(Field::N, &(q(5), q(7)), Sign::Plus), (q(1), q(0)));
        assert_eq!(vector_field(Field::K, &(q(0), q(0)), Sign::Zero), (q(1), q(0)));
        assert_eq!(vector_field(Field::Fix, &(q(0), q(1)), Sign::Minus), (q(0), q(0)));
        assert_eq!(vector_field(Field::A, &(q(1), q(2)), Sign::Zero), (q(2), q(4)));
    }

    #[test]
    fn factorisation_examples() {
        let (h, f) = factor_via_fix_subgroup(&SL2::<Q>::identity(), Sign::Minus).unwrap();
        assert_eq!((h, f), (SL2::identity(), SL2::identity()));
        let k = SL2::rotation_rational(Q::from_ratio(2, 5));
        let (h, f) = factor_via_fix_subgroup(&k, Sign::Minus).unwrap();
        assert_eq!(h, SL2::identity());
        assert_eq!(f, k);
        let g = SL2::new(q(2), q(3), q(1), q(2)).unwrap();
        let (h, f) = factor_via_fix_subgroup(&g, Sign::Zero).unwrap();
        assert!(h.c.is_zero());
        assert_eq!(h.mul(&f), g);
        assert_eq!(moebius_apply(&f, &pt(0, 1), Sign::Zero), pt(0, 1));
        let flip = SL2::new(q(0), q(1), q(-1), q(0)).unwrap();
        assert_eq!(factor_via_fix_subgroup(&flip, Sign::Plus), Err(EphError::NotFactorable));
    }

    #[test]
    fn k_orbit_examples() {
        let (c, _) = k_orbit_cycle(&q(2), Sign::Minus).unwrap();
        assert_eq!(c, Cycle::new(q(1), q(0), Q::from_ratio(5, 4), q(1)).unwrap());
        assert!(c.value_at(&(q(0), q(2)), Sign::Minus).is_zero());
        assert!(c.value_at(&(q(0), Q::from_ratio(1, 2)), Sign::Minus).is_zero());
        let (c, k) = k_orbit_cycle(&q(1), Sign::Zero).unwrap();
        assert_eq!(c.n, Q::from_ratio(1, 2));
        assert_eq!(k, Some(q(2)));
        assert_eq!(k_orbit_cycle(&q(1), Sign::Minus).unwrap().1, None);
        assert!(k_orbit_cycle(&q(0), Sign::Minus).is_err());
    }
}
