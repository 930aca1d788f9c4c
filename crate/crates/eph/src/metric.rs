//! Radii, distances, lengths from centres and foci, conformality and
//! perpendicularity.
//!
//! Points are `(u, v)` pairs. Every length is reported squared; signs are
//! meaningful (hyperbolic and mixed signatures produce negative squares).

use crate::cycles::{det_cycle, Cycle, CycleContext};
use crate::error::{EphError, Result};
use crate::moebius::{moebius_apply, ExtendedPoint, SL2};
use crate::relations::Branch;
use crate::scalar::Scalar;
use crate::sign::Sign;

type Pt<T> = (T, T);

/// Which length a measurement uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthKind {
    /// Extremal σ̆-diameter of σ-cycles through both points.
    Distance,
    /// σ̆-radius of the σ-cycle with ς-centre at the first point.
    FromCentre(Sign),
    /// σ̆-radius of the σ-cycle with ς-focus at the first point.
    FromFocus(Sign, Branch),
}

/// Squared σ̆-radius det/k².
pub fn radius_sq<T: Scalar>(c: &Cycle<T>, ctx: &CycleContext) -> Result<T> {
    if c.k.is_zero() {
        return Err(EphError::FlatCycle);
    }
    let unit = CycleContext { s: Sign::Plus, ..*ctx };
    Ok(det_cycle(c, &unit) / c.k.sq())
}

fn quad<T: Scalar>(du: &T, dv: &T, sigma: Sign) -> T {
    du.sq() - sigma.as_scalar::<T>() * dv.sq()
}

/// Squared (σ, σ̆)-distance.
///
/// Elliptic and hyperbolic point spaces use the extremal-diameter closed form,
/// the parabolic point space uses (u − u′)².
pub fn distance_sq<T: Scalar>(p1: &Pt<T>, p2: &Pt<T>, sigma: Sign, sigma_breve: Sign) -> Result<T> {
    let du = p1.0.clone() - p2.0.clone();
    let dv = p1.1.clone() - p2.1.clone();
    if sigma == Sign::Zero {
        return Ok(du.sq());
    }
    let sb: T = sigma_breve.as_scalar();
    let ss: T = (sigma.times(sigma_breve)).as_scalar();
    let q = quad(&du, &dv, sigma);
    let den = du.sq() * sb.clone() - dv.sq();
    if den.is_negligible(&(du.sq() + dv.sq())) {
        return Err(EphError::DegenerateDenominator);
    }
    let four = T::from_int(4);
    let num = sb * q.clone() + four * (T::one() - ss) * p1.1.clone() * p2.1.clone();
    Ok(num / den * q)
}

/// Critical point l₀ of the diameter over the family of cycles through both points.
pub fn critical_point<T: Scalar>(p1: &Pt<T>, p2: &Pt<T>, sigma: Sign, sigma_breve: Sign) -> Result<T> {
    let (u, v) = p1;
    let (u1, v1) = p2;
    let sb: T = sigma_breve.as_scalar();
    let ss: T = sigma.times(sigma_breve).as_scalar();
    let du = u1.clone() - u.clone();
    let den = du.sq() * sb - (v.clone() - v1.clone()).sq();
    if den.is_zero() {
        return Err(EphError::DegenerateDenominator);
    }
    let corr = (ss - T::one()) * du * (v.sq() - v1.sq()) / den;
    Ok((u1.clone() + u.clone() + corr) * T::half())
}

/// Result of the brute-force distance search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceExtremum {
    /// Extremal squared diameter.
    pub value: f64,
    /// Parameter of the extremal cycle: l, or n when v = v′.
    pub at: f64,
}

/// Squared σ̆-diameter of the k = 1 σ-cycle through both points with the given l.
fn diameter_sq_at_l(p1: (f64, f64), p2: (f64, f64), sigma: f64, sb: f64, l: f64) -> f64 {
    let ((u, v), (u1, v1)) = (p1, p2);
    let n = ((u * u - u1 * u1) - sigma * (v * v - v1 * v1) - 2.0 * l * (u - u1)) / (2.0 * (v - v1));
    let m = -(u * u - sigma * v * v) + 2.0 * l * u + 2.0 * n * v;
    4.0 * (l * l - sb * n * n - m)
}

/// Same, for v = v′ where l is pinned and n parametrizes the family.
fn diameter_sq_at_n(p1: (f64, f64), p2: (f64, f64), sigma: f64, sb: f64, n: f64) -> f64 {
    let ((u, v), (u1, _)) = (p1, p2);
    let l = (u + u1) / 2.0;
    let m = -(u * u - sigma * v * v) + 2.0 * l * u + 2.0 * n * v;
    4.0 * (l * l - sb * n * n - m)
}

fn golden<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, maximize: bool) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let key = |x: f64| if maximize { -f(x) } else { f(x) };
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (key(c), key(d));
    while (b - a).abs() > 1e-10 * (1.0 + a.abs().max(b.abs())) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = key(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = key(d);
        }
    }
    (a + b) / 2.0
}

/// Brute-force extremum of the σ̆-diameter over σ-cycles through both points.
///
/// A 4096-point grid over [l̄ − R, l̄ + R] with R = 10(1 + |u| + |u′|) is
/// refined by golden-section search. In the parabolic point space the
/// extremum sits at the boundary l = (u + u′)/2 where the family flips.
pub fn distance_extremum_oracle(p1: (f64, f64), p2: (f64, f64), sigma: Sign, sigma_breve: Sign) -> DistanceExtremum {
    let s = sigma.value() as f64;
    let sb = sigma_breve.value() as f64;
    let mid = (p1.0 + p2.0) / 2.0;
    if sigma == Sign::Zero {
        // n → 0 at the boundary; the limit cycle is the pair of verticals through both points
        let du = p1.0 - p2.0;
        return DistanceExtremum { value: du * du, at: mid };
    }
    let flat = p1.1 == p2.1;
    let f = |x: f64| {
        if flat {
            diameter_sq_at_n(p1, p2, s, sb, x)
        } else {
            diameter_sq_at_l(p1, p2, s, sb, x)
        }
    };
    let centre = if flat { 0.0 } else { mid };
    let r = 10.0 * (1.0 + p1.0.abs() + p2.0.abs());
    const N: usize = 4096;
    let step = 2.0 * r / (N - 1) as f64;
    let xs: Vec<f64> = (0..N).map(|i| centre - r + step * i as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let curvature = ys[N - 1] - 2.0 * ys[N / 2] + ys[0];
    let maximize = curvature < 0.0;
    let mut best = 0;
    for i in 1..N {
        let better = if maximize { ys[i] > ys[best] } else { ys[i] < ys[best] };
        if better {
            best = i;
        }
    }
    let lo = xs[best.saturating_sub(1)];
    let hi = xs[(best + 1).min(N - 1)];
    let mut at = golden(&f, lo, hi, maximize);
    // the family is quadratic in its parameter, so one difference-quotient Newton step lands on it
    let h = 1e-3 * (1.0 + at.abs());
    let (fp, f0, fm) = (f(at + h), f(at), f(at - h));
    let bend = fp - 2.0 * f0 + fm;
    if bend != 0.0 {
        at -= h * (fp - fm) / (2.0 * bend);
    }
    DistanceExtremum { value: f(at), at }
}

/// Squared σ̆-length from the ς-centre at p1 to p2.
///
/// A ς = 0 centre leaves n free, so the cycle is not determined and the
/// length is rejected in every point space.
pub fn length_from_centre_sq<T: Scalar>(p1: &Pt<T>, p2: &Pt<T>, sigma: Sign, sigma_breve: Sign, varsigma: Sign) -> Result<T> {
    if varsigma == Sign::Zero {
        return Err(EphError::UndefinedParabolicCentreLength);
    }
    let (u, v) = p1;
    let (u1, v1) = p2;
    let s: T = sigma.as_scalar();
    let sb: T = sigma_breve.as_scalar();
    let vs: T = varsigma.as_scalar();
    Ok((u.clone() - u1.clone()).sq() - s * v1.sq() + T::two() * vs * v.clone() * v1.clone() - sb * v.sq())
}

/// The σ-cycle with ς-centre p1 through p2, k = 1.
pub fn centre_cycle<T: Scalar>(p1: &Pt<T>, p2: &Pt<T>, sigma: Sign, varsigma: Sign) -> Result<Cycle<T>> {
    if varsigma == Sign::Zero {
        return Err(EphError::UndefinedParabolicCentreLength);
    }
    let (u, v) = p1;
    let (u1, v1) = p2;
    let s: T = sigma.as_scalar();
    let vs: T = varsigma.as_scalar();
    let n = -vs * v.clone();
    let m = -(u1.sq() - s * v1.sq()) + T::two() * u.clone() * u1.clone() + T::two() * n.clone() * v1.clone();
    Cycle::new(T::one(), u.clone(), n, m)
}

/// Focal length p of the σ-cycle with ς-focus p1 through p2.
pub fn focal_parameter<T: Scalar>(p1: &Pt<T>, p2: &Pt<T>, sigma: Sign, varsigma: Sign, branch: Branch) -> Result<T> {
    let (u, v) = p1;
    let (u1, v1) = p2;
    let s: T = sigma.as_scalar();
    let dv = v1.clone() - v.clone();
    let du2 = (u1.clone() - u.clone()).sq();
    if varsigma == Sign::Zero {
        if dv.is_zero() {
            return Err(EphError::CoincidentOrdinates);
        }
        return Ok((du2 - s * v1.sq()) / (T::two() * dv));
    }
    let vs: T = varsigma.as_scalar();
    let rad = vs.clone() * du2 + dv.sq() - s * vs.clone() * v1.sq();
    if rad.is_negative() {
        return Err(EphError::NegativeRadicand);
    }
    let root = rad.try_sqrt().ok_or(EphError::IrrationalRoot)?;
    Ok(vs * (-dv + branch.sign::<T>() * root))
}

/// Squared σ̆-length from the ς-focus at p1 to p2, with the focal length p.
pub fn length_from_focus_sq<T: Scalar>(
    p1: &Pt<T>,
    p2: &Pt<T>,
    sigma: Sign,
    sigma_breve: Sign,
    varsigma: Sign,
    branch: Branch,
) -> Result<(T, T)> {
    let p = focal_parameter(p1, p2, sigma, varsigma, branch)?;
    let coef: T = varsigma.as_scalar::<T>() - sigma_breve.as_scalar::<T>();
    let len = coef * p.sq() - T::two() * p1.1.clone() * p.clone();
    Ok((len, p))
}

/// The σ-cycle (1, u, p, m) with ς-focus p1 through p2.
pub fn focal_cycle<T: Scalar>(p1: &Pt<T>, p2: &Pt<T>, sigma: Sign, varsigma: Sign, branch: Branch) -> Result<Cycle<T>> {
    let p = focal_parameter(p1, p2, sigma, varsigma, branch)?;
    let (u, _) = p1;
    let (u1, v1) = p2;
    let s: T = sigma.as_scalar();
    let m = T::two() * p.clone() * v1.clone() - u1.sq() + T::two() * u.clone() * u1.clone() + s * v1.sq();
    Cycle::new(T::one(), u.clone(), p, m)
}

/// Squared length of the given kind.
pub fn length_sq<T: Scalar>(kind: LengthKind, p1: &Pt<T>, p2: &Pt<T>, sigma: Sign, sigma_breve: Sign) -> Result<T> {
    match kind {
        LengthKind::Distance => distance_sq(p1, p2, sigma, sigma_breve),
        LengthKind::FromCentre(vs) => length_from_centre_sq(p1, p2, sigma, sigma_breve, vs),
        LengthKind::FromFocus(vs, br) => length_from_focus_sq(p1, p2, sigma, sigma_breve, vs, br).map(|r| r.0),
    }
}

fn apply<T: Scalar>(g: &SL2<T>, p: &Pt<T>, sigma: Sign) -> Result<Pt<T>> {
    moebius_apply(g, &ExtendedPoint::finite(p.0.clone(), p.1.clone()), sigma)
        .as_finite()
        .ok_or(EphError::ZeroDivisor)
}

/// l²(g·y, g·(y + t·y′)) / l²(y, y + t·y′).
pub fn conformal_ratio_sq<T: Scalar>(
    kind: LengthKind,
    g: &SL2<T>,
    y: &Pt<T>,
    dir: &Pt<T>,
    t: &T,
    sigma: Sign,
    sigma_breve: Sign,
) -> Result<T> {
    if t.is_zero() {
        return Err(EphError::ZeroParameter);
    }
    let y2 = (y.0.clone() + t.clone() * dir.0.clone(), y.1.clone() + t.clone() * dir.1.clone());
    let before = length_sq(kind, y, &y2, sigma, sigma_breve)?;
    let after = length_sq(kind, &apply(g, y, sigma)?, &apply(g, &y2, sigma)?, sigma, sigma_breve)?;
    if before.is_zero() {
        return Err(EphError::DegenerateDenominator);
    }
    Ok(after / before)
}

/// Ratio of lengths d(g·y, g·(y + t·y′)) / d(y, y + t·y′).
pub fn conformal_ratio(
    kind: LengthKind,
    g: &SL2<f64>,
    y: (f64, f64),
    dir: (f64, f64),
    t: f64,
    sigma: Sign,
    sigma_breve: Sign,
) -> Result<f64> {
    conformal_ratio_sq(kind, g, &y, &dir, &t, sigma, sigma_breve).map(|r| r.abs().sqrt())
}

/// Richardson extrapolation to h = 0 of samples at h, h/2, h/4, …
fn richardson(samples: &[f64]) -> f64 {
    let mut col = samples.to_vec();
    let mut pow = 2.0;
    while col.len() > 1 {
        col = col.windows(2).map(|w| (pow * w[1] - w[0]) / (pow - 1.0)).collect();
        pow *= 2.0;
    }
    col[0]
}

/// Limit t → 0 of [`conformal_ratio`], by extrapolating t = 10⁻², 10⁻²/2, …
pub fn conformal_limit(kind: LengthKind, g: &SL2<f64>, y: (f64, f64), dir: (f64, f64), sigma: Sign, sigma_breve: Sign) -> Result<f64> {
    let mut samples = Vec::new();
    // step relative to the distance from the singular set of g
    let w = g.c * y.0 + g.d;
    let m = (w * w - sigma.as_scalar::<f64>() * (g.c * y.1).powi(2)).abs().sqrt();
    let mut t = 1e-2 * (m / g.c.abs().max(1e-300)).min(1.0);
    for _ in 0..5 {
        samples.push(conformal_ratio_sq(kind, g, &y, &dir, &t, sigma, sigma_breve)?);
        t /= 2.0;
    }
    Ok(richardson(&samples).abs().sqrt())
}

/// Eight unit directions, none horizontal or vertical.
pub fn probe_directions() -> [(f64, f64); 8] {
    std::array::from_fn(|k| {
        let a = 0.3 + k as f64 * std::f64::consts::FRAC_PI_4;
        (a.cos(), a.sin())
    })
}

/// Limits of [`conformal_ratio`] over several directions.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionSpread {
    pub limits: Vec<f64>,
    /// Directions where the length or its image is not defined.
    pub undefined: usize,
}

impl DirectionSpread {
    /// (max − min) / max |limit| over the defined directions.
    pub fn relative_spread(&self) -> Option<f64> {
        if self.limits.len() < 2 {
            return None;
        }
        let lo = self.limits.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = self.limits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let scale = self.limits.iter().map(|x| x.abs()).fold(0.0, f64::max).max(1e-300);
        Some((hi - lo) / scale)
    }
}

pub fn direction_spread(
    kind: LengthKind,
    g: &SL2<f64>,
    y: (f64, f64),
    dirs: &[(f64, f64)],
    sigma: Sign,
    sigma_breve: Sign,
) -> DirectionSpread {
    let mut limits = Vec::new();
    let mut undefined = 0;
    for d in dirs {
        match conformal_limit(kind, g, y, *d, sigma, sigma_breve) {
            Ok(x) if x.is_finite() => limits.push(x),
            _ => undefined += 1,
        }
    }
    DirectionSpread { limits, undefined }
}

/// Ratio l_f(g·y, g·y′) / l_f(y, y′) for σ = ς = 0 at a far point y′ = (u′, v′).
pub fn parabolic_focus_ratio(g: &SL2<f64>, y: (f64, f64), far: (f64, f64), sigma_breve: Sign) -> Result<f64> {
    let kind = LengthKind::FromFocus(Sign::Zero, Branch::Plus);
    let before = length_sq(kind, &y, &far, Sign::Zero, sigma_breve)?;
    let after = length_sq(kind, &apply(g, &y, Sign::Zero)?, &apply(g, &far, Sign::Zero)?, Sign::Zero, sigma_breve)?;
    Ok((after / before).abs().sqrt())
}

/// Vertical limit v′ → ∞ of [`parabolic_focus_ratio`], extrapolated from v′ and 2v′.
pub fn parabolic_focus_limit(g: &SL2<f64>, y: (f64, f64), u_far: f64, v_far: f64, sigma_breve: Sign) -> Result<f64> {
    let r1 = parabolic_focus_ratio(g, y, (u_far, v_far), sigma_breve)?;
    let r2 = parabolic_focus_ratio(g, y, (u_far, 2.0 * v_far), sigma_breve)?;
    Ok(2.0 * r2 - r1)
}

/// 1/(cu + d)².
pub fn parabolic_focus_factor<T: Scalar>(g: &SL2<T>, u: &T) -> T {
    T::one() / (g.c.clone() * u.clone() + g.d.clone()).sq()
}

/// Ratio of the parabolic focal lengths p of y → y + t·dir and its image.
pub fn focal_length_ratio(g: &SL2<f64>, y: (f64, f64), dir: (f64, f64), t: f64, sigma: Sign) -> Result<f64> {
    let y2 = (y.0 + t * dir.0, y.1 + t * dir.1);
    let p = |a: &Pt<f64>, b: &Pt<f64>| focal_parameter(a, b, sigma, Sign::Zero, Branch::Plus);
    let before = p(&y, &y2)?;
    let after = p(&apply(g, &y, sigma)?, &apply(g, &y2, sigma)?)?;
    Ok(after / before)
}

/// Numeric t → 0 limit of [`focal_length_ratio`] along `dir`.
pub fn direction_dependent_limit(g: &SL2<f64>, y: (f64, f64), dir: (f64, f64), sigma: Sign) -> Result<f64> {
    if dir.1 == 0.0 {
        return Err(EphError::CoincidentOrdinates);
    }
    let mut samples = Vec::new();
    let mut t = 1e-3;
    for _ in 0..5 {
        samples.push(focal_length_ratio(g, y, dir, t, sigma)?);
        t /= 2.0;
    }
    Ok(richardson(&samples))
}

/// 1/((d + cu₀)² + σc²v₀² − 2Kcv₀(d + cu₀)) with K = u/v of the direction.
pub fn direction_dependent_factor<T: Scalar>(g: &SL2<T>, y: &Pt<T>, dir: &Pt<T>, sigma: Sign) -> Result<T> {
    if dir.1.is_zero() {
        return Err(EphError::CoincidentOrdinates);
    }
    let k = dir.0.clone() / dir.1.clone();
    let q = g.d.clone() + g.c.clone() * y.0.clone();
    let s: T = sigma.as_scalar();
    let den = q.sq() + s * g.c.sq() * y.1.sq() - T::two() * k * g.c.clone() * y.1.clone() * q;
    if den.is_zero() {
        return Err(EphError::DegenerateDenominator);
    }
    Ok(T::one() / den)
}

/// Direction CD along which the length from A = p1 to B = p2 is extremal.
pub fn perpendicular_direction<T: Scalar>(
    kind: LengthKind,
    p1: &Pt<T>,
    p2: &Pt<T>,
    sigma: Sign,
    sigma_breve: Sign,
) -> Result<Pt<T>> {
    let (u, v) = p1;
    let (u1, v1) = p2;
    if u == u1 && v == v1 {
        return Err(EphError::Invalid("coincident points"));
    }
    let s: T = sigma.as_scalar();
    let du = u.clone() - u1.clone();
    let dv = v.clone() - v1.clone();
    match kind {
        LengthKind::Distance if sigma == Sign::Zero => Ok((T::zero(), T::one())),
        LengthKind::Distance => {
            let sb: T = sigma_breve.as_scalar();
            let ss: T = sigma.times(sigma_breve).as_scalar();
            let x = s * dv.clone() * dv.sq() - du.sq() * (v.clone() + v1.clone() * (T::one() - T::two() * ss.clone()));
            let y = sb * du.clone() * du.sq()
                - du.clone() * dv * (-T::two() * v1.clone() + (v.clone() + v1.clone()) * ss);
            Ok((x, -y))
        }
        LengthKind::FromCentre(vs) => {
            if vs == Sign::Zero {
                return Err(EphError::UndefinedParabolicCentreLength);
            }
            Ok((s * v1.clone() - vs.as_scalar::<T>() * v.clone(), -du))
        }
        LengthKind::FromFocus(vs, br) => {
            let p = focal_parameter(p1, p2, sigma, vs, br)?;
            Ok((s * v1.clone() + p, -du))
        }
    }
}

/// Numeric test that ε ↦ l²(A, B + ε·CD) is extremal at ε = 0.
pub fn is_perpendicular(
    kind: LengthKind,
    a: (f64, f64),
    b: (f64, f64),
    cd: (f64, f64),
    sigma: Sign,
    sigma_breve: Sign,
) -> bool {
    let norm = cd.0.hypot(cd.1);
    if norm == 0.0 {
        return false;
    }
    let dir = (cd.0 / norm, cd.1 / norm);
    let f = |e: f64| length_sq(kind, &a, &(b.0 + e * dir.0, b.1 + e * dir.1), sigma, sigma_breve);
    let (Ok(f0), Ok(fp), Ok(fm)) = (f(0.0), f(1e-6), f(-1e-6)) else {
        return false;
    };
    let scale = f0.abs().max(1.0);
    let slope = (fp - fm) / 2e-6 / scale;
    let h = 1e-3;
    let (Ok(gp), Ok(gm)) = (f(h), f(-h)) else {
        return false;
    };
    let bend = (gp - 2.0 * f0 + gm) / (h * h) / scale;
    slope.abs() <= 1e-7 && bend.abs() > 1e-6
}

/// Length ∫ √|du² − σdv²| / v along a polyline.
///
/// Each segment is integrated in closed form; along a straight segment the
/// numerator is constant and 1/v integrates to a logarithm.
pub fn curve_length(path: &[(f64, f64)], sigma: Sign) -> Result<f64> {
    if path.iter().any(|p| p.1 <= 0.0) {
        return Err(EphError::NonPositiveV);
    }
    let s = sigma.value() as f64;
    let mut total = 0.0;
    for w in path.windows(2) {
        let (du, dv) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        let element = (du * du - s * dv * dv).abs().sqrt();
        let (v0, v1) = (w[0].1, w[1].1);
        let inv = if ((v1 - v0) / v0).abs() < 1e-8 {
            2.0 / (v0 + v1)
        } else {
            (v1 / v0).ln() / (v1 - v0)
        };
        total += element * inv;
    }
    Ok(total)
}
