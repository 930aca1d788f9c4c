//! Orthogonality, ghost cycles, inversions and focal orthogonality.

use crate::clifford::{CliffMatrix, CliffNum};
use crate::cycles::{det_cycle, fsc_matrix, fsc_matrix_with, inner, read_cycle, Cycle, CycleContext};
use crate::error::{EphError, Result};
use crate::moebius::ExtendedPoint;
use crate::scalar::Scalar;
use crate::sign::Sign;

/// Re tr(M1·M2) = 0.
pub fn orthogonal<T: Scalar>(c1: &Cycle<T>, c2: &Cycle<T>, ctx: &CycleContext) -> bool {
    let (_, re) = inner(c1, c2, ctx);
    re.is_negligible(&scale_of(&[c1, c2]))
}

/// 2σ̆s²·ñn − 2l̃l + k̃m + m̃k, the orthogonality form written through coefficients.
pub fn orthogonality_form<T: Scalar>(c1: &Cycle<T>, c2: &Cycle<T>, ctx: &CycleContext) -> T {
    let sb: T = ctx.sigma_breve.as_scalar();
    let s2: T = ctx.s.times(ctx.s).as_scalar();
    T::two() * sb * s2 * c1.n.clone() * c2.n.clone() - T::two() * c1.l.clone() * c2.l.clone()
        + c2.k.clone() * c1.m.clone()
        + c2.m.clone() * c1.k.clone()
}

fn scale_of<T: Scalar>(cs: &[&Cycle<T>]) -> T {
    let mut s = T::one();
    for c in cs {
        for x in c.coords() {
            let a = x.abs();
            if a > s {
                s = a;
            }
        }
    }
    s.clone() * s
}

/// Cycle whose χ(σ)-centre is the σ̆-centre of `c` and whose determinant
/// (s = 1) equals that of `c` at s = χ(σ̆): (k, l, χ(σ)·σ̆·n, m).
pub fn ghost_cycle<T: Scalar>(c: &Cycle<T>, ctx: &CycleContext) -> Result<Cycle<T>> {
    if c.k.is_zero() {
        return Err(EphError::GhostUndefined("k = 0"));
    }
    let f: T = ctx.sigma.chi().times(ctx.sigma_breve).as_scalar();
    Cycle::new(c.k.clone(), c.l.clone(), f * c.n.clone(), c.m.clone())
}

/// ((l·e0 + n·e1)·w + m)·(k·w − (l·e0 + n·e1))⁻¹ in Cl(σ).
///
/// Singular denominators and ideal inputs are handled by conjugating the
/// zero-radius cycle of the point with the matrix of `c`.
pub fn cycle_moebius_point<T: Scalar>(c: &Cycle<T>, p: &ExtendedPoint<T>, sigma: Sign) -> ExtendedPoint<T> {
    if let ExtendedPoint::Finite { u, v } = p {
        let a = CliffNum::vector(c.l.clone(), c.n.clone(), sigma);
        let mat = CliffMatrix::new(
            a.clone(),
            CliffNum::scalar(c.m.clone(), sigma),
            CliffNum::scalar(c.k.clone(), sigma),
            -a,
        );
        let w = CliffNum::vector(u.clone(), v.clone(), sigma);
        if let Ok(img) = mat.act(&w) {
            return ExtendedPoint::finite(img.c_e0, img.c_e1);
        }
    }
    let z = p.cycle(sigma);
    let m = fsc_matrix_with(c, sigma, Sign::Plus);
    let conj = m.mul(&fsc_matrix_with(&z, sigma, Sign::Plus)).mul(&m);
    match read_cycle(&conj, Sign::Plus) {
        Ok(img) => ExtendedPoint::from_cycle(&img),
        Err(_) => ExtendedPoint::infinity(),
    }
}

/// Second intersection of all cycles through p that are σ̆-orthogonal to `c`.
///
/// This is [`cycle_moebius_point`] for the cycle (k, l, −σ̆·n, m); for σ̆ = −1
/// that is `c` itself.
pub fn inversion_point<T: Scalar>(c: &Cycle<T>, p: &ExtendedPoint<T>, ctx: &CycleContext) -> ExtendedPoint<T> {
    let f: T = ctx.sigma_breve.neg().as_scalar();
    let twin = Cycle::new_unchecked(c.k.clone(), c.l.clone(), f * c.n.clone(), c.m.clone());
    cycle_moebius_point(&twin, p, ctx.sigma)
}

/// M_mirror·M·M_mirror read back as a cycle, the mirror built with multiplier
/// `s_mirror` and `c` (and the result) with `s`.
pub fn conjugate_with<T: Scalar>(
    mirror: &Cycle<T>,
    s_mirror: Sign,
    c: &Cycle<T>,
    s: Sign,
    sigma_breve: Sign,
) -> Result<Cycle<T>> {
    let mm = fsc_matrix_with(mirror, sigma_breve, s_mirror);
    let prod = mm.mul(&fsc_matrix_with(c, sigma_breve, s)).mul(&mm);
    read_cycle(&prod, s)
}

/// Reflection of `c` in `mirror`: the cycle of M_mirror·M·M_mirror.
pub fn cycle_conjugate<T: Scalar>(mirror: &Cycle<T>, c: &Cycle<T>, ctx: &CycleContext) -> Result<Cycle<T>> {
    conjugate_with(mirror, ctx.s, c, ctx.s, ctx.sigma_breve)
}

/// Which square root the auxiliary cycle uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign<T: Scalar>(self) -> T {
        match self {
            Branch::Plus => T::one(),
            Branch::Minus => -T::one(),
        }
    }
}

/// C̃ = (k, l, n ± √(−σ̆·det C), m) with det taken at s = 1.
///
/// C̃·R·C̃ is proportional to C and C passes the σ̆-centre of C̃; for σ̆ = −1
/// (where the radicand is det C) also C̃·C·C̃ is proportional to R.
pub fn reflection_aux_cycle<T: Scalar>(c: &Cycle<T>, ctx: &CycleContext, branch: Branch) -> Result<Cycle<T>> {
    if ctx.sigma_breve == Sign::Zero {
        return Err(EphError::ParabolicCycleSpace);
    }
    let unit = CycleContext { s: Sign::Plus, ..*ctx };
    let rad = ctx.sigma_breve.neg().as_scalar::<T>() * det_cycle(c, &unit);
    if rad.is_negative() {
        return Err(EphError::NegativeRadicand);
    }
    let r = rad.try_sqrt().ok_or(EphError::IrrationalRoot)?;
    Cycle::new(c.k.clone(), c.l.clone(), c.n.clone() + branch.sign::<T>() * r, c.m.clone())
}

/// (u, v) ↦ (u, 2(k(u − l)² + m) − v): the parabola v = k(u−l)² + m bisects
/// the vertical segment from a point to its image.
pub fn second_kind_inversion<T: Scalar>(k: &T, l: &T, m: &T, p: &(T, T)) -> Result<(T, T)> {
    if k.is_zero() {
        return Err(EphError::ZeroParameter);
    }
    let (u, v) = p.clone();
    let d = u.clone() - l.clone();
    let w = T::two() * (k.clone() * d.sq() + m.clone()) - v;
    Ok((u, w))
}

/// Parabolas P1, P2 with (u,v) ↦ R(P2(P1(u,v))) equal to the second-kind
/// inversion in v = k(u−l)² + m, R being the reflection in the real line:
/// P1: u² − 2lu − 4mv + l² + m/k = 0 and P2: u² − 2lu + l² + m/k = 0.
pub fn second_kind_factors<T: Scalar>(k: &T, l: &T, m: &T) -> Result<[Cycle<T>; 2]> {
    if k.is_zero() {
        return Err(EphError::ZeroParameter);
    }
    let c0 = l.sq() + m.clone() / k.clone();
    let p1 = Cycle::new_unchecked(T::one(), l.clone(), T::two() * m.clone(), c0.clone());
    let p2 = Cycle::new_unchecked(T::one(), l.clone(), T::zero(), c0);
    Ok([p1, p2])
}

/// Inversion in a parabolic-space cycle (σ = 0); the real line acts as v ↦ −v.
pub fn parabolic_inversion<T: Scalar>(c: &Cycle<T>, p: &(T, T)) -> ExtendedPoint<T> {
    if c.is_real_line() {
        return ExtendedPoint::finite(p.0.clone(), -p.1.clone());
    }
    cycle_moebius_point(c, &ExtendedPoint::finite(p.0.clone(), p.1.clone()), Sign::Zero)
}

/// Re tr(M1·M2·M1·R), all matrices in the context's σ̆ and s.
pub fn f_trace<T: Scalar>(c1: &Cycle<T>, c2: &Cycle<T>, ctx: &CycleContext) -> T {
    let m1 = fsc_matrix(c1, ctx);
    let r = fsc_matrix(&Cycle::real_line(), ctx);
    m1.mul(&fsc_matrix(c2, ctx)).mul(&m1).mul(&r).trace().c1
}

/// Focal orthogonality c1 ⊣ c2.
pub fn f_orthogonal<T: Scalar>(c1: &Cycle<T>, c2: &Cycle<T>, ctx: &CycleContext) -> bool {
    let sc = scale_of(&[c1, c1, c2]);
    f_trace(c1, c2, ctx).is_negligible(&(sc.clone() * sc))
}

/// 2σ̆s²·[ñ(l² + σ̆n² − mk) + m̃nk − 2l̃nl + k̃mn]: closed form of [`f_trace`]
/// with c1 = (k,l,n,m) and c2 = (k̃,l̃,ñ,m̃).
pub fn f_trace_closed<T: Scalar>(c1: &Cycle<T>, c2: &Cycle<T>, ctx: &CycleContext) -> T {
    let sb: T = ctx.sigma_breve.as_scalar();
    let s2: T = ctx.s.times(ctx.s).as_scalar();
    let (k, l, n, m) = (c1.k.clone(), c1.l.clone(), c1.n.clone(), c1.m.clone());
    let bracket = c2.n.clone() * (l.sq() + sb.clone() * n.sq() - m.clone() * k.clone())
        + c2.m.clone() * n.clone() * k.clone()
        - T::two() * c2.l.clone() * n.clone() * l
        + c2.k.clone() * m * n;
    T::two() * sb * s2 * bracket
}

/// Image of the real line (built with s) under inversion in c1 (built with s1):
/// (2ss1σ̆·kn, 2ss1σ̆·ln, s²(l² + σ̆n² − mk), 2ss1σ̆·mn).
pub fn real_line_inversion_image<T: Scalar>(c1: &Cycle<T>, ctx: &CycleContext, s: Sign, s1: Sign) -> Result<Cycle<T>> {
    conjugate_with(c1, s1, &Cycle::real_line(), s, ctx.sigma_breve)
}

/// The f-ghost C^{χ(σ)}·R^{σ̆}·C^{χ(σ)}.
///
/// It shares roots with `c`, and its χ(σ)-centre is the (−σ̆)-focus of `c`.
pub fn f_ghost_cycle<T: Scalar>(c: &Cycle<T>, ctx: &CycleContext) -> Result<Cycle<T>> {
    if c.k.is_zero() {
        return Err(EphError::FlatCycle);
    }
    if ctx.sigma_breve == Sign::Zero {
        return Err(EphError::ParabolicCycleSpace);
    }
    real_line_inversion_image(c, ctx, ctx.sigma_breve, ctx.sigma.chi())
}

/// Second intersection of the cycles through p that `c` is f-orthogonal to.
pub fn f_inversion_point<T: Scalar>(c: &Cycle<T>, p: &ExtendedPoint<T>, ctx: &CycleContext) -> Result<ExtendedPoint<T>> {
    let g = f_ghost_cycle(c, ctx)?;
    Ok(inversion_point(&g, p, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::zero_radius_cycle;
    use crate::Rational as Q;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn ctx(sigma: i64, sb: i64, s: i64) -> CycleContext {
        let f = |x| Sign::from_value(x).unwrap();
        CycleContext::new(f(sigma), f(sb), f(s), f(sb))
    }

    #[test]
    fn orthogonality_examples() {
        let unit = Cycle::<Q>::from_ints(1, 0, 0, -1);
        for c in CycleContext::all() {
            assert!(orthogonal(&unit, &Cycle::from_ints(0, 1, 0, 0), &c));
        }
        assert!(orthogonal(&unit, &Cycle::from_ints(1, 2, 0, 1), &ctx(-1, -1, 1)));
        let z = zero_radius_cycle((q(2), q(3)), Sign::Minus);
        assert!(orthogonal::<Q>(&z, &z, &ctx(-1, -1, 1)));
    }

    #[test]
    fn ghost_examples() {
        let c = Cycle::<Q>::from_ints(1, 0, 1, 0);
        assert_eq!(ghost_cycle(&c, &ctx(-1, -1, 1)).unwrap(), c);
        let g = ghost_cycle(&Cycle::<Q>::from_ints(1, 2, 3, 4), &ctx(0, 0, 1)).unwrap();
        assert_eq!(g.n, q(0));
        assert!(ghost_cycle(&Cycle::<Q>::real_line(), &ctx(0, 0, 1)).is_err());
    }

    #[test]
    fn inversion_examples() {
        let unit = Cycle::<Q>::from_ints(1, 0, 0, -1);
        let p = ExtendedPoint::finite(q(2), q(0));
        assert_eq!(cycle_moebius_point(&unit, &p, Sign::Minus), ExtendedPoint::finite(Q::from_ratio(1, 2), q(0)));
        let on = ExtendedPoint::finite(Q::from_ratio(3, 5), Q::from_ratio(4, 5));
        assert_eq!(cycle_moebius_point(&unit, &on, Sign::Minus), on);
        let origin = ExtendedPoint::finite(q(0), q(0));
        assert_eq!(cycle_moebius_point(&unit, &origin, Sign::Minus), ExtendedPoint::infinity());
        assert_eq!(cycle_moebius_point(&unit, &ExtendedPoint::infinity(), Sign::Minus), origin);
    }

    #[test]
    fn mirror_examples() {
        let c = ctx(-1, -1, 1);
        let z = zero_radius_cycle((q(2), q(3)), Sign::Minus);
        let img = cycle_conjugate(&Cycle::<Q>::real_line(), &z, &c).unwrap();
        assert!(img.proj_eq(&zero_radius_cycle((q(2), q(-3)), Sign::Minus)));
        let mirror = Cycle::<Q>::from_ints(1, 2, 1, -3);
        let back = cycle_conjugate(&mirror, &cycle_conjugate(&mirror, &z, &c).unwrap(), &c).unwrap();
        assert!(back.proj_eq(&z));
        // the unit circle sends the origin to infinity
        let o = cycle_conjugate(&Cycle::<Q>::from_ints(1, 0, 0, -1), &Cycle::from_ints(1, 0, 0, 0), &c).unwrap();
        assert!(o.canonical().is_infinity());
    }

    #[test]
    fn second_kind_examples() {
        assert_eq!(second_kind_inversion(&q(1), &q(0), &q(0), &(q(1), q(1))).unwrap(), (q(1), q(1)));
        assert_eq!(second_kind_inversion(&q(1), &q(0), &q(0), &(q(0), q(1))).unwrap(), (q(0), q(-1)));
        assert!(second_kind_inversion(&q(0), &q(0), &q(0), &(q(0), q(1))).is_err());
    }

    #[test]
    fn f_orthogonality_examples() {
        let sa = Cycle::<Q>::from_ints(1, 2, 0, -3);
        for c in CycleContext::all() {
            assert!(f_orthogonal(&Cycle::real_line(), &sa, &c));
            let a = Cycle::<Q>::from_ints(1, 2, 3, -3);
            let b = Cycle::<Q>::from_ints(2, -1, 1, 5);
            assert_eq!(f_trace(&a, &b, &c), f_trace_closed(&a, &b, &c));
            if c.sigma_breve != Sign::Zero && c.s != Sign::Zero {
                assert!(!f_orthogonal(&sa, &Cycle::real_line(), &c));
            }
        }
    }

    #[test]
    fn real_line_image_examples() {
        let c = ctx(1, 1, 1);
        let flat_n = Cycle::<Q>::from_ints(1, 2, 0, -3);
        assert!(real_line_inversion_image(&flat_n, &c, Sign::Plus, Sign::Plus).unwrap().is_real_line());
        for sigma in [-1, 0, 1] {
            let c = ctx(sigma, 0, 1);
            let img = real_line_inversion_image(&Cycle::<Q>::from_ints(1, 2, 3, -3), &c, Sign::Plus, Sign::Plus).unwrap();
            assert!(img.is_real_line());
        }
        let img = real_line_inversion_image(&Cycle::<Q>::from_ints(1, 2, 3, -3), &c, Sign::Plus, Sign::Plus).unwrap();
        assert!(!img.is_real_line());
    }
}
