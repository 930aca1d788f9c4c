//! ε-jets and cycles of infinitesimal radius.
//!
//! A [`Jet`] is a polynomial in a positive infinitesimal ε truncated after ε³,
//! with exact rational coefficients. Cycles whose determinant is −ε² are built
//! from jets; their images under SL(2,R) and under cycle conjugation are
//! computed coefficient-wise through the (linear) action on cycles.
//!
//! The cycles of this module live in the parabolic point space; the σ of a
//! [`CycleContext`] is not consulted.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::cycles::{fsc_matrix_with, Cycle, CycleContext, FscMatrix};
use crate::error::{EphError, Result};
use crate::moebius::{moebius_apply, ExtendedPoint, SL2};
use crate::scalar::Scalar;
use crate::sign::Sign;
use crate::Rational;

/// Number of stored coefficients (ε⁰ … ε³).
pub const JET_LEN: usize = 4;

/// c0 + c1·ε + c2·ε² + c3·ε³ modulo ε⁴.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Jet {
    pub c: [Rational; JET_LEN],
}

impl Jet {
    pub fn new(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        Jet { c: [c0, c1, c2, c3] }
    }

    pub fn from_ints(c: [i64; JET_LEN]) -> Self {
        Jet { c: c.map(Rational::from_int) }
    }

    pub fn constant(x: Rational) -> Self {
        Jet::new(x, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn zero() -> Self {
        Jet::constant(Rational::zero())
    }

    pub fn one() -> Self {
        Jet::constant(Rational::one())
    }

    /// ε itself.
    pub fn eps() -> Self {
        Jet::from_ints([0, 1, 0, 0])
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Jet { c: self.c.clone().map(|x| x * k) }
    }

    /// Index of the lowest nonzero coefficient; `None` for the zero jet.
    pub fn order(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    /// Drops the lowest `k` coefficients (division by εᵏ of a jet of order ≥ k).
    fn shift_down(&self, k: usize) -> Jet {
        let mut c: [Rational; JET_LEN] = std::array::from_fn(|_| Rational::zero());
        for i in k..JET_LEN {
            c[i - k] = self.c[i].clone();
        }
        Jet { c }
    }

    pub fn div(&self, other: &Jet) -> Result<Jet> {
        let b0 = &other.c[0];
        if b0.is_zero() {
            return Err(EphError::DivisionLeadingZero);
        }
        let mut q: [Rational; JET_LEN] = std::array::from_fn(|_| Rational::zero());
        for i in 0..JET_LEN {
            let mut acc = self.c[i].clone();
            for j in 0..i {
                acc -= &q[j] * &other.c[i - j];
            }
            q[i] = acc / b0;
        }
        Ok(Jet { c: q })
    }

    /// Quotient when both sides may vanish at ε = 0.
    ///
    /// Both are divided by ε^k with k the order of `other`; the result is
    /// determined up to ε^(3−k).
    pub fn div_shifted(&self, other: &Jet) -> Result<PartialJet> {
        let k = other.order().ok_or(EphError::DivisionLeadingZero)?;
        if self.order().is_some_and(|o| o < k) {
            return Err(EphError::DivisionLeadingZero);
        }
        let q = self.shift_down(k).div(&other.shift_down(k))?;
        Ok(PartialJet::new(q, JET_LEN - 1 - k))
    }

    /// Binomial series around a positive square leading coefficient.
    pub fn sqrt(&self) -> Result<Jet> {
        let c0 = &self.c[0];
        if !c0.is_positive() {
            return Err(EphError::SqrtNonPositiveLead);
        }
        let s0 = c0.try_sqrt().ok_or(EphError::IrrationalRoot)?;
        let two_s0 = Rational::two() * &s0;
        let s1 = &self.c[1] / &two_s0;
        let s2 = (&self.c[2] - &s1 * &s1) / &two_s0;
        let s3 = (&self.c[3] - Rational::two() * &s1 * &s2) / &two_s0;
        Ok(Jet::new(s0, s1, s2, s3))
    }

    pub fn sq(&self) -> Jet {
        self * self
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| match i {
                0 => format!("{x}"),
                1 => format!("{x}·ε"),
                _ => format!("{x}·ε^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        Jet { c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        Jet { c: std::array::from_fn(|i| &self.c[i] - &o.c[i]) }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        Jet {
            c: std::array::from_fn(|i| (0..=i).fold(Rational::zero(), |acc, j| acc + &self.c[j] * &o.c[i - j])),
        }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { c: self.c.clone().map(|x| -x) }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Jet {
            type Output = Jet;
            fn $f(self, o: Jet) -> Jet {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        -&self
    }
}

pub fn jet_add(a: &Jet, b: &Jet) -> Jet {
    a + b
}

pub fn jet_mul(a: &Jet, b: &Jet) -> Jet {
    a * b
}

pub fn jet_div(a: &Jet, b: &Jet) -> Result<Jet> {
    a.div(b)
}

pub fn jet_sqrt(a: &Jet) -> Result<Jet> {
    a.sqrt()
}

/// Index of the lowest nonzero coefficient, `None` standing for ∞.
pub fn eps_order(j: &Jet) -> Option<usize> {
    j.order()
}

/// A jet whose coefficients are only determined up to ε^known.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialJet {
    pub jet: Jet,
    pub known: usize,
}

impl PartialJet {
    pub fn new(jet: Jet, known: usize) -> Self {
        let mut jet = jet;
        for i in known + 1..JET_LEN {
            jet.c[i] = Rational::zero();
        }
        PartialJet { jet, known }
    }

    /// Lower bound on the ε-order: the first nonzero determined coefficient,
    /// or `known + 1` when all determined ones vanish.
    pub fn order_at_least(&self) -> usize {
        self.jet.order().filter(|&o| o <= self.known).unwrap_or(self.known + 1)
    }

    pub fn sub_const(&self, x: &Rational) -> PartialJet {
        let mut jet = self.jet.clone();
        jet.c[0] -= x;
        PartialJet { jet, known: self.known }
    }
}

/// A cycle with jet coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct JetCycle {
    pub k: Jet,
    pub l: Jet,
    pub n: Jet,
    pub m: Jet,
}

impl JetCycle {
    pub fn coords(&self) -> [&Jet; 4] {
        [&self.k, &self.l, &self.n, &self.m]
    }

    /// l² − σ̆n² − km.
    pub fn det(&self, sigma_breve: Sign) -> Jet {
        let sb = sigma_breve.as_scalar::<Rational>();
        &(&self.l.sq() - &self.n.sq().scale(&sb)) - &(&self.k * &self.m)
    }

    /// k(u² − σv²) − 2lu − 2nv + m.
    pub fn value_at(&self, p: &(Jet, Jet), sigma: Sign) -> Jet {
        let s = sigma.as_scalar::<Rational>();
        let two = Rational::two();
        let quad = &p.0.sq() - &p.1.sq().scale(&s);
        &(&(&self.k * &quad) - &(&self.l * &p.0).scale(&two)) - &(&(&self.n * &p.1).scale(&two) - &self.m)
    }

    /// ς-focus (l/k, (mk − l² + ςn²)/(2nk)).
    pub fn focus(&self, varsigma: Sign) -> Result<(PartialJet, PartialJet)> {
        let u = self.l.div(&self.k)?;
        let vs = varsigma.as_scalar::<Rational>();
        let num = &(&(&self.m * &self.k) - &self.l.sq()) + &self.n.sq().scale(&vs);
        let den = (&self.n * &self.k).scale(&Rational::two());
        let v = num.div_shifted(&den)?;
        Ok((PartialJet::new(u, JET_LEN - 1), v))
    }

    fn apply_linear(&self, map: &[[Rational; 4]; 4]) -> JetCycle {
        let src = self.coords();
        let row = |i: usize| {
            (0..4).fold(Jet::zero(), |acc, j| &acc + &src[j].scale(&map[i][j]))
        };
        JetCycle { k: row(0), l: row(1), n: row(2), m: row(3) }
    }
}

/// Cycle of infinitesimal radius with a real ς-focus.
#[derive(Clone, Debug, PartialEq)]
pub struct InfCycle {
    pub cycle: JetCycle,
    pub focus: (Rational, Rational),
    pub ctx: CycleContext,
}

impl InfCycle {
    pub fn det(&self) -> Jet {
        self.cycle.det(self.ctx.sigma_breve)
    }
}

/// (1, u₀, n, u₀² + 2nv₀ − ςn²) with (ς − σ̆)n² − 2v₀n + ε² = 0, the root
/// of order ε².
pub fn infinitesimal_cycle(u0: &Rational, v0: &Rational, ctx: &CycleContext) -> Result<InfCycle> {
    if !v0.is_positive() {
        return Err(EphError::NonPositiveV);
    }
    let a = ctx.varsigma.as_scalar::<Rational>() - ctx.sigma_breve.as_scalar::<Rational>();
    let eps2 = Jet::from_ints([0, 0, 1, 0]);
    let n = if a.is_zero() {
        eps2.scale(&(Rational::one() / (Rational::two() * v0)))
    } else {
        let root = (&Jet::constant(v0.sq()) - &eps2.scale(&a)).sqrt()?;
        (&Jet::constant(v0.clone()) - &root).scale(&(Rational::one() / &a))
    };
    let vs = ctx.varsigma.as_scalar::<Rational>();
    let m = &(&Jet::constant(u0.sq()) + &n.scale(&(Rational::two() * v0))) - &n.sq().scale(&vs);
    let cycle = JetCycle { k: Jet::one(), l: Jet::constant(u0.clone()), n, m };
    Ok(InfCycle { cycle, focus: (u0.clone(), v0.clone()), ctx: *ctx })
}

/// Point of the cycle over u₀ + εu in the parabolic point space:
/// (u₀ + εu, v₀ + v₀u² + ((σ̆ − ς)u² − ς)ε²/(4v₀)).
pub fn point_on_inf_cycle(ic: &InfCycle, u: &Rational) -> (Jet, Jet) {
    let (u0, v0) = &ic.focus;
    let sb = ic.ctx.sigma_breve.as_scalar::<Rational>();
    let vs = ic.ctx.varsigma.as_scalar::<Rational>();
    let x = Jet::new(u0.clone(), u.clone(), Rational::zero(), Rational::zero());
    let c2 = ((sb - &vs) * u.sq() - vs) / (Rational::from_int(4) * v0);
    let y = Jet::new(v0 + v0 * u.sq(), Rational::zero(), c2, Rational::zero());
    (x, y)
}

/// Residuals of the two infinitesimal orthogonality conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct InfResiduals {
    /// Scalar part of tr(M·M̃): ku₀² − 2lu₀ + m + O(ε²).
    pub ortho: Jet,
    /// f-trace of (ic ⊣ C) divided by 2σ̆s²·n: ku₀² − 2lu₀ − 2ñv₀ + m + O(ε²).
    pub focal: PartialJet,
}

fn lift(c: &Cycle<Rational>) -> JetCycle {
    JetCycle {
        k: Jet::constant(c.k.clone()),
        l: Jet::constant(c.l.clone()),
        n: Jet::constant(c.n.clone()),
        m: Jet::constant(c.m.clone()),
    }
}

/// ñ(l² + σ̆n² − mk) + m̃nk − 2l̃nl + k̃mn for c1 = (k,l,n,m), c2 = (k̃,l̃,ñ,m̃).
pub fn f_bracket(c1: &JetCycle, c2: &JetCycle, sigma_breve: Sign) -> Jet {
    let sb = sigma_breve.as_scalar::<Rational>();
    let (k, l, n, m) = (&c1.k, &c1.l, &c1.n, &c1.m);
    let det_plus = &(&l.sq() + &n.sq().scale(&sb)) - &(m * k);
    let t1 = &c2.n * &det_plus;
    let t2 = &(&c2.m * n) * k;
    let t3 = (&(&c2.l * n) * l).scale(&Rational::two());
    let t4 = &(&c2.k * m) * n;
    &(&(&t1 + &t2) - &t3) + &t4
}

/// Scalar part of tr(M1·M2) with multiplier s: mk̃ + km̃ − 2ll̃ + 2s²σ̆nñ.
pub fn inner_jet(c1: &JetCycle, c2: &JetCycle, ctx: &CycleContext) -> Jet {
    let two = Rational::two();
    let sbs = ctx.sigma_breve.times(ctx.s).times(ctx.s).as_scalar::<Rational>();
    let a = &(&c1.m * &c2.k) + &(&c1.k * &c2.m);
    let b = (&c1.l * &c2.l).scale(&two);
    let c = (&c1.n * &c2.n).scale(&(two * sbs));
    &(&a - &b) + &c
}

pub fn inf_orthogonality_conditions(ic: &InfCycle, c: &Cycle<Rational>) -> Result<InfResiduals> {
    let other = lift(c);
    let ortho = inner_jet(&ic.cycle, &other, &ic.ctx);
    let focal = f_bracket(&ic.cycle, &other, ic.ctx.sigma_breve).div_shifted(&ic.cycle.n)?;
    Ok(InfResiduals { ortho, focal })
}

/// f-trace of (C ⊣ ic) divided by 2σ̆s²·ñ; the leading term is ku₀² − 2lu₀ + m.
pub fn reverse_focal_residual(ic: &InfCycle, c: &Cycle<Rational>) -> Result<Jet> {
    if c.n.is_zero() {
        return Err(EphError::ZeroDivisor);
    }
    let b = f_bracket(&lift(c), &ic.cycle, ic.ctx.sigma_breve);
    Ok(b.scale(&(Rational::one() / &c.n)))
}

fn read_raw(mat: &FscMatrix<Rational>) -> [Rational; 4] {
    [mat.m[1][0].c1.clone(), mat.m[0][0].c_e0.clone(), mat.m[0][0].c_e1.clone(), mat.m[0][1].c1.clone()]
}

fn basis(i: usize) -> Cycle<Rational> {
    let mut c = [0i64; 4];
    c[i] = 1;
    Cycle::from_ints(c[0], c[1], c[2], c[3])
}

fn linear_map(f: impl Fn(&FscMatrix<Rational>) -> FscMatrix<Rational>, sigma_breve: Sign) -> [[Rational; 4]; 4] {
    let cols: Vec<[Rational; 4]> = (0..4).map(|j| read_raw(&f(&fsc_matrix_with(&basis(j), sigma_breve, Sign::Plus)))).collect();
    std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()))
}

/// Image g·C·g⁻¹ of a jet cycle.
pub fn sl2_image(c: &JetCycle, g: &SL2<Rational>, sigma_breve: Sign) -> JetCycle {
    let gm = g.clifford(sigma_breve);
    let gi = g.inverse().clifford(sigma_breve);
    c.apply_linear(&linear_map(|m| gm.mul(m).mul(&gi), sigma_breve))
}

/// Image M_mirror·C·M_mirror of a jet cycle (both with s = 1).
pub fn conjugate_image(mirror: &Cycle<Rational>, c: &JetCycle, sigma_breve: Sign) -> JetCycle {
    let mm = fsc_matrix_with(mirror, sigma_breve, Sign::Plus);
    c.apply_linear(&linear_map(|m| mm.mul(m).mul(&mm), sigma_breve))
}

/// ς-focus of g·ic minus the Möbius image of the focus of ic.
///
/// The cycle lives in the parabolic point space, so the focus is moved by the
/// parabolic Möbius action whatever `ctx.sigma` says.
pub fn focus_displacement(ic: &InfCycle, g: &SL2<Rational>) -> Result<(PartialJet, PartialJet)> {
    let img = sl2_image(&ic.cycle, g, ic.ctx.sigma_breve);
    let (fu, fv) = img.focus(ic.ctx.varsigma)?;
    let p = ExtendedPoint::finite(ic.focus.0.clone(), ic.focus.1.clone());
    let (gu, gv) = moebius_apply(g, &p, Sign::Zero).as_finite().ok_or(EphError::ZeroDivisor)?;
    Ok((fu.sub_const(&gu), fv.sub_const(&gv)))
}
