//! Cycles k(u² − σv²) − 2lu − 2nv + m = 0 and their matrix form.

use std::fmt;


use crate::clifford::{CliffMatrix, CliffNum};
use crate::error::{EphError, Result};
use crate::moebius::{ExtendedPoint, SL2};
use crate::scalar::Scalar;
use crate::sign::Sign;

/// Projective quadruple (k, l, n, m).
#[derive(Clone, Debug, PartialEq)]
pub struct Cycle<T> {
    pub k: T,
    pub l: T,
    pub n: T,
    pub m: T,
}

/// Signatures a cycle computation runs under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CycleContext {
    /// point space
    pub sigma: Sign,
    /// cycle space
    pub sigma_breve: Sign,
    /// multiplier of n in the matrix
    pub s: Sign,
    /// centre/focus flavour
    pub varsigma: Sign,
}

impl CycleContext {
    pub fn new(sigma: Sign, sigma_breve: Sign, s: Sign, varsigma: Sign) -> Self {
        CycleContext { sigma, sigma_breve, s, varsigma }
    }

    /// σ̆ = ς = σ and s = 1.
    pub fn uniform(sigma: Sign) -> Self {
        CycleContext::new(sigma, sigma, Sign::Plus, sigma)
    }

    pub fn with_s(self, s: Sign) -> Self {
        CycleContext { s, ..self }
    }

    /// All 27 (σ, σ̆, s) combinations with ς = σ̆.
    pub fn all() -> Vec<CycleContext> {
        let mut out = Vec::new();
        for sigma in Sign::ALL {
            for sb in Sign::ALL {
                for s in Sign::ALL {
                    out.push(CycleContext::new(sigma, sb, s, sb));
                }
            }
        }
        out
    }

    /// All 81 (σ, σ̆, s, ς) combinations.
    pub fn all_with_varsigma() -> Vec<CycleContext> {
        let mut out = Vec::new();
        for c in CycleContext::all() {
            for vs in Sign::ALL {
                out.push(CycleContext { varsigma: vs, ..c });
            }
        }
        out
    }
}

/// Normalisations of a cycle representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// k = 1
    K,
    /// det = 1
    Det,
    /// first nonzero coordinate is 1
    Canonical,
}

/// Real roots of k·u² − 2l·u + m.
#[derive(Clone, Debug, PartialEq)]
pub enum Roots<T> {
    AllReals,
    Values(Vec<T>),
    /// real but irrational roots in the exact backend; carries the discriminant/4
    Irrational(T),
}

/// True when the two coordinate vectors are nonzero multiples of each other.
pub fn proportional<T: Scalar>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if T::EXACT {
        if a.iter().all(|x| x.is_zero()) || b.iter().all(|x| x.is_zero()) {
            return false;
        }
        (0..a.len()).all(|i| (i + 1..a.len()).all(|j| a[i].clone() * b[j].clone() == a[j].clone() * b[i].clone()))
    } else {
        let na = max_norm(a);
        let nb = max_norm(b);
        if na == 0.0 || nb == 0.0 {
            return false;
        }
        let tol = 1e-9;
        let same = a.iter().zip(b).all(|(x, y)| (x.as_f64() / na - y.as_f64() / nb).abs() <= tol);
        let opp = a.iter().zip(b).all(|(x, y)| (x.as_f64() / na + y.as_f64() / nb).abs() <= tol);
        same || opp
    }
}

fn max_norm<T: Scalar>(a: &[T]) -> f64 {
    a.iter().map(|x| x.as_f64().abs()).fold(0.0, f64::max)
}

impl<T: Scalar> Cycle<T> {
    pub fn new(k: T, l: T, n: T, m: T) -> Result<Self> {
        if k.is_zero() && l.is_zero() && n.is_zero() && m.is_zero() {
            return Err(EphError::ZeroCycle);
        }
        Ok(Cycle { k, l, n, m })
    }

    pub fn new_unchecked(k: T, l: T, n: T, m: T) -> Self {
        Cycle { k, l, n, m }
    }

    pub fn from_ints(k: i64, l: i64, n: i64, m: i64) -> Self {
        Cycle::new(T::from_int(k), T::from_int(l), T::from_int(n), T::from_int(m)).expect("nonzero quadruple")
    }

    /// The real line v = 0, i.e. (0, 0, 1, 0).
    pub fn real_line() -> Self {
        Cycle::from_ints(0, 0, 1, 0)
    }

    /// The zero-radius cycle at infinity (0, 0, 0, 1).
    pub fn infinity() -> Self {
        Cycle::from_ints(0, 0, 0, 1)
    }

    pub fn coords(&self) -> [T; 4] {
        [self.k.clone(), self.l.clone(), self.n.clone(), self.m.clone()]
    }

    pub fn scale(&self, f: &T) -> Self {
        let [k, l, n, m] = self.coords().map(|x| x * f.clone());
        Cycle::new_unchecked(k, l, n, m)
    }

    /// First nonzero coordinate scaled to 1 (exact), or unit max-norm with
    /// positive leading sign (float).
    pub fn canonical(&self) -> Self {
        let c = self.coords();
        if T::EXACT {
            match c.iter().find(|x| !x.is_zero()) {
                Some(lead) => self.scale(&(T::one() / lead.clone())),
                None => self.clone(),
            }
        } else {
            let norm = c.iter().map(|x| x.abs()).fold(T::zero(), |a, x| if x > a { x } else { a });
            if norm.is_zero() {
                return self.clone();
            }
            let lead = c.iter().find(|x| !x.is_negligible(&norm)).cloned().unwrap_or(norm.clone());
            let f = if lead.is_negative() { -T::one() / norm } else { T::one() / norm };
            self.scale(&f)
        }
    }

    pub fn proj_eq(&self, other: &Self) -> bool {
        proportional(&self.coords(), &other.coords())
    }

    /// k(u² − σv²) − 2lu − 2nv + m
    pub fn value_at(&self, p: &(T, T), sigma: Sign) -> T {
        let (u, v) = p.clone();
        let s: T = sigma.as_scalar();
        self.k.clone() * (u.sq() - s * v.sq()) - T::two() * self.l.clone() * u - T::two() * self.n.clone() * v
            + self.m.clone()
    }

    pub fn passes(&self, p: &(T, T), sigma: Sign) -> bool {
        let scale = self.coords().iter().map(|x| x.abs()).fold(T::one(), |a, x| if x > a { x } else { a });
        let (u, v) = p;
        let ps = T::one() + u.sq() + v.sq();
        self.value_at(p, sigma).is_negligible(&(scale * ps))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Cycle<U> {
        Cycle::new_unchecked(f(&self.k), f(&self.l), f(&self.n), f(&self.m))
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.n.is_zero()
    }

    pub fn is_infinity(&self) -> bool {
        self.k.is_zero() && self.l.is_zero() && self.n.is_zero() && !self.m.is_zero()
    }

    pub fn is_real_line(&self) -> bool {
        self.proj_eq(&Cycle::real_line())
    }

    /// Real solutions of k·u² − 2l·u + m = 0.
    pub fn roots(&self) -> Roots<T> {
        let (k, l, m) = (self.k.clone(), self.l.clone(), self.m.clone());
        if k.is_zero() {
            if l.is_zero() {
                return if m.is_zero() { Roots::AllReals } else { Roots::Values(vec![]) };
            }
            return Roots::Values(vec![m / (T::two() * l)]);
        }
        let disc = l.sq() - k.clone() * m;
        if disc.is_negative() {
            return Roots::Values(vec![]);
        }
        if disc.is_zero() {
            return Roots::Values(vec![l / k]);
        }
        match disc.try_sqrt() {
            Some(r) => {
                let mut v = vec![(l.clone() - r.clone()) / k.clone(), (l + r) / k];
                v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
                Roots::Values(v)
            }
            None => Roots::Irrational(disc),
        }
    }

    /// Shares the polynomial k·u² − 2l·u + m with `other` up to a factor.
    pub fn same_roots(&self, other: &Self) -> bool {
        let a = [self.k.clone(), self.l.clone(), self.m.clone()];
        let b = [other.k.clone(), other.l.clone(), other.m.clone()];
        proportional(&a, &b)
    }
}

impl<T: Scalar> fmt::Display for Cycle<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.k, self.l, self.n, self.m)
    }
}

pub type FscMatrix<T> = CliffMatrix<T>;

/// [[l·ĕ0 + s·n·ĕ1, m], [k, −l·ĕ0 − s·n·ĕ1]] over Cl(σ̆).
pub fn fsc_matrix_with<T: Scalar>(c: &Cycle<T>, sigma_breve: Sign, s: Sign) -> FscMatrix<T> {
    let sn = s.as_scalar::<T>() * c.n.clone();
    let diag = CliffNum::new(T::zero(), c.l.clone(), sn, T::zero(), sigma_breve);
    CliffMatrix::new(
        diag.clone(),
        CliffNum::scalar(c.m.clone(), sigma_breve),
        CliffNum::scalar(c.k.clone(), sigma_breve),
        -diag,
    )
}

pub fn fsc_matrix<T: Scalar>(c: &Cycle<T>, ctx: &CycleContext) -> FscMatrix<T> {
    fsc_matrix_with(c, ctx.sigma_breve, ctx.s)
}

/// Reads (k, l, n, m) back from a matrix of the shape built by [`fsc_matrix_with`].
pub fn read_cycle<T: Scalar>(mat: &FscMatrix<T>, s: Sign) -> Result<Cycle<T>> {
    if s == Sign::Zero {
        return Err(EphError::UnrecoverableN);
    }
    let e11 = &mat.m[0][0];
    let n = e11.c_e1.clone() * s.as_scalar::<T>();
    Cycle::new(mat.m[1][0].c1.clone(), e11.c_e0.clone(), n, mat.m[0][1].c1.clone())
}

/// Cycle of g·M·g⁻¹ with M built in Cl(σ̆) with multiplier s.
///
/// With s = 0 the matrix does not see n; SL(2,R) leaves n unchanged, so it
/// is carried over.
pub fn sl2_transform_in<T: Scalar>(c: &Cycle<T>, g: &SL2<T>, sigma_breve: Sign, s: Sign) -> Result<Cycle<T>> {
    let m = fsc_matrix_with(c, sigma_breve, s);
    let conj = g.clifford(sigma_breve).mul(&m).mul(&g.inverse().clifford(sigma_breve));
    if s == Sign::Zero {
        let r = read_cycle(&conj, Sign::Plus)?;
        return Cycle::new(r.k, r.l, c.n.clone(), r.m);
    }
    read_cycle(&conj, s)
}

/// Image of a cycle under g; independent of the internal σ̆ and s.
pub fn sl2_transform<T: Scalar>(c: &Cycle<T>, g: &SL2<T>, ctx: &CycleContext) -> Cycle<T> {
    sl2_transform_in(c, g, ctx.sigma_breve, Sign::Plus).expect("s = 1 is recoverable")
}

/// l² − σ̆·s²·n² − m·k of this representative.
pub fn det_cycle<T: Scalar>(c: &Cycle<T>, ctx: &CycleContext) -> T {
    let sb: T = ctx.sigma_breve.as_scalar();
    let s2: T = ctx.s.times(ctx.s).as_scalar();
    c.l.sq() - sb * s2 * c.n.sq() - c.m.clone() * c.k.clone()
}

/// tr(M1·M2) and its scalar part.
pub fn inner<T: Scalar>(c1: &Cycle<T>, c2: &Cycle<T>, ctx: &CycleContext) -> (CliffNum<T>, T) {
    let full = fsc_matrix(c1, ctx).mul(&fsc_matrix(c2, ctx)).trace();
    let re = full.c1.clone();
    (full, re)
}

pub fn normalize<T: Scalar>(c: &Cycle<T>, mode: Normalization, ctx: &CycleContext) -> Result<Cycle<T>> {
    match mode {
        Normalization::K => {
            if c.k.is_zero() {
                return Err(EphError::NotNormalizable("k = 0"));
            }
            Ok(c.scale(&(T::one() / c.k.clone())))
        }
        Normalization::Det => {
            let d = det_cycle(c, ctx);
            if !d.is_positive() {
                return Err(EphError::NotNormalizable("det ≤ 0"));
            }
            let r = d.try_sqrt().ok_or(EphError::NotNormalizable("det is not a square"))?;
            Ok(c.scale(&(T::one() / r)))
        }
        Normalization::Canonical => Ok(c.canonical()),
    }
}

/// ς-centre (l/k, −ς·n/k); flat cycles have their centre at an ideal point.
pub fn center<T: Scalar>(c: &Cycle<T>, varsigma: Sign) -> ExtendedPoint<T> {
    let vs: T = varsigma.as_scalar();
    if c.k.is_zero() {
        return ExtendedPoint::ideal(c.l.clone(), -vs * c.n.clone(), T::zero()).unwrap_or_else(ExtendedPoint::infinity);
    }
    ExtendedPoint::finite(c.l.clone() / c.k.clone(), -vs * c.n.clone() / c.k.clone())
}

/// ς-focus (l/k, (mk − l² + ς·n²)/(2nk)) and focal length n/(2k).
pub fn focus<T: Scalar>(c: &Cycle<T>, varsigma: Sign) -> Result<((T, T), T)> {
    let nk = c.n.clone() * c.k.clone();
    if nk.is_zero() {
        return Err(EphError::FocusUndefined);
    }
    let vs: T = varsigma.as_scalar();
    let v = (c.m.clone() * c.k.clone() - c.l.sq() + vs * c.n.sq()) / (T::two() * nk);
    Ok(((c.l.clone() / c.k.clone(), v), c.n.clone() / (T::two() * c.k.clone())))
}

/// (1, u, v, u² − σ̆v²)
pub fn zero_radius_cycle<T: Scalar>(p: (T, T), sigma_breve: Sign) -> Cycle<T> {
    let (u, v) = p;
    let sb: T = sigma_breve.as_scalar();
    let m = u.sq() - sb * v.sq();
    Cycle::new_unchecked(T::one(), u, v, m)
}
