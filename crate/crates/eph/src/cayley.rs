//! Cayley transforms: the elliptic and hyperbolic ones, and the three
//! parabolic flavours, on points, on SL(2,R) and on cycles.

use nalgebra::DMatrix;

use crate::clifford::{CliffMatrix, CliffNum};
use crate::cycles::Cycle;
use crate::error::{EphError, Result};
use crate::infinitesimal::{f_bracket, InfCycle, Jet, JetCycle, JET_LEN};
use crate::metric::{length_from_centre_sq, length_from_focus_sq};
use crate::moebius::{ExtendedPoint, SL2};
use crate::relations::{conjugate_with, Branch};
use crate::scalar::Scalar;
use crate::sign::Sign;
use crate::Rational;

/// A Cayley transform: point space σ and, for σ = 0, the flavour σ̆.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CayleyKind {
    pub sigma: Sign,
    /// Equal to `sigma` whenever `sigma` is not zero.
    pub sigma_breve: Sign,
}

impl CayleyKind {
    pub const ELLIPTIC: CayleyKind = CayleyKind { sigma: Sign::Minus, sigma_breve: Sign::Minus };
    pub const HYPERBOLIC: CayleyKind = CayleyKind { sigma: Sign::Plus, sigma_breve: Sign::Plus };
    pub const PARABOLIC_E: CayleyKind = CayleyKind { sigma: Sign::Zero, sigma_breve: Sign::Minus };
    pub const PARABOLIC_P: CayleyKind = CayleyKind { sigma: Sign::Zero, sigma_breve: Sign::Zero };
    pub const PARABOLIC_H: CayleyKind = CayleyKind { sigma: Sign::Zero, sigma_breve: Sign::Plus };

    /// The flavour is ignored unless σ = 0.
    pub fn new(sigma: Sign, flavour: Sign) -> Self {
        let sigma_breve = if sigma == Sign::Zero { flavour } else { sigma };
        CayleyKind { sigma, sigma_breve }
    }

    pub fn all() -> [CayleyKind; 5] {
        [Self::ELLIPTIC, Self::PARABOLIC_E, Self::PARABOLIC_P, Self::PARABOLIC_H, Self::HYPERBOLIC]
    }

    pub fn is_parabolic(&self) -> bool {
        self.sigma == Sign::Zero
    }

    pub fn name(&self) -> &'static str {
        match (self.sigma, self.sigma_breve) {
            (Sign::Minus, _) => "elliptic",
            (Sign::Plus, _) => "hyperbolic",
            (Sign::Zero, Sign::Minus) => "parabolic-e",
            (Sign::Zero, Sign::Zero) => "parabolic-p",
            (Sign::Zero, Sign::Plus) => "parabolic-h",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::all().into_iter().find(|k| k.name() == name)
    }

    /// C = [[1, −e1], [σ̆·e1, 1]] over Cl(σ).
    pub fn matrix<T: Scalar>(&self) -> CliffMatrix<T> {
        let e1 = CliffNum::<T>::e1(self.sigma);
        CliffMatrix::new(
            CliffNum::one(self.sigma),
            -e1.clone(),
            e1.scale(&self.sigma_breve.as_scalar()),
            CliffNum::one(self.sigma),
        )
    }

    /// C⁻¹ = [[1, e1], [−σ̆·e1, 1]] / (1 + σσ̆).
    pub fn inverse_matrix<T: Scalar>(&self) -> CliffMatrix<T> {
        let e1 = CliffNum::<T>::e1(self.sigma);
        let adj = CliffMatrix::new(
            CliffNum::one(self.sigma),
            e1.clone(),
            e1.scale(&-self.sigma_breve.as_scalar::<T>()),
            CliffNum::one(self.sigma),
        );
        let det = T::one() + self.sigma.times(self.sigma_breve).as_scalar::<T>();
        adj.scale(&(T::one() / det))
    }
}

/// Image of a point: (w − e1)(σ̆e1w + 1)⁻¹ in Cl(σ).
///
/// Zero-divisor denominators and ideal inputs are transported through the
/// cycle encoding the point.
pub fn cayley_point<T: Scalar>(kind: CayleyKind, p: &ExtendedPoint<T>) -> ExtendedPoint<T> {
    point_map(kind, p, false)
}

/// The inverse transform on points.
pub fn cayley_point_inverse<T: Scalar>(kind: CayleyKind, p: &ExtendedPoint<T>) -> ExtendedPoint<T> {
    point_map(kind, p, true)
}

fn point_map<T: Scalar>(kind: CayleyKind, p: &ExtendedPoint<T>, inverse: bool) -> ExtendedPoint<T> {
    if let ExtendedPoint::Finite { u, v } = p {
        let w = CliffNum::vector(u.clone(), v.clone(), kind.sigma);
        let mat = if inverse { kind.inverse_matrix::<T>() } else { kind.matrix::<T>() };
        if let Ok(img) = mat.act(&w) {
            return ExtendedPoint::finite(img.c_e0, img.c_e1);
        }
    }
    let enc = p.cycle(kind.sigma);
    let img = match (kind.sigma, inverse) {
        // (1, u, v, u²) ↦ (1, u, v − 1 − σ̆u², u²), extended linearly
        (Sign::Zero, inv) => {
            let f: T = if inv { -T::one() } else { T::one() };
            let shift = enc.k.clone() + kind.sigma_breve.as_scalar::<T>() * enc.m.clone();
            Cycle::new_unchecked(enc.k.clone(), enc.l.clone(), enc.n.clone() - f * shift, enc.m.clone())
        }
        // the hyperbolic encoding of (u, v) is the light cone at (u, −v)
        (Sign::Plus, inv) => flip_n(&cycle_map_similarity(&flip_n(&enc), kind.sigma, inv)),
        (Sign::Minus, inv) => cycle_map_similarity(&enc, kind.sigma, inv),
    };
    ExtendedPoint::from_cycle(&img)
}

/// C·g·C⁻¹ over Cl(σ); the parabolic transforms are not similarities of SL(2,R).
pub fn cayley_sl2<T: Scalar>(g: &SL2<T>, kind: CayleyKind) -> Result<CliffMatrix<T>> {
    if kind.is_parabolic() {
        return Err(EphError::ParabolicNotSimilarity);
    }
    Ok(kind.matrix::<T>().mul(&g.clifford(kind.sigma)).mul(&kind.inverse_matrix()))
}

/// Cayley image of a cycle with how it was obtained.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleyCycle<T> {
    pub cycle: Cycle<T>,
    /// Whether a conic fitted through transported sample points agrees; `None`
    /// when the cycle has no usable real points.
    pub fit_agrees: Option<bool>,
    pub note: Option<SignConventionNote<T>>,
}

/// The printed parabolic cycle map (k − 2σ̆n, l, n, m + 2σ̆n) disagrees with
/// point transport.
#[derive(Clone, Debug, PartialEq)]
pub struct SignConventionNote<T> {
    pub printed: Cycle<T>,
    pub transported: Cycle<T>,
}

impl<T: Scalar> std::fmt::Display for SignConventionNote<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "formula (k-2σ̆n, l, n, m+2σ̆n) gives {} but point transport gives {}",
            self.printed, self.transported
        )
    }
}

/// The printed parabolic formula (k − 2σ̆n, l, n, m + 2σ̆n).
pub fn printed_parabolic_map<T: Scalar>(c: &Cycle<T>, sigma_breve: Sign) -> Cycle<T> {
    let t = T::two() * sigma_breve.as_scalar::<T>() * c.n.clone();
    Cycle::new_unchecked(c.k.clone() - t.clone(), c.l.clone(), c.n.clone(), c.m.clone() + t)
}

/// Substitution of the inverse point map (u, v) ↦ (u, v + 1 + σ̆u²):
/// (k − 2σ̆n, l, n, m − 2n).
fn parabolic_pullback<T: Scalar>(c: &Cycle<T>, sigma_breve: Sign) -> Cycle<T> {
    let n2 = T::two() * c.n.clone();
    Cycle::new_unchecked(
        c.k.clone() - sigma_breve.as_scalar::<T>() * n2.clone(),
        c.l.clone(),
        c.n.clone(),
        c.m.clone() - n2,
    )
}

fn flip_n<T: Scalar>(c: &Cycle<T>) -> Cycle<T> {
    Cycle::new_unchecked(c.k.clone(), c.l.clone(), -c.n.clone(), c.m.clone())
}

/// The auxiliary cycle of the elliptic or hyperbolic transform: (1, 0, σ, σ).
pub fn auxiliary_cycle<T: Scalar>(sigma: Sign) -> Cycle<T> {
    let s: T = sigma.as_scalar();
    Cycle::new_unchecked(T::one(), T::zero(), s.clone(), s)
}

/// Reflection in the auxiliary cycle (cycle space σ̆ = σ) followed by
/// n ↦ −n. Both steps are involutions, so `inverse` swaps their order.
fn cycle_map_similarity<T: Scalar>(c: &Cycle<T>, sigma: Sign, inverse: bool) -> Cycle<T> {
    let conj = |x: &Cycle<T>| {
        conjugate_with(&auxiliary_cycle(sigma), Sign::Plus, x, Sign::Plus, sigma).expect("conjugate of a nonzero cycle")
    };
    if inverse {
        conj(&flip_n(c))
    } else {
        flip_n(&conj(c))
    }
}

fn cycle_map<T: Scalar>(c: &Cycle<T>, kind: CayleyKind) -> Cycle<T> {
    if kind.is_parabolic() {
        parabolic_pullback(c, kind.sigma_breve)
    } else {
        cycle_map_similarity(c, kind.sigma, false)
    }
}

/// Image of a cycle of the point space σ.
///
/// The result is the point-transported cycle. It is cross-checked by fitting
/// a conic through 16 transported sample points; for σ = 0 the printed
/// formula is compared too, and a [`SignConventionNote`] records a mismatch.
pub fn cayley_cycle<T: Scalar>(c: &Cycle<T>, kind: CayleyKind) -> CayleyCycle<T> {
    let cycle = cycle_map(c, kind);
    let fit_agrees = fitted_image(c, kind).map(|f| f.matches(&cycle));
    let note = if kind.is_parabolic() {
        let printed = printed_parabolic_map(c, kind.sigma_breve);
        (!printed.proj_eq(&cycle)).then(|| SignConventionNote { printed, transported: cycle.clone() })
    } else {
        None
    };
    CayleyCycle { cycle, fit_agrees, note }
}

/// A cycle recovered from sample points, exactly or by least squares.
#[derive(Clone, Debug)]
pub enum Fitted<T> {
    Exact(Cycle<T>),
    Float(Cycle<f64>),
}

impl<T: Scalar> Fitted<T> {
    pub fn matches(&self, c: &Cycle<T>) -> bool {
        match self {
            Fitted::Exact(f) => f.proj_eq(c),
            Fitted::Float(f) => close_projectively(&f.coords(), &c.map(|x| x.as_f64()).coords(), 1e-7),
        }
    }

    pub fn as_f64(&self) -> Cycle<f64> {
        match self {
            Fitted::Exact(f) => f.map(|x| x.as_f64()),
            Fitted::Float(f) => f.clone(),
        }
    }
}

/// Fit through 16 transported points of `c`: exact when the points are
/// representable in the backend, least squares otherwise.
pub fn fitted_image<T: Scalar>(c: &Cycle<T>, kind: CayleyKind) -> Option<Fitted<T>> {
    let push = |p: (T, T)| cayley_point(kind, &ExtendedPoint::finite(p.0, p.1)).as_finite();
    if let Some(pts) = exact_sample_points(c, kind.sigma, 16) {
        let img: Option<Vec<_>> = pts.into_iter().map(push).collect();
        if let Some(img) = img {
            if let Some(f) = fit_cycle_exact(&img, kind.sigma) {
                return Some(Fitted::Exact(f));
            }
        }
    }
    let cf = c.map(|x| x.as_f64());
    let pts = float_sample_points(&cf, kind.sigma, 16);
    if pts.len() < 5 {
        return None;
    }
    let img: Vec<(f64, f64)> = pts
        .into_iter()
        .filter_map(|p| cayley_point(kind, &ExtendedPoint::finite(p.0, p.1)).as_finite())
        .filter(|p| p.0.is_finite() && p.1.is_finite() && p.0.abs() < 1e6 && p.1.abs() < 1e6)
        .collect();
    if img.len() < 5 {
        return None;
    }
    Some(Fitted::Float(fit_cycle_f64(&img, kind.sigma)))
}

fn close_projectively(a: &[f64], b: &[f64], tol: f64) -> bool {
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return false;
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    1.0 - (dot / (na * nb)).abs() <= tol
}

/// Points of a σ = 0 cycle with coordinates in the backend.
fn exact_sample_points<T: Scalar>(c: &Cycle<T>, sigma: Sign, count: i64) -> Option<Vec<(T, T)>> {
    if sigma != Sign::Zero {
        return None;
    }
    let ts = (0..count).map(|j| T::from_int(j - count / 2));
    if !c.n.is_zero() {
        let two_n = T::two() * c.n.clone();
        return Some(
            ts.map(|u| {
                let v = (c.k.clone() * u.sq() - T::two() * c.l.clone() * u.clone() + c.m.clone()) / two_n.clone();
                (u, v)
            })
            .collect(),
        );
    }
    let root = if c.k.is_zero() {
        if c.l.is_zero() {
            return None;
        }
        c.m.clone() / (T::two() * c.l.clone())
    } else {
        let disc = c.l.sq() - c.k.clone() * c.m.clone();
        if disc.is_negative() {
            return None;
        }
        (c.l.clone() + disc.try_sqrt()?) / c.k.clone()
    };
    Some(ts.map(|v| (root.clone(), v)).collect())
}

/// Up to `count` well-spread real points of a cycle, from scanning both
/// coordinate directions.
pub fn float_sample_points(c: &Cycle<f64>, sigma: Sign, count: usize) -> Vec<(f64, f64)> {
    let s = sigma.value() as f64;
    let (k, l, n, m) = (c.k, c.l, c.n, c.m);
    let mut pts = Vec::new();
    let roots = |a: f64, b: f64, cc: f64| -> Vec<f64> {
        // a·x² + b·x + cc = 0
        if a.abs() < 1e-12 {
            if b.abs() < 1e-12 {
                vec![]
            } else {
                vec![-cc / b]
            }
        } else {
            let d = b * b - 4.0 * a * cc;
            if d < 0.0 {
                vec![]
            } else {
                let r = d.sqrt();
                vec![(-b + r) / (2.0 * a), (-b - r) / (2.0 * a)]
            }
        }
    };
    for i in 0..=40 {
        let t = -4.0 + 0.2 * i as f64;
        // fixed u = t: −σk·v² − 2n·v + (kt² − 2lt + m) = 0
        for v in roots(-s * k, -2.0 * n, k * t * t - 2.0 * l * t + m) {
            pts.push((t, v));
        }
        // fixed v = t: k·u² − 2l·u + (−σkt² − 2nt + m) = 0
        for u in roots(k, -2.0 * l, -s * k * t * t - 2.0 * n * t + m) {
            pts.push((u, t));
        }
    }
    pts.retain(|p| p.0.is_finite() && p.1.is_finite());
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9);
    if pts.len() <= count {
        return pts;
    }
    let step = pts.len() as f64 / count as f64;
    (0..count).map(|i| pts[(i as f64 * step) as usize]).collect()
}

fn row<T: Scalar>(p: &(T, T), sigma: Sign) -> [T; 4] {
    let s: T = sigma.as_scalar();
    [
        p.0.sq() - s * p.1.sq(),
        -T::two() * p.0.clone(),
        -T::two() * p.1.clone(),
        T::one(),
    ]
}

/// The cycle through all points, when the points determine one.
pub fn fit_cycle_exact<T: Scalar>(pts: &[(T, T)], sigma: Sign) -> Option<Cycle<T>> {
    let mut rows: Vec<[T; 4]> = pts.iter().map(|p| row(p, sigma)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..4 {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let lead = rows[r][col].clone();
        for j in 0..4 {
            rows[r][j] = rows[r][j].clone() / lead.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..4 {
                    rows[i][j] = rows[i][j].clone() - f.clone() * rows[r][j].clone();
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if pivots.len() != 3 {
        return None;
    }
    let free = (0..4).find(|c| !pivots.contains(c))?;
    let mut x: [T; 4] = std::array::from_fn(|_| T::zero());
    x[free] = T::one();
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = -rows[i][free].clone();
    }
    let [k, l, n, m] = x;
    Cycle::new(k, l, n, m).ok()
}

/// Least-squares cycle through the points: the right singular vector of the
/// smallest singular value.
pub fn fit_cycle_f64(pts: &[(f64, f64)], sigma: Sign) -> Cycle<f64> {
    let data: Vec<f64> = pts.iter().flat_map(|p| row(p, sigma)).collect();
    let a = DMatrix::from_row_slice(pts.len(), 4, &data);
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let idx = (0..svd.singular_values.len())
        .min_by(|&i, &j| svd.singular_values[i].partial_cmp(&svd.singular_values[j]).expect("finite"))
        .expect("nonempty");
    let last = if svd.singular_values.len() < 4 { 3 } else { idx };
    let v = vt.row(last);
    Cycle::new_unchecked(v[0], v[1], v[2], v[3]).canonical()
}

/// Image of the real line: (1, 0, 0, −1) elliptic, (1, 0, 0, 1) hyperbolic,
/// (σ̆, 0, −1/2, 1) parabolic. The parabolic-parabolic one is the line v = −1.
pub fn unit_cycle<T: Scalar>(kind: CayleyKind) -> Cycle<T> {
    match kind.sigma {
        Sign::Minus => Cycle::from_ints(1, 0, 0, -1),
        Sign::Plus => Cycle::from_ints(1, 0, 0, 1),
        Sign::Zero => Cycle::new_unchecked(kind.sigma_breve.as_scalar(), T::zero(), -T::half(), T::one()),
    }
}

/// How the unit disk is described through lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiskForm {
    /// σ̆-length from the σ̆-centre: the origin, or (0, −σ̆/2) with σ = 0.
    Centre,
    /// p-length from the h-focus (0, −1 − σ̆/4); σ = 0, σ̆ ≠ 0 only.
    HFocus,
    /// p-length from the p-focus (0, −1); σ = 0, σ̆ ≠ 0 only.
    PFocus,
}

/// −σ̆·l² of the given description: 1 on the unit cycle.
pub fn disk_value<T: Scalar>(kind: CayleyKind, p: &(T, T), form: DiskForm) -> Result<T> {
    let sb = kind.sigma_breve;
    let factor: T = sb.neg().as_scalar();
    let l2 = match (kind.sigma, form) {
        (s, DiskForm::Centre) if s != Sign::Zero => {
            length_from_centre_sq(&(T::zero(), T::zero()), p, s, s, s)?
        }
        (_, _) if sb == Sign::Zero => return Err(EphError::Invalid("parabolic-parabolic disk has no length form")),
        (_, DiskForm::Centre) => {
            let c = (T::zero(), -T::half() * sb.as_scalar::<T>());
            length_from_centre_sq(&c, p, Sign::Zero, Sign::Zero, Sign::Minus)?
        }
        (Sign::Zero, DiskForm::HFocus) => {
            let f = (T::zero(), -T::one() - sb.as_scalar::<T>() / T::from_int(4));
            let branch = if sb == Sign::Minus { Branch::Plus } else { Branch::Minus };
            length_from_focus_sq(&f, p, Sign::Zero, Sign::Zero, Sign::Plus, branch)?.0
        }
        (Sign::Zero, DiskForm::PFocus) => {
            let f = (T::zero(), -T::one());
            length_from_focus_sq(&f, p, Sign::Zero, Sign::Zero, Sign::Zero, Branch::Plus)?.0
        }
        _ => return Err(EphError::Invalid("focal disk forms are parabolic only")),
    };
    Ok(factor * l2)
}

/// Membership in the image of the upper half-plane, {−σ̆·l² < 1} with the
/// centre form; the parabolic-parabolic disk is v > −1.
pub fn in_unit_disk<T: Scalar>(kind: CayleyKind, p: &(T, T)) -> bool {
    if kind.is_parabolic() && kind.sigma_breve == Sign::Zero {
        return p.1 > -T::one();
    }
    disk_value(kind, p, DiskForm::Centre).expect("centre form is defined") < T::one()
}

/// Parabolic cycle map applied to a jet cycle.
pub fn cayley_jet_cycle(c: &JetCycle, sigma_breve: Sign) -> JetCycle {
    let two_n = c.n.scale(&Rational::two());
    JetCycle {
        k: &c.k - &two_n.scale(&sigma_breve.as_scalar::<Rational>()),
        l: c.l.clone(),
        n: c.n.clone(),
        m: &c.m - &two_n,
    }
}

/// f-brackets of (ic ⊣ C) before and after the parabolic transform of
/// flavour σ̆_C; both carry the factor n of order 2.
pub fn inf_f_brackets(ic: &InfCycle, c: &Cycle<Rational>, flavour: Sign) -> (Jet, Jet) {
    let cj = jet_lift(c);
    let sb = ic.ctx.sigma_breve;
    let before = f_bracket(&ic.cycle, &cj, sb);
    let after = f_bracket(&cayley_jet_cycle(&ic.cycle, flavour), &cayley_jet_cycle(&cj, flavour), sb);
    (before, after)
}

/// Whether the focal residual vanishes at orders 0 and 1 identically before
/// and after the transform.
pub fn inf_f_orthogonality_preserved(ic: &InfCycle, c: &Cycle<Rational>, flavour: Sign) -> bool {
    let (b, a) = inf_f_brackets(ic, c, flavour);
    let at_least = |j: &Jet, k: usize| j.order().is_none_or(|o| o >= k);
    (2..JET_LEN).all(|k| at_least(&b, k + 1) == at_least(&a, k + 1))
}

/// Constant jet cycle of an exact cycle.
pub fn jet_lift(c: &Cycle<Rational>) -> JetCycle {
    JetCycle {
        k: Jet::constant(c.k.clone()),
        l: Jet::constant(c.l.clone()),
        n: Jet::constant(c.n.clone()),
        m: Jet::constant(c.m.clone()),
    }
}
