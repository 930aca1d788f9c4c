//! Scenes of cycles and their deterministic SVG rendering.

use std::f64::consts::PI;
use std::fmt::Write as _;

use eph::cayley::{cayley_cycle, in_unit_disk, unit_cycle, CayleyKind};
use eph::cycles::{center, focus, zero_radius_cycle};
use eph::moebius::k_orbit_cycle;
use eph::relations::{cycle_conjugate, f_ghost_cycle, f_trace, ghost_cycle, orthogonality_form};
use eph::{Cycle, CycleContext, EphError, Sign};

/// Vertices per sampled curve.
pub const SAMPLES: usize = 512;

pub const FIGURES: [&str; 10] = [
    "subgroup-orbits-AN",
    "k-orbits",
    "eph-cycle",
    "zero-radius",
    "ortho-grid",
    "f-ortho-grid",
    "inversion-grid",
    "unit-disks",
    "concentric-orbits",
    "cayley-disks",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub umin: f64,
    pub umax: f64,
    pub vmin: f64,
    pub vmax: f64,
}

impl Viewport {
    pub const DEFAULT: Viewport = Viewport { umin: -3.0, umax: 3.0, vmin: -3.0, vmax: 3.0 };

    pub fn new(umin: f64, umax: f64, vmin: f64, vmax: f64) -> Option<Self> {
        (umin < umax && vmin < vmax).then_some(Viewport { umin, umax, vmin, vmax })
    }

    /// The viewport grown by half its size on every side.
    fn widened(&self) -> Viewport {
        let (du, dv) = ((self.umax - self.umin) / 2.0, (self.vmax - self.vmin) / 2.0);
        Viewport { umin: self.umin - du, umax: self.umax + du, vmin: self.vmin - dv, vmax: self.vmax + dv }
    }

    fn contains(&self, p: &(f64, f64)) -> bool {
        (self.umin..=self.umax).contains(&p.0) && (self.vmin..=self.vmax).contains(&p.1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Solid,
    Dashed,
    Accent,
    Faint,
}

impl Style {
    fn attrs(self) -> &'static str {
        match self {
            Style::Solid => r##"stroke="#1f4e79" stroke-width="1.2""##,
            Style::Dashed => r##"stroke="#b03a2e" stroke-width="1.2" stroke-dasharray="5 3""##,
            Style::Accent => r##"stroke="#2e7d32" stroke-width="2""##,
            Style::Faint => r##"stroke="#9e9e9e" stroke-width="0.8""##,
        }
    }

    fn fill(self) -> &'static str {
        match self {
            Style::Solid => "#1f4e79",
            Style::Dashed => "#b03a2e",
            Style::Accent => "#2e7d32",
            Style::Faint => "#bdbdbd",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Cycle { cycle: Cycle<f64>, sigma: Sign, style: Style },
    Polyline { points: Vec<(f64, f64)>, style: Style },
    Point { at: (f64, f64), label: Option<String>, style: Style },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub title: String,
    pub viewport: Viewport,
    pub elements: Vec<Element>,
}

impl Scene {
    pub fn new(title: impl Into<String>) -> Self {
        Scene { title: title.into(), viewport: Viewport::DEFAULT, elements: Vec::new() }
    }

    pub fn cycle(&mut self, cycle: Cycle<f64>, sigma: Sign, style: Style) {
        self.elements.push(Element::Cycle { cycle, sigma, style });
    }

    pub fn point(&mut self, at: (f64, f64), label: Option<&str>, style: Style) {
        self.elements.push(Element::Point { at, label: label.map(str::to_string), style });
    }

    /// Largest |cycle equation| over the vertices of every sampled cycle,
    /// with each cycle scaled to unit max-norm.
    pub fn max_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for e in &self.elements {
            if let Element::Cycle { cycle, sigma, .. } = e {
                let c = unit_norm(cycle);
                for curve in sample_cycle_in(cycle, *sigma, SAMPLES, &self.viewport).unwrap_or_default() {
                    for p in &curve.points {
                        worst = worst.max(c.value_at(p, *sigma).abs());
                    }
                }
            }
        }
        worst
    }
}

/// One connected piece of a sampled cycle.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Curve {
    pub points: Vec<(f64, f64)>,
    pub closed: bool,
}

fn unit_norm(c: &Cycle<f64>) -> Cycle<f64> {
    let s = c.coords().iter().fold(0.0f64, |a, x| a.max(x.abs()));
    c.scale(&(1.0 / s))
}

/// Samples the real points of a cycle over the default viewport.
pub fn sample_cycle(c: &Cycle<f64>, sigma: Sign, n: usize) -> eph::Result<Vec<Curve>> {
    sample_cycle_in(c, sigma, n, &Viewport::DEFAULT)
}

/// Samples k(u² − σv²) − 2lu − 2nv + m = 0 with `n` vertices per piece.
///
/// Circles are parameterised by angle; every other cycle is solved for v
/// over a u-grid covering the widened viewport, one piece per root and run.
pub fn sample_cycle_in(c: &Cycle<f64>, sigma: Sign, n: usize, vp: &Viewport) -> eph::Result<Vec<Curve>> {
    if n < 8 {
        return Err(EphError::Invalid("at least 8 samples are needed"));
    }
    let c = unit_norm(c);
    let curves = if sigma == Sign::Minus && c.k != 0.0 { sample_circle(&c, n)? } else { sample_by_u(&c, sigma, n, vp) };
    if curves.iter().all(|cv| cv.points.is_empty()) {
        return Err(EphError::EmptyLocus);
    }
    Ok(curves.into_iter().filter(|cv| !cv.points.is_empty()).collect())
}

fn sample_circle(c: &Cycle<f64>, n: usize) -> eph::Result<Vec<Curve>> {
    let (cu, cv) = (c.l / c.k, c.n / c.k);
    let r2 = (c.l * c.l + c.n * c.n - c.m * c.k) / (c.k * c.k);
    if r2 < 0.0 {
        return Err(EphError::EmptyLocus);
    }
    if r2 == 0.0 {
        return Ok(vec![Curve { points: vec![(cu, cv)], closed: false }]);
    }
    let r = r2.sqrt();
    let points = (0..n)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / n as f64;
            (cu + r * t.cos(), cv + r * t.sin())
        })
        .collect();
    Ok(vec![Curve { points, closed: true }])
}

fn sample_by_u(c: &Cycle<f64>, sigma: Sign, n: usize, vp: &Viewport) -> Vec<Curve> {
    let wide = vp.widened();
    let s = sigma.as_scalar::<f64>();
    // A v² + B v + C(u) = 0
    let a = -s * c.k;
    let b = -2.0 * c.n;
    let cu = |u: f64| c.k * u * u - 2.0 * c.l * u + c.m;
    if a == 0.0 && b == 0.0 {
        return vertical_lines(c, n, &wide);
    }
    let mut us: Vec<f64> = (0..n).map(|i| wide.umin + (wide.umax - wide.umin) * i as f64 / (n - 1) as f64).collect();
    if a != 0.0 {
        // where the discriminant B² − 4A·C(u) vanishes the two roots meet
        let (qa, qb, qc) = (-4.0 * a * c.k, 8.0 * a * c.l, b * b - 4.0 * a * c.m);
        us.extend(quadratic_roots(qa, qb, qc).into_iter().filter(|u| (wide.umin..=wide.umax).contains(u)));
        us.sort_by(f64::total_cmp);
        us.dedup();
    }
    let roots = |u: f64| -> Vec<Option<f64>> {
        if a == 0.0 {
            return vec![Some(-cu(u) / b)];
        }
        let disc = b * b - 4.0 * a * cu(u);
        if disc < -1e-12 * (b * b).max(1.0) {
            return vec![None, None];
        }
        let r = disc.max(0.0).sqrt();
        vec![Some((-b + r) / (2.0 * a)), Some((-b - r) / (2.0 * a))]
    };
    let branches = if a == 0.0 { 1 } else { 2 };
    let mut curves = Vec::new();
    for br in 0..branches {
        let mut run = Vec::new();
        for &u in &us {
            match roots(u)[br].map(|v| refine_v(c, sigma, u, v)) {
                Some(v) if wide.contains(&(u, v)) => run.push((u, v)),
                _ => {
                    if !run.is_empty() {
                        curves.push(Curve { points: std::mem::take(&mut run), closed: false });
                    }
                }
            }
        }
        if !run.is_empty() {
            curves.push(Curve { points: run, closed: false });
        }
    }
    curves
}

/// Newton steps on the cycle equation in v.
fn refine_v(c: &Cycle<f64>, sigma: Sign, u: f64, mut v: f64) -> f64 {
    let s = sigma.as_scalar::<f64>();
    for _ in 0..2 {
        let f = c.value_at(&(u, v), sigma);
        let df = -2.0 * s * c.k * v - 2.0 * c.n;
        if df.abs() < 1e-9 {
            break;
        }
        v -= f / df;
    }
    v
}

/// Real roots of a·x² + b·x + c (a may vanish).
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b == 0.0 { vec![] } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a, c / q]
}

/// The case n = 0 and σk = 0: the roots of ku² − 2lu + m are vertical lines.
fn vertical_lines(c: &Cycle<f64>, n: usize, wide: &Viewport) -> Vec<Curve> {
    quadratic_roots(c.k, -2.0 * c.l, c.m)
        .into_iter()
        .map(|u| {
            let points = (0..n).map(|i| (u, wide.vmin + (wide.vmax - wide.vmin) * i as f64 / (n - 1) as f64)).collect();
            Curve { points, closed: false }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownFigure(pub String);

impl std::fmt::Display for UnknownFigure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "unknown figure {:?}; known: {}", self.0, FIGURES.join(", "))
    }
}

impl std::error::Error for UnknownFigure {}

/// The panels of a named figure.
pub fn figure_scenes(name: &str) -> Result<Vec<Scene>, UnknownFigure> {
    Ok(match name {
        "subgroup-orbits-AN" => subgroup_orbits(),
        "k-orbits" => k_orbits(),
        "eph-cycle" => eph_cycle(),
        "zero-radius" => zero_radius(),
        "ortho-grid" => ortho_grid(false),
        "f-ortho-grid" => ortho_grid(true),
        "inversion-grid" => inversion_grid(),
        "unit-disks" => unit_disks(),
        "concentric-orbits" => concentric_orbits(),
        "cayley-disks" => cayley_disks(),
        other => return Err(UnknownFigure(other.to_string())),
    })
}

pub fn render_figure(name: &str) -> Result<String, UnknownFigure> {
    Ok(render_svg(&figure_scenes(name)?))
}

fn cyc(k: f64, l: f64, n: f64, m: f64) -> Cycle<f64> {
    Cycle::new_unchecked(k, l, n, m)
}

/// u = a as the flat cycle (0, 1, 0, 2a).
fn vertical(a: f64) -> Cycle<f64> {
    cyc(0.0, 1.0, 0.0, 2.0 * a)
}

/// v = b as the flat cycle (0, 0, 1, 2b).
fn horizontal(b: f64) -> Cycle<f64> {
    cyc(0.0, 0.0, 1.0, 2.0 * b)
}

fn space_name(s: Sign) -> &'static str {
    match s {
        Sign::Minus => "elliptic",
        Sign::Zero => "parabolic",
        Sign::Plus => "hyperbolic",
    }
}

fn subgroup_orbits() -> Vec<Scene> {
    let mut a = Scene::new("A-orbits");
    for i in 1..8 {
        let t = PI * i as f64 / 8.0;
        a.cycle(cyc(0.0, -t.sin(), t.cos(), 0.0), Sign::Minus, Style::Solid);
    }
    a.point((0.0, 1.0), Some("i"), Style::Accent);
    let mut n = Scene::new("N-orbits");
    for b in [0.5, 1.0, 1.5, 2.0, 2.5] {
        n.cycle(horizontal(b), Sign::Minus, Style::Solid);
    }
    n.point((0.0, 1.0), Some("i"), Style::Accent);
    vec![a, n]
}

fn k_orbits() -> Vec<Scene> {
    Sign::ALL
        .iter()
        .map(|&s| {
            let mut sc = Scene::new(format!("K-orbits, {}", space_name(s)));
            for t in [0.25, 0.5, 1.0, 1.5, 2.0, 2.5] {
                if let Ok((c, _)) = k_orbit_cycle(&t, s) {
                    sc.cycle(c, s, Style::Solid);
                }
                sc.point((0.0, t), None, Style::Accent);
            }
            sc
        })
        .collect()
}

fn eph_cycle() -> Vec<Scene> {
    let c = cyc(1.0, 0.0, 1.0, -2.0);
    Sign::ALL
        .iter()
        .map(|&s| {
            let mut sc = Scene::new(format!("(1, 0, 1, -2), {}", space_name(s)));
            sc.cycle(c.clone(), s, Style::Solid);
            if let Some(p) = center(&c, s).as_finite() {
                sc.point(p, Some("centre"), Style::Accent);
            }
            if let Ok((f, _)) = focus(&c, s) {
                sc.point(f, Some("focus"), Style::Dashed);
            }
            sc
        })
        .collect()
}

fn zero_radius() -> Vec<Scene> {
    let pts = [(-1.0, 1.0), (1.0, 1.5)];
    let mut out = Vec::new();
    for sb in Sign::ALL {
        for s in Sign::ALL {
            let mut sc = Scene::new(format!("σ̆ = {sb} in the {} plane", space_name(s)));
            for p in pts {
                sc.cycle(zero_radius_cycle(p, sb), s, Style::Solid);
                sc.point(p, None, Style::Accent);
            }
            out.push(sc);
        }
    }
    out
}

/// Solves for the cycle (1, t, n, m) through p with `form` vanishing, where
/// `form` is linear in the cycle.
fn pencil_member(p: (f64, f64), t: f64, sigma: Sign, form: impl Fn(&Cycle<f64>) -> f64) -> Option<Cycle<f64>> {
    let s = sigma.as_scalar::<f64>();
    let q = p.0 * p.0 - s * p.1 * p.1;
    // incidence: m = −q + 2tu + 2nv
    let a = form(&cyc(1.0, t, 0.0, 0.0));
    let b = form(&cyc(0.0, 0.0, 1.0, 0.0));
    let c = form(&cyc(0.0, 0.0, 0.0, 1.0));
    let m0 = -q + 2.0 * t * p.0;
    let den = b + 2.0 * c * p.1;
    if den.abs() < 1e-12 {
        return None;
    }
    let n = -(a + c * m0) / den;
    Some(cyc(1.0, t, n, m0 + 2.0 * n * p.1))
}

fn ortho_grid(focal: bool) -> Vec<Scene> {
    let base = cyc(1.0, 0.0, 1.0, -2.0);
    let through = (1.5, 0.5);
    let mut out = Vec::new();
    for s in Sign::ALL {
        for sb in Sign::ALL {
            let ctx = CycleContext::new(s, sb, Sign::Plus, sb);
            let mut sc = Scene::new(format!("σ = {s}, σ̆ = {sb}"));
            sc.cycle(base.clone(), s, Style::Accent);
            for i in -4..=4 {
                let t = 0.5 * i as f64;
                let member = if focal {
                    pencil_member(through, t, s, |x| f_trace(&base, x, &ctx))
                } else {
                    pencil_member(through, t, s, |x| orthogonality_form(&base, x, &ctx))
                };
                if let Some(m) = member {
                    sc.cycle(m, s, Style::Solid);
                }
            }
            let ghost = if focal { f_ghost_cycle(&base, &ctx) } else { ghost_cycle(&base, &ctx) };
            if let Ok(g) = ghost {
                sc.cycle(g, s, Style::Dashed);
            }
            sc.point(through, None, Style::Accent);
            out.push(sc);
        }
    }
    out
}

fn inversion_grid() -> Vec<Scene> {
    let mirror = cyc(1.0, 0.0, 0.0, -1.0);
    Sign::ALL
        .iter()
        .map(|&s| {
            let ctx = CycleContext::uniform(s);
            let mut sc = Scene::new(format!("inversion, {}", space_name(s)));
            for i in -4..=4 {
                let x = 0.5 * i as f64;
                for line in [vertical(x), horizontal(x)] {
                    sc.cycle(line.clone(), s, Style::Faint);
                    if let Ok(img) = cycle_conjugate(&mirror, &line, &ctx) {
                        sc.cycle(img, s, Style::Solid);
                    }
                }
            }
            sc.cycle(mirror.clone(), s, Style::Dashed);
            sc
        })
        .collect()
}

fn unit_disks() -> Vec<Scene> {
    CayleyKind::all()
        .iter()
        .map(|&kind| {
            let mut sc = Scene::new(format!("unit disk, {}", kind.name()));
            for i in -10..=10 {
                for j in -10..=10 {
                    let p = (0.25 * i as f64, 0.25 * j as f64);
                    let style = if in_unit_disk(kind, &p) { Style::Accent } else { Style::Faint };
                    sc.point(p, None, style);
                }
            }
            sc.cycle(unit_cycle(kind), kind.sigma, Style::Solid);
            sc
        })
        .collect()
}

fn concentric_orbits() -> Vec<Scene> {
    CayleyKind::all()
        .iter()
        .map(|&kind| {
            let mut sc = Scene::new(format!("orbits, {}", kind.name()));
            for t in [0.25, 0.5, 1.0, 2.0, 3.0] {
                // K-orbits for σ ≠ 0, N-orbits in the parabolic plane
                let orbit = if kind.is_parabolic() { Some(horizontal(t)) } else { k_orbit_cycle(&t, kind.sigma).ok().map(|o| o.0) };
                if let Some(o) = orbit {
                    sc.cycle(cayley_cycle(&o, kind).cycle, kind.sigma, Style::Solid);
                }
            }
            sc.cycle(unit_cycle(kind), kind.sigma, Style::Dashed);
            sc
        })
        .collect()
}

fn cayley_disks() -> Vec<Scene> {
    CayleyKind::all()
        .iter()
        .map(|&kind| {
            let mut sc = Scene::new(format!("Cayley image, {}", kind.name()));
            for b in [0.25, 0.5, 1.0, 1.5, 2.0, 3.0] {
                sc.cycle(cayley_cycle(&horizontal(b), kind).cycle, kind.sigma, Style::Solid);
            }
            for a in [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0] {
                sc.cycle(cayley_cycle(&vertical(a), kind).cycle, kind.sigma, Style::Faint);
            }
            sc.cycle(unit_cycle(kind), kind.sigma, Style::Dashed);
            sc
        })
        .collect()
}

const PANEL: f64 = 240.0;
const GAP: f64 = 16.0;
const TITLE: f64 = 18.0;

/// SVG 1.1 document with the scenes in rows of three.
pub fn render_svg(scenes: &[Scene]) -> String {
    let cols = scenes.len().clamp(1, 3);
    let rows = scenes.len().div_ceil(3).max(1);
    let width = cols as f64 * (PANEL + GAP) + GAP;
    let height = rows as f64 * (PANEL + GAP + TITLE) + GAP;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, sc) in scenes.iter().enumerate() {
        let x = GAP + (i % 3) as f64 * (PANEL + GAP);
        let y = GAP + (i / 3) as f64 * (PANEL + GAP + TITLE);
        render_panel(&mut out, i, sc, x, y);
    }
    out.push_str("</svg>\n");
    out
}

fn render_panel(out: &mut String, index: usize, sc: &Scene, x: f64, y: f64) {
    let vp = sc.viewport;
    let to_px = |p: &(f64, f64)| -> (f64, f64) {
        let px = (p.0 - vp.umin) / (vp.umax - vp.umin) * PANEL;
        let py = (vp.vmax - p.1) / (vp.vmax - vp.vmin) * PANEL;
        (px, py)
    };
    let _ = writeln!(out, r#"<g transform="translate({x:.1},{:.1})">"#, y + TITLE);
    let _ = writeln!(
        out,
        r#"<text x="0" y="-5" font-family="sans-serif" font-size="12">{}</text>"#,
        escape(&sc.title)
    );
    let _ = writeln!(out, r#"<clipPath id="clip{index}"><rect width="{PANEL}" height="{PANEL}"/></clipPath>"#);
    let _ = writeln!(out, r##"<rect width="{PANEL}" height="{PANEL}" fill="none" stroke="#424242"/>"##);
    let _ = writeln!(out, r#"<g clip-path="url(#clip{index})" fill="none">"#);
    let (ox, oy) = to_px(&(0.0, 0.0));
    let _ = writeln!(
        out,
        r##"<path d="M0,{oy:.2}H{PANEL}M{ox:.2},0V{PANEL}" stroke="#e0e0e0" stroke-width="0.8"/>"##
    );
    for e in &sc.elements {
        match e {
            Element::Cycle { cycle, sigma, style } => {
                for curve in sample_cycle_in(cycle, *sigma, SAMPLES, &vp).unwrap_or_default() {
                    path(out, &curve.points, curve.closed, *style, &to_px);
                }
            }
            Element::Polyline { points, style } => path(out, points, false, *style, &to_px),
            Element::Point { at, label, style } => {
                let (px, py) = to_px(at);
                let _ = writeln!(out, r#"<circle cx="{px:.2}" cy="{py:.2}" r="2.5" fill="{}"/>"#, style.fill());
                if let Some(l) = label {
                    let _ = writeln!(
                        out,
                        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" fill="black">{}</text>"#,
                        px + 4.0,
                        py - 4.0,
                        escape(l)
                    );
                }
            }
        }
    }
    out.push_str("</g>\n</g>\n");
}

fn path(out: &mut String, pts: &[(f64, f64)], closed: bool, style: Style, to_px: &impl Fn(&(f64, f64)) -> (f64, f64)) {
    if pts.len() == 1 {
        let (px, py) = to_px(&pts[0]);
        let _ = writeln!(out, r#"<circle cx="{px:.2}" cy="{py:.2}" r="2" fill="{}"/>"#, style.fill());
        return;
    }
    let mut d = String::new();
    for (i, p) in pts.iter().enumerate() {
        let (px, py) = to_px(p);
        let _ = write!(d, "{}{px:.2},{py:.2}", if i == 0 { "M" } else { "L" });
    }
    if closed {
        d.push('Z');
    }
    let _ = writeln!(out, r#"<path d="{d}" {}/>"#, style.attrs());
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
