//! Acceptance criteria 1–9, one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_FAILURES` are expected to print FAIL; the target
//! exits nonzero if any other criterion fails or a known failure starts passing.

use std::process::Command;
use std::time::{Duration, Instant};

use eph::cayley::{cayley_cycle, cayley_point, cayley_sl2, unit_cycle, CayleyKind};
use eph::cycles::sl2_transform;
use eph::metric::{
    critical_point, direction_dependent_factor, direction_dependent_limit, direction_spread, distance_extremum_oracle,
    distance_sq, parabolic_focus_factor, parabolic_focus_limit, probe_directions, LengthKind,
};
use eph::moebius::moebius_apply;
use eph::relations::Branch;
use eph::{CliffMatrix, CliffNum, CycleContext, ExtendedPoint, Rational, Scalar, Sign, SL2};
use eph_cli::figures::{figure_scenes, FIGURES};
use eph_cli::random;
use eph_cli::verify::{run_group, VerifyOptions};
use rand::Rng;

type Q = Rational;

/// Criteria that fail for reasons recorded in the project notes.
const KNOWN_FAILURES: &[u32] = &[4];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn main() {
    let criteria: [(u32, &str, fn() -> Verdict); 9] = [
        (1, "incidence intertwining", intertwining),
        (2, "SL2 invariants", invariants),
        (3, "distance oracle", distance_oracle),
        (4, "conformality matrix", conformality),
        (5, "parabolic focal limits", focal_limits),
        (6, "infinitesimal cycles", infinitesimal),
        (7, "Cayley transforms", cayley),
        (8, "figures", figures),
        (9, "end-to-end verify", end_to_end),
    ];
    let mut unexpected = Vec::new();
    for (n, name, f) in criteria {
        let start = Instant::now();
        let v = f();
        let secs = start.elapsed().as_secs_f64();
        let status = if v.pass { "PASS" } else { "FAIL" };
        let known = KNOWN_FAILURES.contains(&n);
        let tag = match (v.pass, known) {
            (false, true) => " [known]",
            (true, true) => " [listed as known failure but passed]",
            _ => "",
        };
        println!("criterion {n} ({name}): {status}{tag} ({secs:.1} s) {}", v.detail);
        if v.pass == known {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        println!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}

fn intertwining() -> Verdict {
    let mut r = random::gen(101);
    let start = Instant::now();
    let (mut tested, mut incident, mut failures) = (0, 0, 0);
    for sigma in Sign::ALL {
        for sb in Sign::ALL {
            let ctx = CycleContext::new(sigma, sb, Sign::Plus, sb);
            let mut done = 0;
            while done < 500 {
                let g = random::sl2(&mut r);
                let p = random::point(&mut r);
                let c = if done % 2 == 0 { random::cycle_through(&mut r, &p, sigma) } else { random::cycle(&mut r) };
                let Some(gp) = moebius_apply(&g, &ExtendedPoint::finite(p.0.clone(), p.1.clone()), sigma).as_finite() else {
                    continue;
                };
                let before = c.passes(&p, sigma);
                if before != sl2_transform(&c, &g, &ctx).passes(&gp, sigma) {
                    failures += 1;
                }
                incident += before as usize;
                tested += 1;
                done += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        failures == 0 && secs <= 60.0,
        format!("{tested} instances over 9 (σ, σ̆), {incident} incident, {failures} failures, {secs:.1} s"),
    )
}

fn invariants() -> Verdict {
    let groups = [
        "relations.orthogonality-invariance",
        "relations.f-orthogonality-invariance",
        "cycles.det-invariance",
        "cycles.self-adjoint-invariance",
        "cycles.real-line-invariance",
    ];
    let opts = VerifyOptions::new(102, 500);
    let mut parts = Vec::new();
    let mut ok = true;
    for id in groups {
        let rep = run_group(id, &opts).expect("known group");
        ok &= rep.ok() && rep.combinations == 27 && rep.tested == 27 * 500;
        parts.push(format!("{id} {}/{}", rep.passes, rep.tested));
    }
    verdict(ok, parts.join(", "))
}

fn distance_oracle() -> Verdict {
    let mut r = random::gen(103);
    let (mut tested, mut worst_value, mut worst_at, mut midpoint_failures) = (0, 0.0f64, 0.0f64, 0);
    for sigma in [Sign::Minus, Sign::Plus] {
        for sb in Sign::ALL {
            let mut done = 0;
            while done < 100 {
                let p1 = (r.gen_range(-2.0..2.0), r.gen_range(0.1..2.0));
                let p2 = (r.gen_range(-2.0..2.0), r.gen_range(0.1..2.0));
                let (Ok(closed), Ok(l0)) = (distance_sq(&p1, &p2, sigma, sb), critical_point::<f64>(&p1, &p2, sigma, sb)) else {
                    continue;
                };
                if l0.abs() > 50.0 {
                    continue;
                }
                let oracle = distance_extremum_oracle(p1, p2, sigma, sb);
                worst_value = worst_value.max(rel(closed, oracle.value));
                worst_at = worst_at.max((l0 - oracle.at).abs() / (1.0 + l0.abs()));
                if sigma.times(sb) == Sign::Plus && (l0 - (p1.0 + p2.0) / 2.0).abs() > 1e-12 {
                    midpoint_failures += 1;
                }
                tested += 1;
                done += 1;
            }
        }
    }
    verdict(
        worst_value < 1e-6 && worst_at < 1e-8 && midpoint_failures == 0,
        format!("{tested} pairs over 6 (σ, σ̆), worst relative value {worst_value:.1e}, worst critical point {worst_at:.1e}"),
    )
}

#[derive(Default)]
struct Tally {
    conformal: Vec<String>,
    dependent: Vec<String>,
    untestable: Vec<String>,
}

fn conformality() -> Verdict {
    let dirs = probe_directions();
    let mut r = random::gen(104);
    let mut probes = vec![(SL2::new_unchecked(1.2, 0.7, -0.4, 0.6), (0.3, 0.8))];
    while probes.len() < 5 {
        let g = random::f64_sl2(&mut r);
        let y = (r.gen_range(-1.0..1.0), r.gen_range(0.3..1.5));
        // the image stays in the upper half-plane for every σ
        let w = g.c * y.0 + g.d;
        if w * w - (g.c * y.1).powi(2) >= 0.1 {
            probes.push((g, y));
        }
    }
    let mut claimed = Tally::default();
    let mut excluded = Tally::default();
    for sigma in Sign::ALL {
        for sb in Sign::ALL {
            let mut cases: Vec<(LengthKind, bool)> = Vec::new();
            cases.push((LengthKind::Distance, sigma == Sign::Zero || sigma.times(sb) == Sign::Plus));
            for vs in Sign::ALL {
                cases.push((LengthKind::FromCentre(vs), true));
            }
            for vs in [Sign::Minus, Sign::Plus] {
                for br in [Branch::Plus, Branch::Minus] {
                    cases.push((LengthKind::FromFocus(vs, br), true));
                }
            }
            cases.push((LengthKind::FromFocus(Sign::Zero, Branch::Plus), false));
            for (kind, is_claimed) in cases {
                let label = format!("{kind:?} σ={sigma} σ̆={sb}");
                let spreads: Vec<f64> = probes
                    .iter()
                    // probes with fewer than two defined directions say nothing
                    .filter_map(|(g, y)| direction_spread(kind, g, *y, &dirs, sigma, sb).relative_spread())
                    .collect();
                let tally = if is_claimed { &mut claimed } else { &mut excluded };
                if spreads.is_empty() {
                    tally.untestable.push(label);
                } else if spreads.iter().all(|&s| s <= 1e-5) {
                    tally.conformal.push(label);
                } else if spreads.iter().any(|&s| s > 1e-3) {
                    tally.dependent.push(label);
                } else {
                    tally.untestable.push(format!("{label} (spread between tolerances)"));
                }
            }
        }
    }
    let pass = claimed.dependent.is_empty() && excluded.conformal.is_empty() && excluded.untestable.is_empty();
    let mut detail = format!(
        "claimed: {} conformal, {} direction-dependent, {} untestable; excluded: {} direction-dependent, {} conformal",
        claimed.conformal.len(),
        claimed.dependent.len(),
        claimed.untestable.len(),
        excluded.dependent.len(),
        excluded.conformal.len()
    );
    if !claimed.dependent.is_empty() {
        detail.push_str(&format!("; claimed but direction-dependent: {}", claimed.dependent.join(", ")));
    }
    if std::env::var_os("EPH_ACCEPTANCE_VERBOSE").is_some() {
        detail.push_str(&format!("; untestable: {}", claimed.untestable.join(", ")));
    }
    verdict(pass, detail)
}

fn focal_limits() -> Verdict {
    let mut r = random::gen(105);
    let (mut worst_focus, mut worst_dir) = (0.0f64, 0.0f64);
    let mut done = 0;
    while done < 20 {
        let g = random::f64_sl2(&mut r);
        let y = (r.gen_range(-1.0..1.0), r.gen_range(0.3..1.5));
        if (g.c * y.0 + g.d).abs() < 0.1 {
            continue;
        }
        for sb in Sign::ALL {
            let lim = parabolic_focus_limit(&g, y, 0.4, 1e6, sb).unwrap();
            worst_focus = worst_focus.max(rel(lim, parabolic_focus_factor(&g, &y.0)));
        }
        let a: f64 = r.gen_range(0.2..2.9);
        let dir = (a.cos(), a.sin());
        for sigma in Sign::ALL {
            if let (Ok(lim), Ok(want)) =
                (direction_dependent_limit(&g, y, dir, sigma), direction_dependent_factor(&g, &y, &dir, sigma))
            {
                worst_dir = worst_dir.max(rel(lim, want));
            }
        }
        done += 1;
    }
    verdict(
        worst_focus < 1e-6 && worst_dir < 1e-6,
        format!("20 random g: focal limit worst {worst_focus:.1e}, direction-dependent formula worst {worst_dir:.1e}"),
    )
}

fn infinitesimal() -> Verdict {
    let groups = [
        "infinitesimal.det",
        "infinitesimal.sl2-order",
        "infinitesimal.conjugation-order",
        "infinitesimal.focus-displacement",
        "infinitesimal.orthogonality-residuals",
    ];
    let opts = VerifyOptions::new(106, 200);
    let mut ok = true;
    let mut parts = Vec::new();
    for id in groups {
        let rep = run_group(id, &opts).expect("known group");
        ok &= rep.ok() && rep.tested == rep.combinations * 200;
        parts.push(format!("{} {}/{}", id.trim_start_matches("infinitesimal."), rep.passes, rep.tested));
    }
    verdict(ok, parts.join(", "))
}

fn diagonal_exp(m: &CliffMatrix<Q>, c: &Q, s: &Q) -> bool {
    // c + s·e1e0
    let d = CliffNum::new(c.clone(), Q::from_int(0), Q::from_int(0), -s.clone(), m.sigma());
    m.m[0][0] == d && m.m[1][1] == d && m.m[0][1].is_zero() && m.m[1][0].is_zero()
}

fn cayley() -> Verdict {
    let mut worst: f64 = 0.0;
    for kind in CayleyKind::all() {
        let uc = unit_cycle::<f64>(kind);
        let scale = uc.coords().iter().fold(0.0f64, |a, x| a.max(x.abs()));
        for i in 0..512 {
            let u = -6.0 + 12.0 * i as f64 / 511.0;
            if let Some(p) = cayley_point(kind, &ExtendedPoint::finite(u, 0.0)).as_finite() {
                let size = 1.0 + p.0 * p.0 + p.1 * p.1;
                worst = worst.max(uc.value_at(&p, kind.sigma).abs() / scale / size);
            }
        }
    }
    let mut diag = true;
    for tau in [Q::from_ratio(1, 2), Q::from_ratio(-2, 7), Q::from_int(3), Q::from_ratio(5, 11)] {
        let k = SL2::rotation_rational(tau).inverse();
        diag &= diagonal_exp(&cayley_sl2(&k, CayleyKind::ELLIPTIC).unwrap(), &k.a, &k.c);
    }
    for t in [Q::from_ratio(1, 2), Q::from_ratio(-2, 7), Q::from_ratio(3, 5)] {
        let b = SL2::boost_rational(t).unwrap();
        diag &= diagonal_exp(&cayley_sl2(&b, CayleyKind::HYPERBOLIC).unwrap(), &b.a, &b.b);
    }
    // fit cross-check and the sign-convention finding
    let run = || {
        let mut r = random::gen(107);
        let mut lines = Vec::new();
        let mut fits = true;
        for kind in [CayleyKind::PARABOLIC_E, CayleyKind::PARABOLIC_P, CayleyKind::PARABOLIC_H] {
            let mut notes = 0;
            for _ in 0..20 {
                let c = random::cycle(&mut r);
                let img = cayley_cycle(&c, kind);
                fits &= img.fit_agrees != Some(false);
                notes += img.note.is_some() as usize;
            }
            lines.push(format!("{} {notes}/20 noted", kind.name()));
        }
        (fits, lines.join(", "))
    };
    let (fits, finding) = run();
    let deterministic = run().1 == finding;
    let h_noted = !finding.contains("parabolic-h 0/20");
    verdict(
        worst <= 1e-9 && diag && fits && deterministic && h_noted,
        format!("real axis worst {worst:.1e}, K and A′ diagonal: {diag}, fits agree: {fits}, sign convention: {finding}"),
    )
}

fn eph_bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_eph"));
    cmd.env_remove("EPH_SEED");
    cmd
}

fn figures() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut identical = true;
    let mut rendered = 0;
    for name in FIGURES {
        let scenes = figure_scenes(name).unwrap();
        worst = worst.max(scenes.iter().map(|s| s.max_residual()).fold(0.0, f64::max));
        let a = eph_bin().args(["figure", name]).output().unwrap();
        let b = eph_bin().args(["figure", name]).output().unwrap();
        identical &= a.stdout == b.stdout;
        if a.status.success() && a.stdout.starts_with(b"<svg") {
            rendered += 1;
        }
    }
    verdict(
        rendered == FIGURES.len() && worst <= 1e-9 && identical,
        format!("{rendered}/{} rendered, worst vertex residual {worst:.1e}, byte-identical reruns: {identical}", FIGURES.len()),
    )
}

fn end_to_end() -> Verdict {
    let start = Instant::now();
    let out = eph_bin().args(["verify", "--seed", "1"]).output().unwrap();
    let took = start.elapsed();
    let summary = String::from_utf8_lossy(&out.stdout).lines().last().unwrap_or("").to_string();
    verdict(
        out.status.code() == Some(0) && took <= Duration::from_secs(300),
        format!("exit {:?}, {:.1} s, {summary}", out.status.code(), took.as_secs_f64()),
    )
}
