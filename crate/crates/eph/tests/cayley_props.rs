mod common;

use common::*;
use eph::cayley::*;
use eph::cycles::center;
use eph::infinitesimal::infinitesimal_cycle;
use eph::moebius::moebius_apply;
use eph::{CliffNum, Cycle, CycleContext, ExtendedPoint, Scalar, Sign, SL2};
use rand::Rng;

fn fin(p: &(Q, Q)) -> ExtendedPoint<Q> {
    ExtendedPoint::finite(p.0.clone(), p.1.clone())
}

#[test]
fn cayley_intertwines_the_actions() {
    let mut r = rng(11);
    for kind in [CayleyKind::ELLIPTIC, CayleyKind::HYPERBOLIC] {
        let mut checked = 0;
        while checked < 200 {
            let g = sl2(&mut r);
            let p = point(&mut r);
            let lhs = cayley_point(kind, &moebius_apply(&g, &fin(&p), kind.sigma));
            let Some(w) = cayley_point(kind, &fin(&p)).as_finite() else { continue };
            let gc = cayley_sl2(&g, kind).unwrap();
            let Ok(img) = gc.act(&CliffNum::vector(w.0, w.1, kind.sigma)) else { continue };
            let Some(lhs) = lhs.as_finite() else { continue };
            assert_eq!(img.c1, q(0));
            assert_eq!(img.c_e01, q(0));
            assert_eq!((img.c_e0, img.c_e1), lhs, "{} g={g} p={p:?}", kind.name());
            checked += 1;
        }
    }
}

#[test]
fn elliptic_disk_is_invariant() {
    let mut r = rng(12);
    let kind = CayleyKind::ELLIPTIC;
    for _ in 0..100 {
        let p = upper_point(&mut r);
        let g = sl2(&mut r);
        assert!(in_unit_disk(kind, &cayley_point(kind, &fin(&p)).as_finite().unwrap()));
        let gp = moebius_apply(&g, &fin(&p), kind.sigma);
        assert!(in_unit_disk(kind, &cayley_point(kind, &gp).as_finite().unwrap()));
    }
}

#[test]
fn hyperbolic_disk_is_not_invariant() {
    let kind = CayleyKind::HYPERBOLIC;
    let p = (q(-1), q(3));
    let g = SL2::new(Q::from_ratio(1, 2), Q::from_ratio(7, 4), q(-5), Q::from_ratio(-31, 2)).unwrap();
    let w = cayley_point(kind, &fin(&p)).as_finite().unwrap();
    assert_eq!(w, (Q::from_ratio(-2, 15), Q::from_ratio(7, 15)));
    assert!(in_unit_disk(kind, &w));
    let gp = moebius_apply(&g, &fin(&p), kind.sigma);
    assert_eq!(gp, ExtendedPoint::finite(Q::from_ratio(-25, 306), Q::from_ratio(-4, 153)));
    let w2 = cayley_point(kind, &gp).as_finite().unwrap();
    assert_eq!(w2, (Q::from_ratio(-300, 1729), Q::from_ratio(-1847, 1729)));
    assert!(!in_unit_disk(kind, &w2));
}

#[test]
fn real_axis_lands_on_unit_cycles() {
    for kind in CayleyKind::all() {
        let uc = unit_cycle::<f64>(kind);
        for i in 0..512 {
            let u = -6.0 + 12.0 * i as f64 / 511.0;
            if let Some(p) = cayley_point(kind, &ExtendedPoint::finite(u, 0.0)).as_finite() {
                let scale = 1.0 + p.0 * p.0 + p.1 * p.1;
                assert!(uc.value_at(&p, kind.sigma).abs() <= 1e-9 * scale, "{} u={u}", kind.name());
            }
        }
    }
}

#[test]
fn n_orbits_are_concentric() {
    for (kind, centre_v) in [(CayleyKind::PARABOLIC_E, Some(0.5)), (CayleyKind::PARABOLIC_P, None), (CayleyKind::PARABOLIC_H, Some(-0.5))] {
        for v0 in [0.3, 1.0, 2.5] {
            let pts: Vec<(f64, f64)> = (0..16)
                .map(|i| {
                    let p = ExtendedPoint::finite(-3.0 + 0.4 * i as f64, v0);
                    cayley_point(kind, &p).as_finite().unwrap()
                })
                .collect();
            let fit = fit_cycle_f64(&pts, Sign::Zero);
            match centre_v {
                Some(cv) => {
                    let (u, v) = center(&fit, Sign::Minus).as_finite().unwrap();
                    assert!(u.abs() < 1e-7 && (v - cv).abs() < 1e-7, "{} {v0}: ({u}, {v})", kind.name());
                }
                None => assert!(fit.k.abs() < 1e-7, "{}", kind.name()),
            }
        }
    }
}

#[test]
fn n_prime_orbits_keep_focal_length() {
    for kind in [CayleyKind::PARABOLIC_E, CayleyKind::PARABOLIC_P, CayleyKind::PARABOLIC_H] {
        for p in [(0.3, 0.7), (-1.0, 2.0), (2.0, 0.25)] {
            let pts: Vec<(f64, f64)> = (0..16)
                .filter_map(|i| {
                    let g = SL2::lower_shift(-1.5 + 0.2 * i as f64);
                    let gp = moebius_apply(&g, &ExtendedPoint::finite(p.0, p.1), Sign::Zero);
                    cayley_point(kind, &gp).as_finite()
                })
                .collect();
            assert!(pts.len() >= 15);
            let fit = fit_cycle_f64(&pts, Sign::Zero);
            let lf = |q: &(f64, f64)| q.0 * q.0 / (q.1 + 1.0);
            let first = lf(&pts[0]);
            for q in &pts {
                let scale = 1.0 + q.0 * q.0 + q.1.abs();
                assert!(fit.value_at(q, Sign::Zero).abs() < 1e-7 * scale, "{} {p:?} {q:?}", kind.name());
                assert!((lf(q) - first).abs() < 1e-7, "{} {p:?}", kind.name());
            }
        }
    }
}

#[test]
fn printed_parabolic_map_holds_only_for_elliptic_flavour() {
    let mut r = rng(13);
    for _ in 0..50 {
        let c = cycle(&mut r);
        if c.n == q(0) {
            continue;
        }
        assert!(cayley_cycle(&c, CayleyKind::PARABOLIC_E).note.is_none());
        for kind in [CayleyKind::PARABOLIC_P, CayleyKind::PARABOLIC_H] {
            let img = cayley_cycle(&c, kind);
            assert!(img.note.is_some());
            assert_ne!(img.fit_agrees, Some(false));
        }
    }
}

#[test]
fn cycle_map_matches_points() {
    let mut r = rng(14);
    for kind in CayleyKind::all() {
        for _ in 0..40 {
            let p = point(&mut r);
            let c = cycle_through(&mut r, &p, kind.sigma);
            let img = cayley_cycle(&c, kind).cycle;
            if let Some(w) = cayley_point(kind, &fin(&p)).as_finite() {
                assert!(img.passes(&w, kind.sigma), "{} c={c} p={p:?}", kind.name());
            }
        }
    }
}

#[test]
fn f_orthogonality_of_infinitesimal_cycles_is_preserved() {
    let mut r = rng(15);
    for ctx in CycleContext::all_with_varsigma() {
        if ctx.sigma != Sign::Zero || ctx.sigma_breve == Sign::Zero {
            continue;
        }
        for flavour in [Sign::Minus, Sign::Zero, Sign::Plus] {
            for _ in 0..30 {
                let (u0, v0) = upper_point(&mut r);
                let ic = infinitesimal_cycle(&u0, &v0, &ctx).unwrap();
                let mut c = cycle_through(&mut r, &(u0.clone(), v0.clone()), Sign::Zero);
                if r.gen_bool(0.5) {
                    c = Cycle::new_unchecked(c.k, c.l, c.n, c.m + nonzero_rat(&mut r));
                }
                assert!(inf_f_orthogonality_preserved(&ic, &c, flavour), "{ctx:?} {flavour:?} {c}");
            }
        }
    }
}

#[test]
fn parabolic_ideal_points_shift_their_slope() {
    // (0 : λ : 1) is the limit of (u, λu²) as u → ∞
    for kind in [CayleyKind::PARABOLIC_E, CayleyKind::PARABOLIC_P, CayleyKind::PARABOLIC_H] {
        let p = ExtendedPoint::ideal(q(0), Q::from_ratio(3, 2), q(1)).unwrap();
        let sb: Q = kind.sigma_breve.as_scalar();
        let img = cayley_point(kind, &p);
        assert_eq!(img, ExtendedPoint::ideal(q(0), Q::from_ratio(3, 2) - sb, q(1)).unwrap());
        assert_eq!(cayley_point_inverse(kind, &img), p);
    }
}
