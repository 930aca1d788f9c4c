use eph::cycles::{det_cycle, sl2_transform, sl2_transform_in};
use eph::moebius::moebius_apply;
use eph::relations::{f_orthogonal, f_trace, inversion_point, orthogonal, orthogonality_form};
use eph::{CliffMatrix, CliffNum, Cycle, CycleContext, ExtendedPoint, Rational, Scalar, Sign, SL2};
use num_traits::{One, Zero};
use proptest::prelude::*;

type Q = Rational;

fn small() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Q::from_ratio(n, d))
}

fn nonzero() -> impl Strategy<Value = Q> {
    small().prop_filter("nonzero", |x| *x != Q::from_int(0))
}

fn sign() -> impl Strategy<Value = Sign> {
    prop::sample::select(Sign::ALL.to_vec())
}

fn nonzero_sign() -> impl Strategy<Value = Sign> {
    prop::sample::select(vec![Sign::Minus, Sign::Plus])
}

fn sl2() -> impl Strategy<Value = SL2<Q>> {
    (nonzero(), small(), small()).prop_map(|(a, b, c)| {
        let d = (Q::from_int(1) + b.clone() * c.clone()) / a.clone();
        SL2::new(a, b, c, d).unwrap()
    })
}

fn cliff(sigma: Sign) -> impl Strategy<Value = CliffNum<Q>> {
    (small(), small(), small(), small()).prop_map(move |(a, b, c, d)| CliffNum::new(a, b, c, d, sigma))
}

fn cycle() -> impl Strategy<Value = Cycle<Q>> {
    (small(), small(), small(), small())
        .prop_filter_map("nonzero cycle", |(k, l, n, m)| Cycle::new(k, l, n, m).ok())
}

fn ctx() -> impl Strategy<Value = CycleContext> {
    (sign(), sign(), nonzero_sign()).prop_map(|(s, sb, ss)| CycleContext::new(s, sb, ss, sb))
}

fn cycle_through(k: Q, l: Q, n: Q, p: &(Q, Q), sigma: Sign) -> Option<Cycle<Q>> {
    let s: Q = sigma.as_scalar();
    let m = -(k.clone() * (p.0.sq() - s * p.1.sq()) - Q::two() * l.clone() * p.0.clone() - Q::two() * n.clone() * p.1.clone());
    Cycle::new(k, l, n, m).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn clifford_product_is_associative(s in sign(), a in cliff(Sign::Zero), b in cliff(Sign::Zero), c in cliff(Sign::Zero)) {
        let re = |x: &CliffNum<Q>| CliffNum::new(x.c1.clone(), x.c_e0.clone(), x.c_e1.clone(), x.c_e01.clone(), s);
        let (a, b, c) = (re(&a), re(&b), re(&c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(b.clone() + c.clone()), &a * &b + &a * &c);
    }

    #[test]
    fn clifford_inverse_is_two_sided(s in sign(), a in cliff(Sign::Zero)) {
        let a = CliffNum::new(a.c1, a.c_e0, a.c_e1, a.c_e01, s);
        if let Ok(inv) = a.inverse() {
            prop_assert_eq!(&a * &inv, CliffNum::one(s));
            prop_assert_eq!(&inv * &a, CliffNum::one(s));
        }
    }

    #[test]
    fn clifford_form_is_a_homomorphism(s in sign(), g in sl2(), h in sl2()) {
        let lhs = g.mul(&h).clifford(s);
        let rhs: CliffMatrix<Q> = g.clifford(s).mul(&h.clifford(s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn moebius_is_a_group_action(s in sign(), g in sl2(), h in sl2(), u in small(), v in small()) {
        let p = ExtendedPoint::finite(u, v);
        let lhs = moebius_apply(&g.mul(&h), &p, s);
        let rhs = moebius_apply(&g, &moebius_apply(&h, &p, s), s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn incidence_intertwines(c in ctx(), g in sl2(), k in small(), l in small(), n in small(), u in small(), v in small()) {
        let p = (u, v);
        if let Some(cy) = cycle_through(k, l, n, &p, c.sigma) {
            let img = sl2_transform(&cy, &g, &c);
            if let Some(gp) = moebius_apply(&g, &ExtendedPoint::finite(p.0.clone(), p.1.clone()), c.sigma).as_finite() {
                prop_assert!(img.passes(&gp, c.sigma));
            }
        }
    }

    #[test]
    fn transform_ignores_cycle_space(cy in cycle(), g in sl2(), sb in sign(), s in nonzero_sign()) {
        let base = sl2_transform_in(&cy, &g, Sign::Minus, Sign::Plus).unwrap();
        let other = sl2_transform_in(&cy, &g, sb, s).unwrap();
        prop_assert_eq!(base, other);
    }

    #[test]
    fn invariants_survive_sl2(c in ctx(), g in sl2(), a in cycle(), b in cycle()) {
        let ga = sl2_transform(&a, &g, &c);
        let gb = sl2_transform(&b, &g, &c);
        prop_assert_eq!(orthogonality_form(&a, &b, &c), orthogonality_form(&ga, &gb, &c));
        prop_assert_eq!(orthogonal(&a, &b, &c), orthogonal(&ga, &gb, &c));
        prop_assert_eq!(f_trace(&a, &b, &c), f_trace(&ga, &gb, &c));
        prop_assert_eq!(f_orthogonal(&a, &b, &c), f_orthogonal(&ga, &gb, &c));
        prop_assert_eq!(det_cycle(&a, &c), det_cycle(&ga, &c));
        prop_assert!(sl2_transform(&Cycle::real_line(), &g, &c).is_real_line());
        let selfadj = Cycle::new_unchecked(a.k.clone(), a.l.clone(), Q::from_int(0), a.m.clone());
        if selfadj.coords().iter().any(|x| *x != Q::from_int(0)) {
            prop_assert!(sl2_transform(&selfadj, &g, &c).is_self_adjoint());
        }
    }

    #[test]
    fn inversion_is_an_involution(c in ctx(), cy in cycle(), u in small(), v in small()) {
        // the inversion is the Möbius map of (k, l, −σ̆n, m); skip singular ones
        let sb: Q = c.sigma_breve.as_scalar();
        let s: Q = c.sigma.as_scalar();
        let n = -sb * cy.n.clone();
        prop_assume!(cy.l.sq() - s * n.sq() - cy.m.clone() * cy.k.clone() != Q::zero());
        let p = ExtendedPoint::finite(u, v);
        let once = inversion_point(&cy, &p, &c);
        let twice = inversion_point(&cy, &once, &c);
        prop_assert_eq!(twice, p);
    }

    #[test]
    fn inversion_is_on_every_orthogonal_cycle_through_p(
        c in ctx(), cy in cycle(), u in small(), v in small(), x in small(), y in small()
    ) {
        // cycles through p orthogonal to cy: a two-parameter linear family
        let p = (u, v);
        let img = inversion_point(&cy, &ExtendedPoint::finite(p.0.clone(), p.1.clone()), &c);
        let Some(ip) = img.as_finite() else { return Ok(()) };
        let sb: Q = c.sigma_breve.as_scalar();
        let s: Q = c.sigma.as_scalar();
        let basis = |k: Q, l: Q, n: Q| {
            let m = -(k.clone() * (p.0.sq() - s.clone() * p.1.sq()) - Q::two() * l.clone() * p.0.clone() - Q::two() * n.clone() * p.1.clone());
            [k, l, n, m]
        };
        let b = [basis(Q::one(), Q::zero(), Q::zero()), basis(Q::zero(), Q::one(), Q::zero()), basis(Q::zero(), Q::zero(), Q::one())];
        let form = |d: &[Q; 4]| {
            Q::two() * sb.clone() * d[2].clone() * cy.n.clone() - Q::two() * d[1].clone() * cy.l.clone()
                + d[0].clone() * cy.m.clone() + d[3].clone() * cy.k.clone()
        };
        let f = [form(&b[0]), form(&b[1]), form(&b[2])];
        // x·b0 + y·b1 + z·b2 with the orthogonality form vanishing
        let (coef, z) = if f[2] != Q::zero() {
            ([x.clone(), y.clone()], -(x.clone() * f[0].clone() + y.clone() * f[1].clone()) / f[2].clone())
        } else {
            return Ok(());
        };
        let d: Vec<Q> = (0..4).map(|i| coef[0].clone() * b[0][i].clone() + coef[1].clone() * b[1][i].clone() + z.clone() * b[2][i].clone()).collect();
        if let Ok(dc) = Cycle::new(d[0].clone(), d[1].clone(), d[2].clone(), d[3].clone()) {
            prop_assert!(dc.passes(&ip, c.sigma), "{} {:?}", dc, ip);
        }
    }
}
