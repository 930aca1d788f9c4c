//! Seeded random exact instances.

use eph::{Cycle, CycleContext, Rational, Scalar, Sign, SL2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Rational;

pub type Gen = ChaCha8Rng;

pub fn gen(seed: u64) -> Gen {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational n/d with |n| ≤ 9, 1 ≤ d ≤ 4.
pub fn rat(r: &mut impl Rng) -> Q {
    Q::from_ratio(r.gen_range(-9..=9), r.gen_range(1..=4))
}

pub fn nonzero_rat(r: &mut impl Rng) -> Q {
    loop {
        let x = rat(r);
        if !num_traits::Zero::is_zero(&x) {
            return x;
        }
    }
}

pub fn positive_rat(r: &mut impl Rng) -> Q {
    Q::from_ratio(r.gen_range(1..=12), r.gen_range(1..=4))
}

pub fn sl2(r: &mut impl Rng) -> SL2<Q> {
    let a = nonzero_rat(r);
    let b = rat(r);
    let c = rat(r);
    let d = (Q::from_int(1) + b.clone() * c.clone()) / a.clone();
    SL2::new(a, b, c, d).expect("unimodular by construction")
}

pub fn f64_sl2(r: &mut impl Rng) -> SL2<f64> {
    let a: f64 = r.gen_range(0.3..2.0) * if r.gen_bool(0.5) { 1.0 } else { -1.0 };
    let b: f64 = r.gen_range(-2.0..2.0);
    let c: f64 = r.gen_range(-2.0..2.0);
    SL2::new_unchecked(a, b, c, (1.0 + b * c) / a)
}

pub fn cycle(r: &mut impl Rng) -> Cycle<Q> {
    loop {
        if let Ok(c) = Cycle::new(rat(r), rat(r), rat(r), rat(r)) {
            return c;
        }
    }
}

pub fn point(r: &mut impl Rng) -> (Q, Q) {
    (rat(r), rat(r))
}

pub fn upper_point(r: &mut impl Rng) -> (Q, Q) {
    (rat(r), positive_rat(r))
}

/// Random k, l, n with m fixed by incidence at p.
pub fn cycle_through(r: &mut impl Rng, p: &(Q, Q), sigma: Sign) -> Cycle<Q> {
    loop {
        let (k, l, n) = (rat(r), rat(r), rat(r));
        let s: Q = sigma.as_scalar();
        let m = -(k.clone() * (p.0.sq() - s * p.1.sq()) - Q::two() * l.clone() * p.0.clone() - Q::two() * n.clone() * p.1.clone());
        if let Ok(c) = Cycle::new(k, l, n, m) {
            return c;
        }
    }
}

/// All 27 (σ, σ̆, s), with ς = σ̆.
pub fn matrix_contexts() -> Vec<CycleContext> {
    CycleContext::all()
}
