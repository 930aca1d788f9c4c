#![allow(dead_code)]

use eph::{Cycle, Rational, Scalar, Sign, SL2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Q {
    Q::from_int(n)
}

pub fn rat(r: &mut impl Rng) -> Q {
    Q::from_ratio(r.gen_range(-9..=9), r.gen_range(1..=4))
}

pub fn nonzero_rat(r: &mut impl Rng) -> Q {
    loop {
        let x = rat(r);
        if x != q(0) {
            return x;
        }
    }
}

/// Random exact element of SL(2,R) with small rational entries.
pub fn sl2(r: &mut impl Rng) -> SL2<Q> {
    let a = nonzero_rat(r);
    let b = rat(r);
    let c = rat(r);
    let d = (q(1) + b.clone() * c.clone()) / a.clone();
    SL2::new(a, b, c, d).expect("unimodular by construction")
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
    (rat(r), Q::from_ratio(r.gen_range(1..=12), r.gen_range(1..=4)))
}

/// A cycle through p: random k, l, n with m fixed by incidence.
pub fn cycle_through(r: &mut impl Rng, p: &(Q, Q), sigma: Sign) -> Cycle<Q> {
    loop {
        let (k, l, n) = (rat(r), rat(r), rat(r));
        let s: Q = sigma.as_scalar();
        let m = -(k.clone() * (p.0.sq() - s * p.1.sq()) - q(2) * l.clone() * p.0.clone() - q(2) * n.clone() * p.1.clone());
        if let Ok(c) = Cycle::new(k, l, n, m) {
            return c;
        }
    }
}

pub fn f64_sl2(r: &mut impl Rng) -> SL2<f64> {
    let a: f64 = r.gen_range(0.3..2.0) * if r.gen_bool(0.5) { 1.0 } else { -1.0 };
    let b: f64 = r.gen_range(-2.0..2.0);
    let c: f64 = r.gen_range(-2.0..2.0);
    SL2::new_unchecked(a, b, c, (1.0 + b * c) / a)
}
