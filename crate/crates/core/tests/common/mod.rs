#![allow(dead_code)]

use quatknot::field::{Field, Scalar};
use quatknot::quat2::Mat2;
use quatknot::solver::{hyperbolic_family, HyperbolicParams};
use quatknot::switch::{CommutativeVariant, Switch};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Parameters `(a0, a1, a3, b1, b3)` written as scalar literals.
pub fn params(field: Field, v: [&str; 5]) -> HyperbolicParams {
    let s = |x: &str| Scalar::parse(field, x).expect("literal");
    HyperbolicParams {
        a0: s(v[0]),
        a1: s(v[1]),
        a3: s(v[2]),
        b1: s(v[3]),
        b3: s(v[4]),
    }
}

pub fn family_switch(p: &HyperbolicParams) -> Switch {
    let (a, b) = hyperbolic_family(p).expect("valid tuple");
    Switch::noncommutative(&a, &b).expect("family pairs are solutions")
}

pub fn t_switch() -> Switch {
    family_switch(&params(Field::RationalFunctions, ["t", "1", "1", "0", "1"]))
}

/// `count` distinct seeded tuples over `field`.
pub fn sample_params(field: Field, count: usize, seed: u64) -> Vec<HyperbolicParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<HyperbolicParams> = Vec::new();
    while out.len() < count {
        let p = HyperbolicParams::sample(field, &mut rng);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

pub fn commutative_switches(field: Field) -> Vec<Switch> {
    // B = 2 + N, C = 3 - N with N nilpotent: commuting, invertible
    let b = Mat2::from_ints(field, [[2, 1], [0, 2]]);
    let c = Mat2::from_ints(field, [[3, -1], [0, 3]]);
    [CommutativeVariant::Type0, CommutativeVariant::Type1]
        .into_iter()
        .map(|v| Switch::commutative(&b, &c, v).expect("commuting invertible pair"))
        .collect()
}

/// Both commutative variants, 20 noncommutative switches over Q, a few
/// over F_7 and the Q(t) switch.
pub fn pool() -> Vec<(String, Switch)> {
    let mut out = Vec::new();
    for s in commutative_switches(Field::Rationals) {
        out.push((s.tag(), s));
    }
    for p in sample_params(Field::Rationals, 20, 11) {
        out.push((p.to_json().to_string(), family_switch(&p)));
    }
    for p in sample_params(Field::prime(7).unwrap(), 4, 12) {
        out.push((p.to_json().to_string(), family_switch(&p)));
    }
    out.push(("(t,1,1,0,1)".into(), t_switch()));
    out
}
