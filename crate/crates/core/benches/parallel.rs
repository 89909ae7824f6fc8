use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use quatknot::field::{Field, Scalar};
use quatknot::linalg::PolyMatrix;
use quatknot::linkinv::{presentation_from_gauss, CrossingConvention, GaussCode};
use quatknot::par::ExecMode;
use quatknot::solver::{enumerate_solutions, hyperbolic_family, HyperbolicParams};
use quatknot::switch::Switch;

const MODES: [(&str, ExecMode); 2] = [
    ("sequential", ExecMode::Sequential),
    ("parallel", ExecMode::Parallel),
];

fn census(c: &mut Criterion) {
    let mut g = c.benchmark_group("census_p5");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| enumerate_solutions(black_box(5), mode).unwrap())
        });
    }
    g.finish();
}

fn minors(c: &mut Criterion) {
    let f = Field::RationalFunctions;
    let s = |x: &str| Scalar::parse(f, x).unwrap();
    let p = HyperbolicParams {
        a0: s("t"),
        a1: s("2"),
        a3: s("1"),
        b1: s("1"),
        b3: s("3"),
    };
    let (a, b) = hyperbolic_family(&p).unwrap();
    let switch = Switch::noncommutative(&a, &b).unwrap();
    let code = GaussCode::parse("O1+O2+U1+U3-O3-U2+").unwrap();
    let pres = presentation_from_gauss(&switch, &code, CrossingConvention::default()).unwrap();
    let m = PolyMatrix::clear_denominators(pres.matrix()).unwrap();
    let k = m.rows() - 1;
    let mut g = c.benchmark_group("minors_gcd_12x12");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(name, |b| b.iter(|| m.minors_gcd(black_box(k), mode)));
    }
    g.finish();
}

criterion_group!(benches, census, minors);
criterion_main!(benches);
