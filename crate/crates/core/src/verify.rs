//! Sweeps that check the algebra identities, the dependency lemmas and the
//! solution generator on seeded random samples or exhaustively over a small
//! prime field.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::field::Field;
use crate::linalg::Matrix;
use crate::quat2::{Mat2, Traceless};
use crate::solver::{all_matrices, hyperbolic_family, HyperbolicParams};
use crate::switch::fe_residual;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("exhaustive sweeps need a prime field with p <= 5, not {0}")]
    ExhaustiveUnsupported(Field),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Sampling {
    Random { samples: usize, seed: u64 },
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// The first failing case, if any.
    pub counterexample: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

#[derive(Default)]
struct Tally(Vec<Check>);

impl Tally {
    fn record(&mut self, name: &'static str, ok: bool, case: impl FnOnce() -> String) {
        let idx = match self.0.iter().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.0.push(Check {
                    name,
                    cases: 0,
                    failures: 0,
                    counterexample: None,
                });
                self.0.len() - 1
            }
        };
        let c = &mut self.0[idx];
        c.cases += 1;
        if !ok {
            c.failures += 1;
            c.counterexample.get_or_insert_with(case);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    #[serde(serialize_with = "as_display")]
    pub field: Field,
    pub sampling: Sampling,
    pub checks: Vec<Check>,
}

fn as_display<S: serde::Serializer>(f: &Field, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(f)
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("plain data");
        v["passed"] = self.passed().into();
        v
    }
}

fn check_exhaustive(field: Field) -> Result<(), VerifyError> {
    match field {
        Field::Prime(p) if p <= 5 => Ok(()),
        _ => Err(VerifyError::ExhaustiveUnsupported(field)),
    }
}

fn all_traceless(field: Field) -> Vec<Traceless> {
    let el = field.elements();
    let n = el.len();
    (0..n.pow(3))
        .map(|i| {
            Traceless::new(
                el[i % n].clone(),
                el[(i / n) % n].clone(),
                el[i / (n * n)].clone(),
            )
        })
        .collect()
}

type Pairs<T> = Vec<(T, T)>;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Rank of the rows `vs` in coordinates, by Gaussian elimination.
fn rank_of(field: Field, vs: &[&Traceless]) -> usize {
    let rows = vs
        .iter()
        .map(|v| v.coords().into_iter().cloned().collect())
        .collect();
    Matrix::from_rows(field, rows)
        .expect("three columns")
        .rank()
}

/// Anti-isomorphism laws, `A conj(A) = det A`, `A + conj(A) = tr A`,
/// determinant multiplicativity, the triple cross expansion, the
/// `(a×c)·(b×c)` identity, the `det(a×b)` expansion and
/// `ρ(a×b) = a ×_E b`.
pub fn algebra_identities(field: Field, sampling: Sampling) -> Result<Vec<Check>, VerifyError> {
    let mut t = Tally::default();
    let (pairs, triples): (Vec<(Mat2, Mat2)>, Vec<[Traceless; 3]>) = match sampling {
        Sampling::Random { samples, seed } => {
            let mut rng = rng_for(seed, 1);
            let pairs = (0..samples)
                .map(|_| (Mat2::sample(field, &mut rng), Mat2::sample(field, &mut rng)))
                .collect();
            let triples = (0..samples)
                .map(|_| std::array::from_fn(|_| Traceless::sample(field, &mut rng)))
                .collect();
            (pairs, triples)
        }
        Sampling::Exhaustive => {
            check_exhaustive(field)?;
            let mats = all_matrices(field);
            let pairs = mats
                .iter()
                .flat_map(|a| mats.iter().map(move |b| (a.clone(), b.clone())))
                .collect();
            let owned = all_traceless(field);
            let tl = &owned;
            let triples = tl
                .iter()
                .flat_map(|a| {
                    tl.iter().flat_map(move |b| {
                        tl.iter().map(move |c| [a.clone(), b.clone(), c.clone()])
                    })
                })
                .collect();
            (pairs, triples)
        }
    };
    for (a, b) in &pairs {
        let case = || format!("A = {a}, B = {b}");
        t.record(
            "conj(A + B) = conj A + conj B",
            a.add(b).conjugate() == a.conjugate().add(&b.conjugate()),
            case,
        );
        t.record(
            "conj(AB) = conj B conj A",
            a.mul(b).conjugate() == b.conjugate().mul(&a.conjugate()),
            case,
        );
        t.record("conj(conj A) = A", a.conjugate().conjugate() == *a, case);
        t.record(
            "A conj(A) = det A",
            a.mul(&a.conjugate()) == Mat2::scalar(a.det()),
            case,
        );
        t.record(
            "A + conj(A) = tr A",
            a.add(&a.conjugate()) == Mat2::scalar(a.tr()),
            case,
        );
        t.record(
            "det(AB) = det A det B",
            a.mul(b).det() == a.det() * b.det(),
            case,
        );
    }
    for [a, b, c] in &triples {
        let case = || format!("a = {a}, b = {b}, c = {c}");
        t.record(
            "a×(b×c) = (c·a)b - (b·a)c",
            a.cross(&b.cross(c)) == b.scale(&c.dot(a)).sub(&c.scale(&b.dot(a))),
            case,
        );
        t.record(
            "(a×c)·(b×c) = det(c)(a·b) - (a·c)(b·c)",
            a.cross(c).dot(&b.cross(c)) == c.det() * a.dot(b) - a.dot(c) * b.dot(c),
            case,
        );
        t.record(
            "det(a×b) = det a det b - (a·b)^2",
            a.cross(b).det() == a.det() * b.det() - a.dot(b).square(),
            case,
        );
        t.record("ρ(a×b) = a ×_E b", a.cross(b).rho() == a.cross_e(b), case);
        t.record(
            "ab = -a·b + a×b",
            a.to_mat2().mul(&b.to_mat2()) == Mat2::scalar(-a.dot(b)).add(&a.cross(b).to_mat2()),
            case,
        );
    }
    Ok(t.0)
}

/// Lemma-style biconditionals, each against an independent rank oracle:
/// pair dependence iff `a×b = 0`, commuting iff traceless parts are
/// dependent, and `a, b, a×b` dependent iff `a×b` is isotropic or zero.
pub fn dependency_lemmas(field: Field, sampling: Sampling) -> Result<Vec<Check>, VerifyError> {
    let mut t = Tally::default();
    let (pairs, mat_pairs): (Pairs<Traceless>, Pairs<Mat2>) = match sampling {
        Sampling::Random { samples, seed } => {
            let mut rng = rng_for(seed, 2);
            let pairs = (0..samples)
                .map(|i| {
                    let a = Traceless::sample(field, &mut rng);
                    // every third pair is forced dependent so both sides occur
                    let b = if i % 3 == 0 {
                        a.scale(&field.sample(&mut rng))
                    } else {
                        Traceless::sample(field, &mut rng)
                    };
                    (a, b)
                })
                .collect();
            let mats = (0..samples)
                .map(|i| {
                    let a = Mat2::sample(field, &mut rng);
                    let b = if i % 3 == 0 {
                        Mat2::scalar(field.sample(&mut rng))
                            .add(&a.traceless().scale(&field.sample(&mut rng)).to_mat2())
                    } else {
                        Mat2::sample(field, &mut rng)
                    };
                    (a, b)
                })
                .collect();
            (pairs, mats)
        }
        Sampling::Exhaustive => {
            check_exhaustive(field)?;
            let tl = all_traceless(field);
            let pairs = tl
                .iter()
                .flat_map(|a| tl.iter().map(move |b| (a.clone(), b.clone())))
                .collect();
            let mats = all_matrices(field);
            let mat_pairs = mats
                .iter()
                .flat_map(|a| mats.iter().map(move |b| (a.clone(), b.clone())))
                .collect();
            (pairs, mat_pairs)
        }
    };
    for (a, b) in &pairs {
        let case = || format!("a = {a}, b = {b}");
        let dependent = rank_of(field, &[a, b]) < 2;
        t.record(
            "a, b dependent iff a×b = 0",
            dependent == a.pair_dependent(b),
            case,
        );
        let c = a.cross(b);
        let triple = rank_of(field, &[a, b, &c]) < 3;
        t.record(
            "a, b, a×b dependent iff a×b isotropic or zero",
            triple == c.det().is_zero(),
            case,
        );
        t.record(
            "a, b, a×b dependent iff det a det b = (a·b)^2",
            triple == a.triple_dependent(b),
            case,
        );
    }
    for (a, b) in &mat_pairs {
        let case = || format!("A = {a}, B = {b}");
        let dependent = rank_of(field, &[&a.traceless(), &b.traceless()]) < 2;
        t.record(
            "AB = BA iff traceless parts dependent",
            (a.mul(b) == b.mul(a)) == dependent,
            case,
        );
        t.record(
            "commutes agrees with AB = BA",
            a.commutes(b) == (a.mul(b) == b.mul(a)),
            case,
        );
    }
    Ok(t.0)
}

/// The hyperbolic family solves the fundamental equation: on sampled or
/// all valid tuples, and over Q(t) additionally on `(t, 1, 1, 0, 1)`.
pub fn generator(field: Field, sampling: Sampling) -> Result<Vec<Check>, VerifyError> {
    let mut t = Tally::default();
    let mut tuples = match sampling {
        Sampling::Random { samples, seed } => {
            let mut rng = rng_for(seed, 3);
            (0..samples)
                .map(|_| HyperbolicParams::sample(field, &mut rng))
                .collect()
        }
        Sampling::Exhaustive => {
            check_exhaustive(field)?;
            HyperbolicParams::all_valid(field)
        }
    };
    if field == Field::RationalFunctions {
        let one = field.one();
        tuples.insert(
            0,
            HyperbolicParams {
                a0: field.variable().expect("Q(t)"),
                a1: one.clone(),
                a3: one.clone(),
                b1: field.zero(),
                b3: one,
            },
        );
    }
    for p in &tuples {
        let case = || p.to_json().to_string();
        let ok = hyperbolic_family(p)
            .ok()
            .and_then(|(a, b)| fe_residual(&a, &b).ok())
            .is_some_and(|r| r.residual.is_zero() && !r.commuting);
        t.record("family pairs solve the fundamental equation", ok, case);
    }
    Ok(t.0)
}

pub fn verify_lemmas(field: Field, sampling: Sampling) -> Result<LemmaReport, VerifyError> {
    let mut checks = algebra_identities(field, sampling)?;
    checks.extend(dependency_lemmas(field, sampling)?);
    checks.extend(generator(field, sampling)?);
    Ok(LemmaReport {
        field,
        sampling,
        checks,
    })
}
