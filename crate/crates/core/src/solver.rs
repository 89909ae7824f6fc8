//! The mismatching (hyperbolic) solutions of the fundamental equation:
//! the λ-relation between `a`, `b` and `a×b`, the scalar part `b0`, the
//! canonical upper-triangular family, a classifier producing explicit
//! similarity witnesses, and an exhaustive census over small prime fields.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, FieldError, Scalar};
use crate::par::ExecMode;
use crate::quat2::{Mat2, PauliVec, Quat2Error, Traceless};
use crate::switch::{fe_residual, SwitchError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("a, b and a×b are linearly independent (a×b is anisotropic)")]
    TripleIndependent,
    #[error("a and b are linearly dependent, so A and B commute")]
    CommutingPair,
    #[error("a0 sits on the pole a0 = λ2 of the b0 formula")]
    PoleAtA0,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("census is limited to p in {{3, 5, 7}}, got {0}")]
    UnsupportedPrime(u32),
    #[error(transparent)]
    Switch(#[from] SwitchError),
    #[error(transparent)]
    Quat(#[from] Quat2Error),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The unique `λ1, λ2` with `λ1 a + λ2 b + a×b = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lambdas {
    pub lambda1: Scalar,
    pub lambda2: Scalar,
}

pub fn solve_lambdas(a: &Traceless, b: &Traceless) -> Result<Lambdas, SolverError> {
    if a.pair_dependent(b) {
        return Err(SolverError::CommutingPair);
    }
    if !a.triple_dependent(b) {
        return Err(SolverError::TripleIndependent);
    }
    let c = a.cross(b);
    let (ac, bc, cc) = (a.coords(), b.coords(), c.coords());
    // independent a, b have some nonzero 2×2 minor; Cramer on those rows
    let (r, s, det) = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .map(|(r, s)| (r, s, ac[r] * bc[s] - ac[s] * bc[r]))
        .find(|(_, _, d)| !d.is_zero())
        .expect("independent vectors have a nonzero minor");
    let inv = det.inv().expect("nonzero");
    let lambda1 = -((cc[r] * bc[s] - cc[s] * bc[r]) * &inv);
    let lambda2 = -((ac[r] * cc[s] - ac[s] * cc[r]) * &inv);
    let residual = a.scale(&lambda1).add(&b.scale(&lambda2)).add(&c);
    if !residual.is_zero() {
        return Err(SolverError::TripleIndependent);
    }
    debug_assert_eq!(&lambda1 * &lambda2, a.dot(b));
    debug_assert_eq!(lambda2.square(), -a.det());
    debug_assert_eq!(lambda1.square(), -b.det());
    Ok(Lambdas { lambda1, lambda2 })
}

/// `b0 = λ1 (1 - 2/(a0 - λ2))`, the scalar part of `B` making
/// `(a0 + a, b0 + b)` a solution.
pub fn b0_from(a: &Traceless, b: &Traceless, a0: &Scalar) -> Result<Scalar, SolverError> {
    let l = solve_lambdas(a, b)?;
    b0_from_lambdas(&l, a0)
}

fn b0_from_lambdas(l: &Lambdas, a0: &Scalar) -> Result<Scalar, SolverError> {
    let f = a0.field();
    let pole = a0 - &l.lambda2;
    let inv = pole.inv().map_err(|_| SolverError::PoleAtA0)?;
    Ok(&l.lambda1 * &(f.one() - f.from_int(2) * inv))
}

/// Parameters of the canonical pair `a = a1(i + j) + a3 k`,
/// `b = b1(i + j) + b3 k`, scalar part `a0` of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HyperbolicParams {
    pub a0: Scalar,
    pub a1: Scalar,
    pub a3: Scalar,
    pub b1: Scalar,
    pub b3: Scalar,
}

impl HyperbolicParams {
    pub fn from_ints(field: Field, v: [i64; 5]) -> HyperbolicParams {
        let s = |x| field.from_int(x);
        HyperbolicParams {
            a0: s(v[0]),
            a1: s(v[1]),
            a3: s(v[2]),
            b1: s(v[3]),
            b3: s(v[4]),
        }
    }

    pub fn field(&self) -> Field {
        self.a0.field()
    }

    /// Checks `b3 ≠ 0`, `a3 b1 - a1 b3 ≠ 0` and `a0 ∉ {±a3, 1 ± a3}`.
    pub fn validate(&self) -> Result<(), SolverError> {
        let one = self.field().one();
        let bad = |what: &str| Err(SolverError::InvalidParams(what.to_string()));
        if self.b3.is_zero() {
            return bad("b3 = 0 makes B singular");
        }
        if (&self.a3 * &self.b1 - &self.a1 * &self.b3).is_zero() {
            return bad("a3 b1 - a1 b3 = 0 makes A and B commute");
        }
        if self.a0 == self.a3 || self.a0 == -&self.a3 {
            return bad("a0 = ±a3 makes A singular");
        }
        if self.a0 == &one + &self.a3 || self.a0 == &one - &self.a3 {
            return bad("a0 = 1 ± a3 makes A - 1 (or B) singular");
        }
        Ok(())
    }

    pub fn a(&self) -> Traceless {
        Traceless::new(self.a1.clone(), self.a1.clone(), self.a3.clone())
    }

    pub fn b(&self) -> Traceless {
        Traceless::new(self.b1.clone(), self.b1.clone(), self.b3.clone())
    }

    /// `A = [[a0 + a3, 2 a1], [0, a0 - a3]]`.
    pub fn matrix_a(&self) -> Mat2 {
        PauliVec::compose(self.a0.clone(), &self.a()).to_mat2()
    }

    /// `B = b0 + b` with `b0 = b3 (1 - 2/(a0 + a3))`.
    pub fn matrix_b(&self) -> Result<Mat2, SolverError> {
        let l = Lambdas {
            lambda1: self.b3.clone(),
            lambda2: -&self.a3,
        };
        let b0 = b0_from_lambdas(&l, &self.a0)?;
        Ok(PauliVec::compose(b0, &self.b()).to_mat2())
    }

    /// All parameters as strings, keyed by name.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a0": self.a0.to_string(),
            "a1": self.a1.to_string(),
            "a3": self.a3.to_string(),
            "b1": self.b1.to_string(),
            "b3": self.b3.to_string(),
        })
    }

    /// A random valid tuple (rejection sampling).
    pub fn sample<R: Rng + ?Sized>(field: Field, rng: &mut R) -> HyperbolicParams {
        loop {
            let p = HyperbolicParams {
                a0: field.sample(rng),
                a1: field.sample(rng),
                a3: field.sample(rng),
                b1: field.sample(rng),
                b3: field.sample(rng),
            };
            if p.validate().is_ok() {
                return p;
            }
        }
    }

    /// Every valid tuple over a prime field.
    pub fn all_valid(field: Field) -> Vec<HyperbolicParams> {
        let el = field.elements();
        let n = el.len();
        let mut out = Vec::new();
        for idx in 0..n.pow(5) {
            let pick = |k: u32| el[(idx / n.pow(k)) % n].clone();
            let p = HyperbolicParams {
                a0: pick(0),
                a1: pick(1),
                a3: pick(2),
                b1: pick(3),
                b3: pick(4),
            };
            if p.validate().is_ok() {
                out.push(p);
            }
        }
        out
    }
}

/// The canonical solution `(A, B)` for valid parameters, verified against
/// the fundamental equation.
pub fn hyperbolic_family(p: &HyperbolicParams) -> Result<(Mat2, Mat2), SolverError> {
    p.validate()?;
    let a = p.matrix_a();
    let b = p.matrix_b()?;
    let report = fe_residual(&a, &b)?;
    assert!(
        report.is_solution,
        "family member fails the equation: {}",
        report.residual
    );
    assert!(!report.commuting);
    Ok((a, b))
}

/// `(C^-1 A C, C^-1 B C)`.
pub fn conjugate_pair(a: &Mat2, b: &Mat2, c: &Mat2) -> Result<(Mat2, Mat2), SolverError> {
    Ok((a.group_conjugate(c)?, b.group_conjugate(c)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Classification {
    Commuting,
    NotASolution,
    Matching,
    /// `C^-1 A C, C^-1 B C` is the canonical pair for `params`.
    Hyperbolic {
        witness: Mat2,
        params: HyperbolicParams,
    },
    Unresolved(String),
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Commuting => "commuting",
            Classification::NotASolution => "not-a-solution",
            Classification::Matching => "matching",
            Classification::Hyperbolic { .. } => "hyperbolic",
            Classification::Unresolved(_) => "unresolved",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({ "kind": self.label() });
        match self {
            Classification::Hyperbolic { witness, params } => {
                v["witness"] = witness.to_json();
                v["params"] = params.to_json();
            }
            Classification::Unresolved(reason) => v["reason"] = reason.clone().into(),
            _ => {}
        }
        v
    }
}

/// Sorts a pair into commuting, non-solution, matching or hyperbolic; for
/// hyperbolic pairs the witness conjugates them onto the canonical family.
pub fn classify_pair(a: &Mat2, b: &Mat2) -> Result<Classification, SolverError> {
    let report = fe_residual(a, b)?;
    if report.commuting {
        return Ok(Classification::Commuting);
    }
    if !report.is_solution {
        return Ok(Classification::NotASolution);
    }
    let bi = b.inverse()?;
    if a.det() == a.tr() && a.mul(&bi).tr().is_zero() {
        return Ok(Classification::Matching);
    }
    Ok(hyperbolic_witness(a, b).unwrap_or_else(Classification::Unresolved))
}

fn hyperbolic_witness(a: &Mat2, b: &Mat2) -> Result<Classification, String> {
    let f = a.field();
    let c = a.traceless().cross(&b.traceless());
    if !c.is_isotropic() {
        return Err("a×b is anisotropic for a non-matching solution".into());
    }
    let (mut w, image) = c.canonicalize().map_err(|e| e.to_string())?;
    // the image lies on the i + j or the i - j ray; j swaps them
    if image.a2 == -&image.a1 {
        w = w.mul(&Traceless::from_ints(f, [0, 1, 0]).to_mat2());
    }
    let (ca, cb) = conjugate_pair(a, b, &w).map_err(|e| e.to_string())?;
    if !ca.is_upper_triangular() || !cb.is_upper_triangular() {
        return Err("conjugated pair is not upper triangular".into());
    }
    let (pa, pb) = (ca.to_pauli(), cb.to_pauli());
    let params = HyperbolicParams {
        a0: pa.a0,
        a1: pa.a1,
        a3: pa.a3,
        b1: pb.a1,
        b3: pb.a3,
    };
    params.validate().map_err(|e| e.to_string())?;
    let expected_b = params.matrix_b().map_err(|e| e.to_string())?;
    if expected_b != cb {
        return Err(format!(
            "scalar part of B is {} but the family predicts {}",
            pb.a0,
            expected_b.scalar_part()
        ));
    }
    Ok(Classification::Hyperbolic { witness: w, params })
}

/// The two printed shapes of `B` in the upper-triangular chart; both keep
/// `2 b3 / (a0 - a3)` top left and `2 b1` top right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrintedForm {
    /// Lower right `2 b3 (1/(a0 - a3) - 2)`.
    General,
    /// Lower right `2 b3 (1/(a0 - a3) - 1)`, i.e. `b0 - b3` for
    /// `b0 = b3 (2/(a0 - a3) - 1)`.
    Example,
}

impl PrintedForm {
    pub const ALL: [PrintedForm; 2] = [PrintedForm::General, PrintedForm::Example];

    pub fn name(self) -> &'static str {
        match self {
            PrintedForm::General => "general",
            PrintedForm::Example => "example",
        }
    }

    /// `None` when `a0 = a3`.
    pub fn matrix_b(self, p: &HyperbolicParams) -> Option<Mat2> {
        let f = p.field();
        let two = f.from_int(2);
        let r = (&p.a0 - &p.a3).inv().ok()?;
        let offset = match self {
            PrintedForm::General => two.clone(),
            PrintedForm::Example => f.one(),
        };
        Some(Mat2 {
            e11: &two * &p.b3 * &r,
            e12: &two * &p.b1,
            e21: f.zero(),
            e22: &two * &p.b3 * &(r - offset),
        })
    }

    /// Whether `(A, B_printed)` solves the equation; with `transposed`,
    /// whether `(A^T, B_printed^T)` does.
    pub fn solves(self, p: &HyperbolicParams, transposed: bool) -> bool {
        let Some(b) = self.matrix_b(p) else {
            return false;
        };
        let a = p.matrix_a();
        let (a, b) = if transposed {
            (a.transpose(), b.transpose())
        } else {
            (a, b)
        };
        fe_residual(&a, &b).is_ok_and(|r| r.is_solution)
    }
}

/// How many tuples each printed form solves, per convention.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FormCounts {
    pub general: usize,
    pub example: usize,
}

impl FormCounts {
    fn bump(&mut self, form: PrintedForm) {
        match form {
            PrintedForm::General => self.general += 1,
            PrintedForm::Example => self.example += 1,
        }
    }

    fn get(&self, form: PrintedForm) -> usize {
        match form {
            PrintedForm::General => self.general,
            PrintedForm::Example => self.example,
        }
    }
}

/// Comparison of the printed forms of `B` against the equation over a set
/// of valid parameter tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PrintedFormAudit {
    pub tuples: usize,
    /// Column vectors, `ij = k`: the convention of this library.
    pub column: FormCounts,
    /// The same printed matrices transposed (row-vector convention).
    pub transposed: FormCounts,
    /// Tuples with `a0 = 2 + a3`, and how many of those had a singular
    /// `A`, `A - 1` or `B`.
    pub a0_two_plus_a3: usize,
    pub a0_two_plus_a3_singular: usize,
}

impl PrintedFormAudit {
    pub fn run(params: &[HyperbolicParams]) -> PrintedFormAudit {
        let mut audit = PrintedFormAudit {
            tuples: params.len(),
            ..Default::default()
        };
        for p in params {
            for form in PrintedForm::ALL {
                if form.solves(p, false) {
                    audit.column.bump(form);
                }
                if form.solves(p, true) {
                    audit.transposed.bump(form);
                }
            }
            let f = p.field();
            if p.a0 == f.from_int(2) + &p.a3 {
                audit.a0_two_plus_a3 += 1;
                let a = p.matrix_a();
                let singular = !a.is_invertible()
                    || !a.sub(&Mat2::identity(f)).is_invertible()
                    || !p.matrix_b().is_ok_and(|b| b.is_invertible());
                if singular {
                    audit.a0_two_plus_a3_singular += 1;
                }
            }
        }
        audit
    }

    /// Forms solving the equation on every tuple, in the given convention.
    pub fn universal_forms(&self, transposed: bool) -> Vec<PrintedForm> {
        let counts = if transposed {
            &self.transposed
        } else {
            &self.column
        };
        PrintedForm::ALL
            .into_iter()
            .filter(|&f| self.tuples > 0 && counts.get(f) == self.tuples)
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusAudit {
    pub printed_forms: PrintedFormAudit,
    /// Noncommuting solutions with anisotropic `a×b` that are not matching.
    pub anisotropic_nonmatching: usize,
    /// Matching solutions whose `a×b` is isotropic (both descriptions apply).
    pub matching_isotropic: usize,
    /// Reasons recorded for unresolved pairs, deduplicated.
    pub unresolved_reasons: Vec<String>,
}

/// Exhaustive classification over F_p.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub p: u32,
    /// Ordered pairs with `A`, `A - 1` and `B` invertible.
    pub pairs_scanned: u64,
    pub fe_solutions: u64,
    pub commuting: u64,
    pub matching: u64,
    pub hyperbolic: u64,
    pub unresolved: u64,
    /// Hyperbolic solutions whose canonical `B` differs from the
    /// general printed form.
    #[serde(rename = "general_form_B_discrepancies")]
    pub general_form_b_discrepancies: u64,
    pub audit: CensusAudit,
}

#[derive(Default)]
struct Tally {
    scanned: u64,
    solutions: u64,
    commuting: u64,
    matching: u64,
    hyperbolic: u64,
    unresolved: u64,
    discrepancies: u64,
    anisotropic_nonmatching: usize,
    matching_isotropic: usize,
    reasons: Vec<String>,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.scanned += o.scanned;
        self.solutions += o.solutions;
        self.commuting += o.commuting;
        self.matching += o.matching;
        self.hyperbolic += o.hyperbolic;
        self.unresolved += o.unresolved;
        self.discrepancies += o.discrepancies;
        self.anisotropic_nonmatching += o.anisotropic_nonmatching;
        self.matching_isotropic += o.matching_isotropic;
        self.reasons.extend(o.reasons);
        self
    }
}

/// Every 2×2 matrix over a prime field, in a fixed order.
pub fn all_matrices(field: Field) -> Vec<Mat2> {
    let el = field.elements();
    let n = el.len();
    (0..n.pow(4))
        .map(|idx| {
            let e = |k: u32| el[(idx / n.pow(k)) % n].clone();
            Mat2 {
                e11: e(0),
                e12: e(1),
                e21: e(2),
                e22: e(3),
            }
        })
        .collect()
}

/// Classifies every ordered pair `(A, B)` with `A`, `A - 1`, `B`
/// invertible over F_p. The outer loop over `A` is split across workers
/// in parallel mode; counts are merged by addition, so the report does not
/// depend on the mode.
pub fn enumerate_solutions(p: u32, mode: ExecMode) -> Result<CensusReport, SolverError> {
    if ![3, 5, 7].contains(&p) {
        return Err(SolverError::UnsupportedPrime(p));
    }
    let field = Field::prime(p as u64)?;
    let gl: Vec<Mat2> = all_matrices(field)
        .into_iter()
        .filter(Mat2::is_invertible)
        .collect();
    let one = Mat2::identity(field);
    let a_side: Vec<Mat2> = gl
        .iter()
        .filter(|a| a.sub(&one).is_invertible())
        .cloned()
        .collect();
    let tallies = mode.map(a_side, |a| census_row(&a, &gl));
    let t = tallies.into_iter().fold(Tally::default(), Tally::merge);
    let mut reasons = t.reasons;
    reasons.sort();
    reasons.dedup();
    Ok(CensusReport {
        p,
        pairs_scanned: t.scanned,
        fe_solutions: t.solutions,
        commuting: t.commuting,
        matching: t.matching,
        hyperbolic: t.hyperbolic,
        unresolved: t.unresolved,
        general_form_b_discrepancies: t.discrepancies,
        audit: CensusAudit {
            printed_forms: PrintedFormAudit::run(&HyperbolicParams::all_valid(field)),
            anisotropic_nonmatching: t.anisotropic_nonmatching,
            matching_isotropic: t.matching_isotropic,
            unresolved_reasons: reasons,
        },
    })
}

fn census_row(a: &Mat2, gl: &[Mat2]) -> Tally {
    let mut t = Tally::default();
    for b in gl {
        t.scanned += 1;
        let class = classify_pair(a, b).expect("inputs are invertible by construction");
        if class == Classification::NotASolution {
            continue;
        }
        t.solutions += 1;
        let isotropic = a.traceless().triple_dependent(&b.traceless());
        if !isotropic && !matches!(class, Classification::Matching | Classification::Commuting) {
            t.anisotropic_nonmatching += 1;
        }
        match class {
            Classification::Commuting => t.commuting += 1,
            Classification::Matching => {
                t.matching += 1;
                if isotropic {
                    t.matching_isotropic += 1;
                }
            }
            Classification::Hyperbolic { params, .. } => {
                t.hyperbolic += 1;
                let canonical = params.matrix_b().expect("validated");
                if PrintedForm::General.matrix_b(&params) != Some(canonical) {
                    t.discrepancies += 1;
                }
            }
            Classification::Unresolved(reason) => {
                t.unresolved += 1;
                t.reasons.push(reason);
            }
            Classification::NotASolution => unreachable!(),
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rationals;

    #[test]
    fn lambdas_of_canonical_pair() {
        let p = HyperbolicParams::from_ints(Q, [3, 1, 1, 0, 1]);
        let l = solve_lambdas(&p.a(), &p.b()).unwrap();
        assert_eq!(l.lambda1, p.b3);
        assert_eq!(l.lambda2, -&p.a3);
        let a = Traceless::from_ints(Q, [1, 1, 0]);
        assert_eq!(
            solve_lambdas(&a, &a.scale(&Q.from_int(2))),
            Err(SolverError::CommutingPair)
        );
        let (i, j) = (
            Traceless::from_ints(Q, [1, 0, 0]),
            Traceless::from_ints(Q, [0, 1, 0]),
        );
        assert_eq!(solve_lambdas(&i, &j), Err(SolverError::TripleIndependent));
    }

    #[test]
    fn lambda_identities_on_random_family_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..300 {
            let p = HyperbolicParams::sample(Q, &mut rng);
            let (a, b) = (p.a(), p.b());
            let l = solve_lambdas(&a, &b).unwrap();
            assert_eq!(&l.lambda1 * &l.lambda2, a.dot(&b));
            assert_eq!(l.lambda2.square(), -a.det());
            assert_eq!(l.lambda1.square(), -b.det());
            // b3 a - a3 b + a×b = 0
            assert!(a
                .scale(&p.b3)
                .sub(&b.scale(&p.a3))
                .add(&a.cross(&b))
                .is_zero());
        }
    }

    #[test]
    fn b0_examples() {
        let p = HyperbolicParams::from_ints(Q, [3, 1, 1, 0, 1]);
        assert_eq!(
            b0_from(&p.a(), &p.b(), &p.a0).unwrap(),
            Q.from_ratio(1, 2).unwrap()
        );
        // the pole sits at a0 = λ2 = -a3
        assert_eq!(
            b0_from(&p.a(), &p.b(), &Q.from_int(-1)),
            Err(SolverError::PoleAtA0)
        );
    }

    #[test]
    fn family_examples() {
        let (a, b) = hyperbolic_family(&HyperbolicParams::from_ints(Q, [3, 1, 1, 0, 1])).unwrap();
        assert_eq!(a, Mat2::from_ints(Q, [[4, 2], [0, 2]]));
        assert_eq!(b, Mat2::parse(Q, [["3/2", "0"], ["0", "-1/2"]]).unwrap());

        let qt = Field::RationalFunctions;
        let t = qt.variable().unwrap();
        let p = HyperbolicParams {
            a0: t,
            ..HyperbolicParams::from_ints(qt, [0, 1, 1, 0, 1])
        };
        let (a, b) = hyperbolic_family(&p).unwrap();
        assert_eq!(
            a,
            Mat2::parse(qt, [["t + 1", "2"], ["0", "t - 1"]]).unwrap()
        );
        assert_eq!(
            b,
            Mat2::parse(qt, [["2t/(t + 1)", "0"], ["0", "-2/(t + 1)"]]).unwrap()
        );
        assert!(fe_residual(&a, &b).unwrap().residual.is_zero());

        for bad in [
            [1, 1, 1, 0, 1],
            [-1, 1, 1, 0, 1],
            [0, 1, 1, 0, 1],
            [2, 1, 1, 0, 1],
        ] {
            let p = HyperbolicParams::from_ints(Q, bad);
            assert!(
                matches!(hyperbolic_family(&p), Err(SolverError::InvalidParams(_))),
                "{bad:?}"
            );
        }
        let p = HyperbolicParams::from_ints(Q, [3, 1, 1, 0, 0]);
        assert!(matches!(p.validate(), Err(SolverError::InvalidParams(m)) if m.contains("b3")));
    }

    #[test]
    fn family_solves_on_random_q_and_all_f5() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..300 {
            hyperbolic_family(&HyperbolicParams::sample(Q, &mut rng)).unwrap();
        }
        let all = HyperbolicParams::all_valid(Field::Prime(5));
        assert!(!all.is_empty());
        for p in &all {
            hyperbolic_family(p).unwrap();
        }
    }

    #[test]
    fn classify_family_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let mut params: Vec<_> = (0..200)
            .map(|_| HyperbolicParams::sample(Q, &mut rng))
            .collect();
        params.extend(HyperbolicParams::all_valid(Field::Prime(5)));
        for p in params {
            let (a, b) = hyperbolic_family(&p).unwrap();
            let two = p.field().from_int(2);
            let matching = p.a0.square() - p.a3.square() == &two * &p.a0;
            match classify_pair(&a, &b).unwrap() {
                Classification::Hyperbolic { witness, params } => {
                    assert!(!matching);
                    assert!(witness.is_identity());
                    assert_eq!(params, p);
                }
                Classification::Matching => assert!(matching),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn classify_conjugated_pairs_recovers_witness() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for f in [Q, Field::Prime(5), Field::Prime(7)] {
            for _ in 0..100 {
                let p = HyperbolicParams::sample(f, &mut rng);
                let (a, b) = hyperbolic_family(&p).unwrap();
                let c = loop {
                    let c = Mat2::sample(f, &mut rng);
                    if c.is_invertible() {
                        break c;
                    }
                };
                let (ca, cb) = conjugate_pair(&a, &b, &c).unwrap();
                assert!(fe_residual(&ca, &cb).unwrap().is_solution);
                let before = classify_pair(&a, &b).unwrap();
                let after = classify_pair(&ca, &cb).unwrap();
                assert_eq!(before.label(), after.label());
                if let Classification::Hyperbolic { witness, params } = after {
                    let (wa, wb) = conjugate_pair(&ca, &cb, &witness).unwrap();
                    assert_eq!(wa, params.matrix_a());
                    assert_eq!(wb, params.matrix_b().unwrap());
                }
            }
        }
    }

    #[test]
    fn classify_simple_cases() {
        let a = Mat2::from_ints(Q, [[2, 0], [0, 3]]);
        let b = Mat2::from_ints(Q, [[5, 0], [0, 7]]);
        assert_eq!(classify_pair(&a, &b).unwrap(), Classification::Commuting);
        let a = Mat2::from_pauli(&PauliVec::from_ints(Q, [2, 1, 0, 0]));
        let j = Mat2::from_pauli(&PauliVec::from_ints(Q, [0, 0, 1, 0]));
        assert_eq!(classify_pair(&a, &j).unwrap(), Classification::NotASolution);
        let (a, b) = hyperbolic_family(&HyperbolicParams::from_ints(Q, [3, 1, 1, 0, 1])).unwrap();
        let shear = Mat2::from_ints(Q, [[1, 1], [0, 1]]);
        let (ca, cb) = conjugate_pair(&a, &b, &shear).unwrap();
        assert!(fe_residual(&ca, &cb).unwrap().is_solution);
        assert_eq!(conjugate_pair(&a, &b, &Mat2::identity(Q)).unwrap(), (a, b));
    }

    #[test]
    fn printed_forms_in_both_conventions() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let params: Vec<_> = (0..100)
            .map(|_| HyperbolicParams::sample(Q, &mut rng))
            .collect();
        let audit = PrintedFormAudit::run(&params);
        assert_eq!(audit.universal_forms(false), vec![]);
        assert_eq!(audit.universal_forms(true), vec![PrintedForm::Example]);
        assert_eq!(audit.transposed.general, 0);
    }

    #[test]
    fn census_p3_pinned() {
        let r = enumerate_solutions(3, ExecMode::default()).unwrap();
        assert_eq!(
            (
                r.pairs_scanned,
                r.fe_solutions,
                r.commuting,
                r.matching,
                r.hyperbolic,
                r.unresolved
            ),
            (1296, 480, 240, 240, 0, 0)
        );
        assert_eq!(r.audit.anisotropic_nonmatching, 0);
        let v = serde_json::to_value(&r).unwrap();
        for key in [
            "p",
            "pairs_scanned",
            "fe_solutions",
            "commuting",
            "matching",
            "hyperbolic",
            "unresolved",
            "general_form_B_discrepancies",
            "audit",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(
            enumerate_solutions(11, ExecMode::Sequential),
            Err(SolverError::UnsupportedPrime(11))
        );
    }

    #[test]
    fn census_p5_pinned_and_mode_independent() {
        let seq = enumerate_solutions(5, ExecMode::Sequential).unwrap();
        assert_eq!(
            (
                seq.pairs_scanned,
                seq.fe_solutions,
                seq.commuting,
                seq.matching,
                seq.hyperbolic,
                seq.unresolved
            ),
            (175200, 21120, 9120, 9120, 2880, 0)
        );
        assert_eq!(seq, enumerate_solutions(5, ExecMode::Parallel).unwrap());
    }

    #[test]
    #[ignore = "slow without optimizations; run with --ignored"]
    fn census_p7_pinned() {
        let r = enumerate_solutions(7, ExecMode::Parallel).unwrap();
        assert_eq!(
            (
                r.pairs_scanned,
                r.fe_solutions,
                r.commuting,
                r.matching,
                r.hyperbolic,
                r.unresolved
            ),
            (3400992, 205632, 82656, 82656, 40320, 0)
        );
        assert_eq!(r.audit.printed_forms.a0_two_plus_a3_singular, 0);
    }

    #[test]
    fn census_commuting_pairs_are_solutions() {
        let f = Field::Prime(3);
        let gl: Vec<Mat2> = all_matrices(f)
            .into_iter()
            .filter(Mat2::is_invertible)
            .collect();
        let one = Mat2::identity(f);
        let commuting = gl
            .iter()
            .filter(|a| a.sub(&one).is_invertible())
            .flat_map(|a| gl.iter().filter(move |b| a.commutes(b)))
            .count();
        assert_eq!(
            commuting as u64,
            enumerate_solutions(3, ExecMode::Sequential)
                .unwrap()
                .commuting
        );
    }
}
