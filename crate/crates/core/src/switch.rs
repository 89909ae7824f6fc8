//! Linear switches `S = [[A, B], [C, D]]` acting on pairs of column
//! 2-vectors, the fundamental equation they come from, and the
//! Yang-Baxter and invertibility checks.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::linalg::Matrix;
use crate::quat2::{Mat2, Quat2Error, Traceless};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwitchError {
    #[error("{0} is singular")]
    SingularInput(&'static str),
    #[error("(A, B) does not satisfy the fundamental equation; residual {0}")]
    NotASolution(Box<Mat2>),
    #[error("A and B commute")]
    CommutingPair,
    #[error("B and C do not commute")]
    NonCommutingInputs,
    #[error("switch fails the Yang-Baxter equation")]
    YangBaxterFailure,
    #[error("blocks live in different fields")]
    MixedFields,
    #[error("unknown switch tag {0:?}")]
    UnknownTag(String),
    #[error(transparent)]
    Quat(#[from] Quat2Error),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SwitchKind {
    /// `[[0, B], [C, 1 - BC]]` with `BC = CB`.
    CommutativeType0,
    /// `[[1 - BC, B], [C, 0]]` with `BC = CB`.
    CommutativeType1,
    /// Built from a noncommuting solution of the fundamental equation.
    NonCommutative,
    Raw,
}

impl SwitchKind {
    fn tag(self) -> &'static str {
        match self {
            SwitchKind::CommutativeType0 => "commutative-type0",
            SwitchKind::CommutativeType1 => "commutative-type1",
            SwitchKind::NonCommutative => "noncommutative",
            SwitchKind::Raw => "raw",
        }
    }

    fn from_tag(s: &str) -> Option<SwitchKind> {
        [
            SwitchKind::CommutativeType0,
            SwitchKind::CommutativeType1,
            SwitchKind::NonCommutative,
            SwitchKind::Raw,
        ]
        .into_iter()
        .find(|k| k.tag() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommutativeVariant {
    Type0,
    Type1,
}

/// Outcome of evaluating the fundamental equation on `(A, B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeReport {
    /// `A^-1 B^-1 A B - B^-1 A B - B A^-1 B^-1 A + A`.
    pub residual: Mat2,
    pub is_solution: bool,
    /// `det A = tr A` and `A . B = 0`.
    pub is_matching: bool,
    pub commuting: bool,
}

fn require_invertible(m: &Mat2, name: &'static str) -> Result<Mat2, SwitchError> {
    m.inverse().map_err(|_| SwitchError::SingularInput(name))
}

fn one_minus(m: &Mat2) -> Mat2 {
    Mat2::identity(m.field()).sub(m)
}

/// The matching condition `det A = tr A`, `A . B = 0`.
pub fn is_matching(a: &Mat2, b: &Mat2) -> bool {
    a.det() == a.tr() && a.dot(b).is_zero()
}

pub fn fe_residual(a: &Mat2, b: &Mat2) -> Result<FeReport, SwitchError> {
    if a.field() != b.field() {
        return Err(SwitchError::MixedFields);
    }
    let ai = require_invertible(a, "A")?;
    let bi = require_invertible(b, "B")?;
    require_invertible(&a.sub(&Mat2::identity(a.field())), "A - 1")?;
    let bi_a_b = bi.mul(a).mul(b);
    let lhs = ai.mul(&bi_a_b).sub(&bi_a_b);
    let rhs = b.mul(&ai).mul(&bi).mul(a).sub(a);
    let residual = lhs.sub(&rhs);
    Ok(FeReport {
        is_solution: residual.is_zero(),
        residual,
        is_matching: is_matching(a, b),
        commuting: a.commutes(b),
    })
}

/// `(tr A - det A) det(b) a + (det A - tr A)(a.b) b + (b0 (det A - tr A) + 2 A.B) a×b`,
/// which vanishes on every solution.
pub fn linear_relation_residual(a: &Mat2, b: &Mat2) -> Result<Traceless, SwitchError> {
    fe_residual(a, b)?;
    let (av, bv) = (a.traceless(), b.traceless());
    let k = a.det() - a.tr();
    let b0 = b.scalar_part();
    let two = a.field().from_int(2);
    Ok(av
        .scale(&(-&k * bv.det()))
        .add(&bv.scale(&(&k * &av.dot(&bv))))
        .add(&av.cross(&bv).scale(&(b0 * &k + two * a.dot(b)))))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Switch {
    pub a: Mat2,
    pub b: Mat2,
    pub c: Mat2,
    pub d: Mat2,
    pub kind: SwitchKind,
    /// Set on the variant with `A, D` and `B, C` interchanged.
    pub interchanged: bool,
}

/// Which of the quantities whose invertibility matters actually are.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvertibilityReport {
    pub a: bool,
    pub b: bool,
    pub a_minus_one: bool,
    pub s: bool,
    /// `C^-1 D - A^-1 B` invertible; `None` when `A` or `C` is singular.
    pub delta_prime: Option<bool>,
    /// `(1 - A)^-1 A^-1 B (A - 1)` invertible; `None` when `A` or `1 - A`
    /// is singular.
    pub delta_prime_closed: Option<bool>,
    /// Both forms of `Δ'` coincide as matrices, when both exist.
    pub delta_prime_forms_agree: Option<bool>,
}

impl Switch {
    /// A switch with no structural promise; Yang-Baxter is not checked.
    pub fn raw(a: Mat2, b: Mat2, c: Mat2, d: Mat2) -> Result<Switch, SwitchError> {
        let f = a.field();
        if [&b, &c, &d].iter().any(|m| m.field() != f) {
            return Err(SwitchError::MixedFields);
        }
        Ok(Switch {
            a,
            b,
            c,
            d,
            kind: SwitchKind::Raw,
            interchanged: false,
        })
    }

    /// `C = A^-1 B^-1 A (1 - A)`, `D = 1 - A^-1 B^-1 A B`.
    pub fn noncommutative(a: &Mat2, b: &Mat2) -> Result<Switch, SwitchError> {
        let report = fe_residual(a, b)?;
        if report.commuting {
            return Err(SwitchError::CommutingPair);
        }
        if !report.is_solution {
            return Err(SwitchError::NotASolution(Box::new(report.residual)));
        }
        let ai = a.inverse()?;
        let bi = b.inverse()?;
        let ai_bi_a = ai.mul(&bi).mul(a);
        let s = Switch {
            c: ai_bi_a.mul(&one_minus(a)),
            d: one_minus(&ai_bi_a.mul(b)),
            a: a.clone(),
            b: b.clone(),
            kind: SwitchKind::NonCommutative,
            interchanged: false,
        };
        s.checked()
    }

    pub fn commutative(
        b: &Mat2,
        c: &Mat2,
        variant: CommutativeVariant,
    ) -> Result<Switch, SwitchError> {
        if b.field() != c.field() {
            return Err(SwitchError::MixedFields);
        }
        require_invertible(b, "B")?;
        require_invertible(c, "C")?;
        if b.mul(c) != c.mul(b) {
            return Err(SwitchError::NonCommutingInputs);
        }
        let f = b.field();
        let (zero, rest) = (Mat2::zero(f), one_minus(&b.mul(c)));
        let (a, d, kind) = match variant {
            CommutativeVariant::Type0 => (zero, rest, SwitchKind::CommutativeType0),
            CommutativeVariant::Type1 => (rest, zero, SwitchKind::CommutativeType1),
        };
        Switch {
            a,
            b: b.clone(),
            c: c.clone(),
            d,
            kind,
            interchanged: false,
        }
        .checked()
    }

    fn checked(self) -> Result<Switch, SwitchError> {
        if self.yang_baxter() {
            Ok(self)
        } else {
            Err(SwitchError::YangBaxterFailure)
        }
    }

    /// `[[D, C], [B, A]]`, conjugation by the swap of the two factors.
    pub fn interchanged(&self) -> Switch {
        Switch {
            a: self.d.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
            d: self.a.clone(),
            kind: self.kind,
            interchanged: !self.interchanged,
        }
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    /// The 4×4 matrix `[[A, B], [C, D]]`.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_blocks(&[&[&self.a, &self.b], &[&self.c, &self.d]])
    }

    pub fn inverse_matrix(&self) -> Result<Matrix, SwitchError> {
        self.matrix()
            .inverse()
            .map_err(|_| SwitchError::SingularInput("S"))
    }

    /// `(S×1)(1×S)(S×1) = (1×S)(S×1)(1×S)` as 6×6 matrices.
    pub fn yang_baxter(&self) -> bool {
        let f = self.field();
        let s = self.matrix();
        let i2 = Matrix::identity(f, 2);
        let s1 = s.direct_sum(&i2);
        let s2 = i2.direct_sum(&s);
        let prod =
            |x: &Matrix, y: &Matrix, z: &Matrix| x.mul(y).and_then(|m| m.mul(z)).expect("6x6");
        prod(&s1, &s2, &s1) == prod(&s2, &s1, &s2)
    }

    pub fn invertibility(&self) -> InvertibilityReport {
        let f = self.field();
        let ai = self.a.inverse().ok();
        let one_minus_a_inv = one_minus(&self.a).inverse().ok();
        let by_definition = match (&ai, self.c.inverse().ok()) {
            (Some(ai), Some(ci)) => Some(ci.mul(&self.d).sub(&ai.mul(&self.b))),
            _ => None,
        };
        let closed = match (&ai, &one_minus_a_inv) {
            (Some(ai), Some(oi)) => {
                Some(oi.mul(ai).mul(&self.b).mul(&self.a.sub(&Mat2::identity(f))))
            }
            _ => None,
        };
        InvertibilityReport {
            a: ai.is_some(),
            b: self.b.is_invertible(),
            a_minus_one: one_minus_a_inv.is_some(),
            s: !self.matrix().det().expect("square").is_zero(),
            delta_prime: by_definition.as_ref().map(Mat2::is_invertible),
            delta_prime_closed: closed.as_ref().map(Mat2::is_invertible),
            delta_prime_forms_agree: by_definition.zip(closed).map(|(x, y)| x == y),
        }
    }

    pub fn tag(&self) -> String {
        let base = self.kind.tag();
        if self.interchanged {
            format!("{base}-interchanged")
        } else {
            base.to_string()
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SwitchJson::from(self)).expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Switch, SwitchError> {
        let j: SwitchJson = serde_json::from_value(v.clone())
            .map_err(|e| SwitchError::UnknownTag(format!("malformed switch JSON: {e}")))?;
        j.try_into()
    }
}

impl fmt::Display for Switch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix())
    }
}

#[derive(Serialize, Deserialize)]
struct SwitchJson {
    field: String,
    #[serde(rename = "A")]
    a: Mat2,
    #[serde(rename = "B")]
    b: Mat2,
    #[serde(rename = "C")]
    c: Mat2,
    #[serde(rename = "D")]
    d: Mat2,
    tag: String,
}

impl From<&Switch> for SwitchJson {
    fn from(s: &Switch) -> Self {
        SwitchJson {
            field: s.field().to_string(),
            a: s.a.clone(),
            b: s.b.clone(),
            c: s.c.clone(),
            d: s.d.clone(),
            tag: s.tag(),
        }
    }
}

impl TryFrom<SwitchJson> for Switch {
    type Error = SwitchError;
    fn try_from(j: SwitchJson) -> Result<Self, Self::Error> {
        let field = Field::parse(&j.field)?;
        let (base, interchanged) = match j.tag.strip_suffix("-interchanged") {
            Some(b) => (b, true),
            None => (j.tag.as_str(), false),
        };
        let kind =
            SwitchKind::from_tag(base).ok_or_else(|| SwitchError::UnknownTag(j.tag.clone()))?;
        if j.a.field() != field {
            return Err(SwitchError::MixedFields);
        }
        let mut s = Switch::raw(j.a, j.b, j.c, j.d)?;
        s.kind = kind;
        s.interchanged = interchanged;
        if kind != SwitchKind::Raw {
            s = s.checked()?;
        }
        Ok(s)
    }
}
