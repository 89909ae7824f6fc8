//! The split quaternion algebra M2(F) in the Pauli basis
//! `i = [[0,1],[-1,0]]`, `j = [[0,1],[1,0]]`, `k = [[1,0],[0,-1]]`, `ij = k`.
//!
//! Products on traceless parts come in two signatures: the hyperbolic ones
//! (`dot`, `cross`), which are what the algebra multiplication produces,
//! and the euclidean ones (`dot_e`, `cross_e`) used to describe the
//! isotropic cone `x1^2 - x2^2 - x3^2 = 0`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Quat2Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("input is zero")]
    ZeroInput,
    #[error("a square root of {0} is needed but does not exist in the field")]
    NeedsExtension(String),
    #[error("entries must share one field")]
    MixedFields,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A 2×2 matrix `[[e11, e12], [e21, e22]]` over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Mat2Json", into = "Mat2Json")]
pub struct Mat2 {
    pub e11: Scalar,
    pub e12: Scalar,
    pub e21: Scalar,
    pub e22: Scalar,
}

/// Coordinates `a0 + a1 i + a2 j + a3 k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliVec {
    pub a0: Scalar,
    pub a1: Scalar,
    pub a2: Scalar,
    pub a3: Scalar,
}

/// A traceless element `a1 i + a2 j + a3 k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Traceless {
    pub a1: Scalar,
    pub a2: Scalar,
    pub a3: Scalar,
}

impl Mat2 {
    pub fn new(e11: Scalar, e12: Scalar, e21: Scalar, e22: Scalar) -> Result<Mat2, Quat2Error> {
        let f = e11.field();
        if [&e12, &e21, &e22].iter().any(|e| e.field() != f) {
            return Err(Quat2Error::MixedFields);
        }
        Ok(Mat2 { e11, e12, e21, e22 })
    }

    /// Integer entries, row-major.
    pub fn from_ints(field: Field, rows: [[i64; 2]; 2]) -> Mat2 {
        Mat2 {
            e11: field.from_int(rows[0][0]),
            e12: field.from_int(rows[0][1]),
            e21: field.from_int(rows[1][0]),
            e22: field.from_int(rows[1][1]),
        }
    }

    /// Parses four scalar literals, row-major.
    pub fn parse(field: Field, rows: [[&str; 2]; 2]) -> Result<Mat2, Quat2Error> {
        let p = |s: &str| Scalar::parse(field, s);
        Ok(Mat2 {
            e11: p(rows[0][0])?,
            e12: p(rows[0][1])?,
            e21: p(rows[1][0])?,
            e22: p(rows[1][1])?,
        })
    }

    pub fn scalar(s: Scalar) -> Mat2 {
        let z = s.field().zero();
        Mat2 {
            e11: s.clone(),
            e12: z.clone(),
            e21: z,
            e22: s,
        }
    }

    pub fn identity(field: Field) -> Mat2 {
        Mat2::scalar(field.one())
    }

    pub fn zero(field: Field) -> Mat2 {
        Mat2::scalar(field.zero())
    }

    pub fn field(&self) -> Field {
        self.e11.field()
    }

    pub fn entries(&self) -> [&Scalar; 4] {
        [&self.e11, &self.e12, &self.e21, &self.e22]
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.e11.is_one() && self.e22.is_one() && self.e12.is_zero() && self.e21.is_zero()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.e21.is_zero()
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            e11: &self.e11 + &o.e11,
            e12: &self.e12 + &o.e12,
            e21: &self.e21 + &o.e21,
            e22: &self.e22 + &o.e22,
        }
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Mat2 {
        self.map(|e| -e)
    }

    pub fn scale(&self, s: &Scalar) -> Mat2 {
        self.map(|e| e * s)
    }

    fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Mat2 {
        Mat2 {
            e11: f(&self.e11),
            e12: f(&self.e12),
            e21: f(&self.e21),
            e22: f(&self.e22),
        }
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            e11: &self.e11 * &o.e11 + &self.e12 * &o.e21,
            e12: &self.e11 * &o.e12 + &self.e12 * &o.e22,
            e21: &self.e21 * &o.e11 + &self.e22 * &o.e21,
            e22: &self.e21 * &o.e12 + &self.e22 * &o.e22,
        }
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2 {
            e11: self.e11.clone(),
            e12: self.e21.clone(),
            e21: self.e12.clone(),
            e22: self.e22.clone(),
        }
    }

    pub fn det(&self) -> Scalar {
        &self.e11 * &self.e22 - &self.e12 * &self.e21
    }

    pub fn tr(&self) -> Scalar {
        &self.e11 + &self.e22
    }

    /// The adjugate `[[d, -b], [-c, a]]`, equal to `a0 - a` in Pauli form.
    pub fn conjugate(&self) -> Mat2 {
        Mat2 {
            e11: self.e22.clone(),
            e12: -&self.e12,
            e21: -&self.e21,
            e22: self.e11.clone(),
        }
    }

    pub fn inverse(&self) -> Result<Mat2, Quat2Error> {
        let d = self.det();
        let inv = d.inv().map_err(|_| Quat2Error::SingularMatrix)?;
        Ok(self.conjugate().scale(&inv))
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    /// `(1/2) tr(A conj(B))`; its quadratic form is `det`.
    pub fn dot(&self, o: &Mat2) -> Scalar {
        self.mul(&o.conjugate()).tr() * self.field().half()
    }

    pub fn to_pauli(&self) -> PauliVec {
        let h = self.field().half();
        PauliVec {
            a0: (&self.e11 + &self.e22) * &h,
            a1: (&self.e12 - &self.e21) * &h,
            a2: (&self.e12 + &self.e21) * &h,
            a3: (&self.e11 - &self.e22) * &h,
        }
    }

    pub fn from_pauli(v: &PauliVec) -> Mat2 {
        Mat2 {
            e11: &v.a0 + &v.a3,
            e12: &v.a1 + &v.a2,
            e21: &v.a2 - &v.a1,
            e22: &v.a0 - &v.a3,
        }
    }

    /// The scalar part `a0 = tr/2`.
    pub fn scalar_part(&self) -> Scalar {
        self.tr() * self.field().half()
    }

    pub fn traceless(&self) -> Traceless {
        self.to_pauli().traceless()
    }

    /// AB = BA, decided by dependence of the traceless parts.
    pub fn commutes(&self, o: &Mat2) -> bool {
        self.traceless().pair_dependent(&o.traceless())
    }

    /// `C^{-1} M C`.
    pub fn group_conjugate(&self, c: &Mat2) -> Result<Mat2, Quat2Error> {
        Ok(c.inverse()?.mul(self).mul(c))
    }

    pub fn sample<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Mat2 {
        Mat2 {
            e11: field.sample(rng),
            e12: field.sample(rng),
            e21: field.sample(rng),
            e22: field.sample(rng),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e11, self.e12, self.e21, self.e22
        )
    }
}

#[derive(Serialize, Deserialize)]
struct Mat2Json {
    field: String,
    rows: [[String; 2]; 2],
}

impl From<Mat2> for Mat2Json {
    fn from(m: Mat2) -> Self {
        Mat2Json {
            field: m.field().to_string(),
            rows: [
                [m.e11.to_string(), m.e12.to_string()],
                [m.e21.to_string(), m.e22.to_string()],
            ],
        }
    }
}

impl TryFrom<Mat2Json> for Mat2 {
    type Error = Quat2Error;
    fn try_from(j: Mat2Json) -> Result<Self, Self::Error> {
        let field = Field::parse(&j.field)?;
        let [[a, b], [c, d]] = &j.rows;
        Mat2::parse(field, [[a.as_str(), b.as_str()], [c.as_str(), d.as_str()]])
    }
}

impl PauliVec {
    pub fn from_ints(field: Field, c: [i64; 4]) -> PauliVec {
        PauliVec {
            a0: field.from_int(c[0]),
            a1: field.from_int(c[1]),
            a2: field.from_int(c[2]),
            a3: field.from_int(c[3]),
        }
    }

    pub fn to_mat2(&self) -> Mat2 {
        Mat2::from_pauli(self)
    }

    pub fn traceless(&self) -> Traceless {
        Traceless {
            a1: self.a1.clone(),
            a2: self.a2.clone(),
            a3: self.a3.clone(),
        }
    }

    /// `a0 + a`.
    pub fn compose(a0: Scalar, a: &Traceless) -> PauliVec {
        PauliVec {
            a0,
            a1: a.a1.clone(),
            a2: a.a2.clone(),
            a3: a.a3.clone(),
        }
    }
}

impl Traceless {
    pub fn new(a1: Scalar, a2: Scalar, a3: Scalar) -> Traceless {
        Traceless { a1, a2, a3 }
    }

    pub fn from_ints(field: Field, c: [i64; 3]) -> Traceless {
        Traceless::new(
            field.from_int(c[0]),
            field.from_int(c[1]),
            field.from_int(c[2]),
        )
    }

    pub fn zero(field: Field) -> Traceless {
        Traceless::from_ints(field, [0, 0, 0])
    }

    pub fn field(&self) -> Field {
        self.a1.field()
    }

    pub fn coords(&self) -> [&Scalar; 3] {
        [&self.a1, &self.a2, &self.a3]
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }

    pub fn to_mat2(&self) -> Mat2 {
        Mat2::from_pauli(&PauliVec::compose(self.field().zero(), self))
    }

    pub fn add(&self, o: &Traceless) -> Traceless {
        Traceless::new(&self.a1 + &o.a1, &self.a2 + &o.a2, &self.a3 + &o.a3)
    }

    pub fn sub(&self, o: &Traceless) -> Traceless {
        Traceless::new(&self.a1 - &o.a1, &self.a2 - &o.a2, &self.a3 - &o.a3)
    }

    pub fn scale(&self, s: &Scalar) -> Traceless {
        Traceless::new(&self.a1 * s, &self.a2 * s, &self.a3 * s)
    }

    /// Hyperbolic form `a1 b1 - a2 b2 - a3 b3`.
    pub fn dot(&self, o: &Traceless) -> Scalar {
        &self.a1 * &o.a1 - &self.a2 * &o.a2 - &self.a3 * &o.a3
    }

    /// `det(a) = a . a`.
    pub fn det(&self) -> Scalar {
        self.dot(self)
    }

    /// Hyperbolic cross product: the traceless part of `ab`, so that
    /// `ab = -a.b + a×b`.
    pub fn cross(&self, o: &Traceless) -> Traceless {
        Traceless::new(
            &self.a3 * &o.a2 - &self.a2 * &o.a3,
            &self.a3 * &o.a1 - &self.a1 * &o.a3,
            &self.a1 * &o.a2 - &self.a2 * &o.a1,
        )
    }

    pub fn dot_e(&self, o: &Traceless) -> Scalar {
        &self.a1 * &o.a1 + &self.a2 * &o.a2 + &self.a3 * &o.a3
    }

    pub fn cross_e(&self, o: &Traceless) -> Traceless {
        Traceless::new(
            &self.a2 * &o.a3 - &self.a3 * &o.a2,
            &self.a3 * &o.a1 - &self.a1 * &o.a3,
            &self.a1 * &o.a2 - &self.a2 * &o.a1,
        )
    }

    /// `(x1, x2, x3) -> (-x1, x2, x3)`.
    pub fn rho(&self) -> Traceless {
        Traceless::new(-&self.a1, self.a2.clone(), self.a3.clone())
    }

    /// Scalar triple product `a . (b × c)`, which is minus the determinant
    /// of the coordinate rows.
    pub fn triple(&self, b: &Traceless, c: &Traceless) -> Scalar {
        self.dot(&b.cross(c))
    }

    pub fn is_isotropic(&self) -> bool {
        self.det().is_zero()
    }

    pub fn pair_dependent(&self, o: &Traceless) -> bool {
        self.cross(o).is_zero()
    }

    /// `a, b, a×b` linearly dependent, i.e. `det(a)det(b) = (a.b)^2`.
    pub fn triple_dependent(&self, o: &Traceless) -> bool {
        let d = self.dot(o);
        self.det() * o.det() == &d * &d
    }

    /// Group-conjugates `a` into the plane `a3 = 0`.
    ///
    /// Returns `(C, a')` with `C^{-1} a C = a'`. Off the isotropic line,
    /// `C = (s - a2) - a3 i` with `s^2 = a2^2 + a3^2` and the image is
    /// `a1 i - s j`. When `a2^2 + a3^2` is a
    /// nonzero non-square the required conjugator does not exist over the
    /// field and `NeedsExtension` is returned. On the isotropic line
    /// `a2^2 + a3^2 = 0` a cyclic-vector basis gives the companion form
    /// `[[0, -det a], [1, 0]]`.
    pub fn canonicalize(&self) -> Result<(Mat2, Traceless), Quat2Error> {
        let f = self.field();
        if self.is_zero() {
            return Err(Quat2Error::ZeroInput);
        }
        if self.a3.is_zero() {
            return Ok((Mat2::identity(f), self.clone()));
        }
        let n = self.a2.square() + self.a3.square();
        let c = if n.is_zero() {
            cyclic_conjugator(&self.to_mat2())
        } else {
            let s = n
                .sqrt_opt()
                .ok_or_else(|| Quat2Error::NeedsExtension(n.to_string()))?;
            let c = PauliVec {
                a0: &s - &self.a2,
                a1: -&self.a3,
                a2: f.zero(),
                a3: f.zero(),
            };
            Mat2::from_pauli(&c)
        };
        assert!(c.is_invertible(), "conjugator must be invertible");
        let image = self.to_mat2().group_conjugate(&c)?.traceless();
        debug_assert!(image.a3.is_zero());
        Ok((c, image))
    }

    pub fn sample<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Traceless {
        Traceless::new(field.sample(rng), field.sample(rng), field.sample(rng))
    }
}

/// `[v | m v]` for a standard basis vector `v` that is not an eigenvector.
fn cyclic_conjugator(m: &Mat2) -> Mat2 {
    let f = m.field();
    if !m.e21.is_zero() {
        Mat2 {
            e11: f.one(),
            e12: m.e11.clone(),
            e21: f.zero(),
            e22: m.e21.clone(),
        }
    } else {
        Mat2 {
            e11: f.zero(),
            e12: m.e12.clone(),
            e21: f.one(),
            e22: m.e22.clone(),
        }
    }
}

impl fmt::Display for Traceless {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a1, self.a2, self.a3)
    }
}
