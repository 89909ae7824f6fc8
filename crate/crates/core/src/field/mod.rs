//! Exact scalar fields: Q, F_p (odd p up to 2^16) and Q(t).
//!
//! Every [`Scalar`] carries enough of its field to be checked against the
//! other operand, and is kept in canonical form from construction on, so
//! derived `PartialEq`/`Hash` are mathematical equality.

mod parse;
mod poly;
mod ratfunc;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

pub use parse::parse_scalar;
pub use poly::{coprime_basis, poly_gcd, poly_normalize, Poly};
pub use ratfunc::RatFunc;

/// Largest admissible prime modulus.
pub const MAX_PRIME: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields: {0} vs {1}")]
    DescriptorMismatch(Field, Field),
    #[error("invalid modulus {0}: need an odd prime below 2^16")]
    InvalidModulus(u64),
    #[error("cannot parse field descriptor {0:?}")]
    BadDescriptor(String),
    #[error("cannot parse scalar literal {literal:?}: {reason}")]
    Syntax { literal: String, reason: String },
}

/// Which field a scalar belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u32),
    /// Q(t); the variable is always named `t`.
    RationalFunctions,
}

impl Field {
    /// F_p for an odd prime `p < 2^16`.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p < 3 || p > MAX_PRIME as u64 || !is_prime(p) {
            return Err(FieldError::InvalidModulus(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Prime(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => Scalar::residue(reduce_bigint(n, p), p),
            Field::RationalFunctions => {
                Scalar::Function(RatFunc::from_rational(BigRational::from_integer(n.clone())))
            }
        }
    }

    /// `num / den`; fails when `den` vanishes in this field.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, FieldError> {
        self.from_int(num).checked_div(&self.from_int(den))
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, FieldError> {
        self.from_bigint(q.numer())
            .checked_div(&self.from_bigint(q.denom()))
    }

    /// The generator `t` of Q(t); `None` in the other fields.
    pub fn variable(&self) -> Option<Scalar> {
        matches!(self, Field::RationalFunctions)
            .then(|| Scalar::Function(RatFunc::from_poly(Poly::t())))
    }

    /// 1/2, which exists because the characteristic is never 2.
    pub fn half(&self) -> Scalar {
        self.one()
            .checked_div(&self.from_int(2))
            .expect("characteristic is not 2")
    }

    /// Every element of a prime field, in residue order. Empty otherwise.
    pub fn elements(&self) -> Vec<Scalar> {
        match *self {
            Field::Prime(p) => (0..p).map(|v| Scalar::residue(v, p)).collect(),
            _ => Vec::new(),
        }
    }

    /// A pseudo-random element with small coefficients.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match *self {
            Field::Rationals => {
                let n: i64 = rng.gen_range(-9..=9);
                let d: i64 = rng.gen_range(1..=5);
                Scalar::Rational(BigRational::new(n.into(), d.into()))
            }
            Field::Prime(p) => Scalar::residue(rng.gen_range(0..p), p),
            Field::RationalFunctions => {
                let poly = |max_deg: usize, rng: &mut R| {
                    let deg = rng.gen_range(0..=max_deg);
                    Poly::from_ints(
                        &(0..=deg)
                            .map(|_| rng.gen_range(-4i64..=4))
                            .collect::<Vec<_>>(),
                    )
                };
                let num = poly(2, rng);
                let mut den = poly(1, rng);
                if den.is_zero() {
                    den = Poly::one();
                }
                Scalar::Function(RatFunc::new(num, den).expect("nonzero"))
            }
        }
    }

    /// Parses the descriptor syntax `q`, `fp:<p>` or `qt`.
    pub fn parse(s: &str) -> Result<Field, FieldError> {
        let s = s.trim();
        match s {
            "q" | "Q" => Ok(Field::Rationals),
            "qt" | "Q(t)" => Ok(Field::RationalFunctions),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| FieldError::BadDescriptor(s.to_string()))?;
                Field::prime(p)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
            Field::RationalFunctions => write!(f, "qt"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Field::parse(s)
    }
}

/// An exact field element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
    Function(RatFunc),
}

impl Scalar {
    fn residue(value: u32, modulus: u32) -> Scalar {
        Scalar::Residue { value, modulus }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
            Scalar::Function(_) => Field::RationalFunctions,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
            Scalar::Function(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
            Scalar::Function(f) => *f == RatFunc::one(),
        }
    }

    fn mismatch(&self, other: &Scalar) -> FieldError {
        FieldError::DescriptorMismatch(self.field(), other.field())
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        Ok(match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Residue {
                    value: a,
                    modulus: p,
                },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::residue(((*a as u64 + *b as u64) % *p as u64) as u32, *p),
            (Scalar::Function(a), Scalar::Function(b)) => Scalar::Function(a.add(b)),
            _ => return Err(self.mismatch(rhs)),
        })
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        self.checked_add(&rhs.neg_ref())
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        Ok(match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Residue {
                    value: a,
                    modulus: p,
                },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::residue(((*a as u64 * *b as u64) % *p as u64) as u32, *p),
            (Scalar::Function(a), Scalar::Function(b)) => Scalar::Function(a.mul(b)),
            _ => return Err(self.mismatch(rhs)),
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        if self.field() != rhs.field() {
            return Err(self.mismatch(rhs));
        }
        self.checked_mul(&rhs.inv()?)
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => {
                Scalar::residue((*modulus - *value) % *modulus, *modulus)
            }
            Scalar::Function(f) => Scalar::Function(f.neg()),
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Residue { value, modulus } => {
                Scalar::residue(pow_mod(*value, *modulus - 2, *modulus), *modulus)
            }
            Scalar::Function(f) => Scalar::Function(f.recip().expect("nonzero")),
        })
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// A square root inside the field, if one exists: the non-negative one
    /// over Q, the least residue over F_p, positive leading numerator
    /// coefficient over Q(t).
    pub fn sqrt_opt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => poly::rational_sqrt(q).map(Scalar::Rational),
            Scalar::Residue { value, modulus } => {
                sqrt_mod(*value, *modulus).map(|r| Scalar::residue(r, *modulus))
            }
            Scalar::Function(f) => f.sqrt().map(Scalar::Function),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_ratfunc(&self) -> Option<&RatFunc> {
        match self {
            Scalar::Function(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u32> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            _ => None,
        }
    }

    /// View in Q(t): rationals embed as constants; residues do not embed.
    pub fn to_ratfunc(&self) -> Option<RatFunc> {
        match self {
            Scalar::Rational(q) => Some(RatFunc::from_rational(q.clone())),
            Scalar::Function(f) => Some(f.clone()),
            Scalar::Residue { .. } => None,
        }
    }

    /// Parses a literal in the given field; see [`parse_scalar`].
    pub fn parse(field: Field, s: &str) -> Result<Scalar, FieldError> {
        parse_scalar(field, s)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
            Scalar::Function(r) => write!(f, "{r}"),
        }
    }
}

// Operators panic on mismatched fields; matrices and switches guarantee a
// shared field, so a mismatch there is a bug rather than an input error.
macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

fn reduce_bigint(n: &BigInt, p: u32) -> u32 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() {
        r + BigInt::from(p)
    } else {
        r
    };
    r.to_u32().expect("residue fits")
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    (2..)
        .take_while(|d| d * d <= n)
        .all(|d| !n.is_multiple_of(d))
}

pub(crate) fn pow_mod(base: u32, mut e: u32, p: u32) -> u32 {
    let p = p as u64;
    let mut b = base as u64 % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc as u32
}

/// Tonelli-Shanks; returns the smaller of the two roots.
fn sqrt_mod(a: u32, p: u32) -> Option<u32> {
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let pl = p as u64;
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p) as u64;
    let mut t = pow_mod(a, q, p) as u64;
    let mut r = pow_mod(a, q.div_ceil(2), p) as u64;
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = tt * tt % pl;
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = b * b % pl;
        }
        m = i;
        c = b * b % pl;
        t = t * c % pl;
        r = r * b % pl;
    }
    let r = r as u32;
    Some(r.min(p - r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Scalar {
        Field::Rationals.from_ratio(n, d).unwrap()
    }

    #[test]
    fn arith_examples() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.from_int(3).inv().unwrap(), f5.from_int(2));
        let qt = Field::RationalFunctions;
        let t = qt.variable().unwrap();
        let r = (&(&t * &t) - &qt.one())
            .checked_div(&(&t - &qt.one()))
            .unwrap();
        assert_eq!(r, &t + &qt.one());
    }

    #[test]
    fn errors() {
        assert_eq!(
            q(1, 1).checked_div(&q(0, 1)),
            Err(FieldError::DivisionByZero)
        );
        let f5 = Field::prime(5).unwrap();
        assert!(matches!(
            q(1, 1).checked_add(&f5.one()),
            Err(FieldError::DescriptorMismatch(
                Field::Rationals,
                Field::Prime(5)
            ))
        ));
        assert!(f5.zero().inv().is_err());
        assert_eq!(Field::prime(2), Err(FieldError::InvalidModulus(2)));
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(65537).is_err());
        assert!(Field::prime(65521).is_ok());
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(q(9, 4).sqrt_opt(), Some(q(3, 2)));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.from_int(4).sqrt_opt(), Some(f5.from_int(2)));
        assert_eq!(q(2, 1).sqrt_opt(), None);
        assert_eq!(q(-1, 1).sqrt_opt(), None);
        assert_eq!(f5.from_int(-1).sqrt_opt(), Some(f5.from_int(2)));
        assert_eq!(Field::prime(3).unwrap().from_int(-1).sqrt_opt(), None);
    }

    #[test]
    fn sqrt_matches_euler_criterion() {
        for p in [3u32, 5, 7, 11, 13, 17, 97, 65521] {
            let f = Field::Prime(p);
            for v in (1..p).step_by(((p / 200) as usize).max(1)) {
                let x = Scalar::residue(v, p);
                let euler = x.pow(((p - 1) / 2) as u64).is_one();
                match x.sqrt_opt() {
                    Some(r) => {
                        assert!(euler);
                        assert_eq!(r.square(), x);
                        assert!(r.as_residue().unwrap() <= p / 2);
                    }
                    None => assert!(!euler, "p={p} v={v}"),
                }
            }
            assert_eq!(f.zero().sqrt_opt(), Some(f.zero()));
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [
            Field::Rationals,
            Field::Prime(7),
            Field::Prime(65521),
            Field::RationalFunctions,
        ] {
            for _ in 0..1000 {
                let (a, b, c) = (
                    field.sample(&mut rng),
                    field.sample(&mut rng),
                    field.sample(&mut rng),
                );
                assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a + &b, &b + &a);
                assert_eq!(&a * &b, &b * &a);
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                assert_eq!(&a - &a, field.zero());
                if !a.is_zero() {
                    assert_eq!(&a * &a.inv().unwrap(), field.one());
                }
                let sq = a.square();
                let r = sq.sqrt_opt().expect("squares have roots");
                assert_eq!(r.square(), sq);
            }
        }
    }

    #[test]
    fn descriptor_round_trip() {
        for f in [Field::Rationals, Field::Prime(7), Field::RationalFunctions] {
            assert_eq!(Field::parse(&f.to_string()).unwrap(), f);
        }
        assert!(Field::parse("fp:4").is_err());
        assert!(Field::parse("r").is_err());
    }
}
