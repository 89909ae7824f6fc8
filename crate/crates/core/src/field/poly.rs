//! Dense univariate polynomials over Q in the variable `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial with rational coefficients, stored low degree first.
///
/// The coefficient vector never has trailing zeros, so the zero polynomial
/// is the empty vector and `degree()` returns `None` for it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Poly::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigRational, power: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); power + 1];
        coeffs[power] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> BigRational {
        self.coeffs
            .get(power)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` stands for the degree of the zero polynomial (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Euclidean division. Panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Quotient when `divisor` divides `self` exactly, `None` otherwise.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        // primitive remainder sequence over Z[t] keeps coefficients small
        let (mut a, mut b) = (primitive_ints(self), primitive_ints(other));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = pseudo_rem(&a, &b);
            if r.is_empty() {
                break;
            }
            if r.len() == 1 {
                return Poly::one();
            }
            a = b;
            b = primitive_part(r);
        }
        Poly::from_coeffs(b.into_iter().map(BigRational::from_integer).collect()).monic()
    }

    /// The product of the distinct irreducible factors, made monic.
    pub fn square_free_part(&self) -> Poly {
        if self.is_constant() {
            return Poly::one();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Scales to integer coefficients with gcd 1 and positive leading
    /// coefficient.
    pub fn integer_primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            content = -content;
        }
        Poly::from_coeffs(
            ints.into_iter()
                .map(|c| BigRational::from_integer(c / &content))
                .collect(),
        )
    }

    /// Exact square root with positive leading coefficient, if `self` is the
    /// square of a polynomial over Q.
    pub fn sqrt_exact(&self) -> Option<Poly> {
        let Some(deg) = self.degree() else {
            return Some(Poly::zero());
        };
        if deg % 2 == 1 {
            return None;
        }
        let half = deg / 2;
        let lead = rational_sqrt(&self.coeffs[deg])?;
        let two_lead_inv = (&lead + &lead).recip();
        let mut root = vec![BigRational::zero(); half + 1];
        root[half] = lead;
        // Coefficient of t^(half + k) in root^2 determines root[k].
        for k in (0..half).rev() {
            let mut acc = self.coeffs[half + k].clone();
            for i in (k + 1)..half {
                acc -= &root[i] * &root[half + k - i];
            }
            root[k] = acc * &two_lead_inv;
        }
        let root = Poly::from_coeffs(root);
        (&root * &root == *self).then_some(root)
    }

    /// Divides out every irreducible factor shared with any of `unit_factors`
    /// (to full multiplicity), then scales to a primitive integer polynomial
    /// with positive leading coefficient.
    pub fn normalize(&self, unit_factors: &[Poly]) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut p = self.clone();
        for u in unit_factors.iter().filter(|u| !u.is_constant()) {
            loop {
                let g = p.gcd(u);
                if g.is_constant() {
                    break;
                }
                p = p.exact_div(&g).expect("gcd divides");
            }
        }
        p.integer_primitive()
    }

    /// Writes `self` in the scalar literal grammar, e.g. `(3/2)t^2 - t + 1`.
    fn write_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let abs = c.abs();
            if k == 0 {
                write_rational(f, &abs)?;
                continue;
            }
            if !abs.is_one() {
                if abs.is_integer() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "({}/{})", abs.numer(), abs.denom())?;
                }
            }
            if k == 1 {
                write!(f, "t")?;
            } else {
                write!(f, "t^{k}")?;
            }
        }
        Ok(())
    }
}

/// Integer coefficients of a nonzero polynomial with content 1.
fn primitive_ints(p: &Poly) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    primitive_part(
        p.coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect(),
    )
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_one() && !content.is_zero() {
        for c in v.iter_mut() {
            *c = &*c / &content;
        }
    }
    v
}

/// Remainder of `lc(b)^k a` by `b` over Z[t], trailing zeros stripped.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let lr = r.pop().expect("nonempty");
        let shift = r.len() - db;
        if !lr.is_zero() {
            for c in r.iter_mut() {
                *c *= lb;
            }
            for (j, bj) in b[..db].iter().enumerate() {
                r[shift + j] -= &lr * bj;
            }
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Non-negative rational square root, if one exists.
pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = integer_sqrt(q.numer())?;
    let d = integer_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}

fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Monic gcd of two polynomials.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Poly {
    p.gcd(q)
}

/// Strips unit factors and rational content; see [`Poly::normalize`].
pub fn poly_normalize(p: &Poly, unit_factors: &[Poly]) -> Poly {
    p.normalize(unit_factors)
}

/// Refines a list of polynomials into a sorted list of pairwise coprime,
/// square-free, monic, nonconstant polynomials whose product has the same
/// irreducible factors as the product of the inputs.
pub fn coprime_basis(polys: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = polys
        .iter()
        .filter(|p| !p.is_constant())
        .map(Poly::square_free_part)
        .collect();
    loop {
        basis.retain(|p| !p.is_constant());
        basis.sort_by(poly_order);
        basis.dedup();
        let mut split = None;
        'outer: for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let g = basis[i].gcd(&basis[j]);
                if !g.is_constant() {
                    split = Some((i, j, g));
                    break 'outer;
                }
            }
        }
        let Some((i, j, g)) = split else { break };
        let bj = basis.remove(j);
        let bi = basis.remove(i);
        basis.push(bi.exact_div(&g).expect("gcd divides").monic());
        basis.push(bj.exact_div(&g).expect("gcd divides").monic());
        basis.push(g);
    }
    basis
}

/// Deterministic total order: by degree, then coefficients from the top.
pub(crate) fn poly_order(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}
