//! Elements of Q(t) as reduced fractions of polynomials.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::poly::Poly;

/// A reduced fraction `num / den` with `gcd(num, den) = 1` and `den` monic.
/// Zero is stored as `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Reduces `num / den`. Returns `None` when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFunc::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading().expect("nonzero").clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Some(RatFunc { num, den })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_rational(c: BigRational) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero den");
        }
        // only the common part of the denominators can cancel
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc {
                num,
                den: &self.den * &rhs.den,
            };
        }
        let b = self.den.exact_div(&g).expect("gcd divides");
        let d = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        let h = num.gcd(&g);
        let (num, g) = if h.is_one() || num.is_zero() {
            (num, g)
        } else {
            (
                num.exact_div(&h).expect("gcd divides"),
                g.exact_div(&h).expect("gcd divides"),
            )
        };
        if num.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num,
            den: &(&b * &d) * &g,
        }
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &RatFunc) -> RatFunc {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel first to keep intermediate degrees small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        // inputs are reduced with monic denominators, so this already is
        RatFunc {
            num: &n1 * &n2,
            den: &d1 * &d2,
        }
    }

    /// `None` for zero.
    pub fn recip(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// Square root with positive leading numerator coefficient, when `self`
    /// is a square in Q(t).
    pub fn sqrt(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return Some(RatFunc::zero());
        }
        // reduced with monic denominator: a square iff both parts are squares
        let n = self.num.sqrt_exact()?;
        let d = self.den.sqrt_exact()?;
        RatFunc::new(n, d)
    }

    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d == BigRational::from_integer(0.into()) {
            return None;
        }
        Some(self.num.eval(x) / d)
    }
}

fn wrap(p: &Poly) -> String {
    let s = p.to_string();
    if p.term_count() > 1 {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.term_count() > 1 {
            format!("({})", self.num)
        } else {
            // fractional constants stay grouped: (3/2)/t
            let s = self.num.to_string();
            if self.num.is_constant() && !self.num.coeff(0).is_integer() {
                let c = self.num.coeff(0);
                let sign = if c.is_negative() { "-" } else { "" };
                let c = c.abs();
                format!("{sign}({}/{})", c.numer(), c.denom())
            } else {
                s
            }
        };
        write!(f, "{num}/{}", wrap(&self.den))
    }
}
