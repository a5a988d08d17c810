use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Poly;
use crate::error::{Error, Result};

/// An element of `Q(v)`, kept in canonical form: coprime numerator and
/// denominator, jointly content-free, denominator with positive leading
/// coefficient. Structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn int(c: i64) -> Self {
        Scalar::from_poly(Poly::constant(c))
    }

    pub fn ratio(n: i64, d: i64) -> Result<Self> {
        Scalar::new(Poly::constant(n), Poly::constant(d))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar { num: p, den: Poly::one() }
    }

    /// `v = sqrt(q)`
    pub fn v() -> Self {
        Scalar::from_poly(Poly::monomial(1, 1))
    }

    /// `q = v^2`
    pub fn q() -> Self {
        Scalar::from_poly(Poly::monomial(1, 2))
    }

    /// The loop value `q / (1+q)^2`.
    pub fn delta() -> Self {
        Scalar::from_parts(Poly::monomial(1, 2), Poly::from_i64s(&[1, 0, 1]).pow(2))
    }

    /// `-(1+q)/sqrt(q)`, the factor picked up by a trace when the top strand is free.
    pub fn loop_factor() -> Self {
        Scalar::from_parts(Poly::from_i64s(&[-1, 0, -1]), Poly::monomial(1, 1))
    }

    /// `-sqrt(q)/(1+q)`, the inverse of [`Scalar::loop_factor`].
    pub fn markov_f() -> Self {
        Scalar::from_parts(Poly::monomial(-1, 1), Poly::from_i64s(&[1, 0, 1]))
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::from_parts(num, den))
    }

    /// Canonicalizes `num / den`; `den` must be nonzero.
    pub(crate) fn from_parts(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar::zero();
        }
        let (mut num, mut den) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let g = num.gcd_primitive(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        // joint integer content
        let c = {
            let cn = num.content();
            if cn.is_one() {
                cn
            } else {
                num_integer::Integer::gcd(&cn, &den.content())
            }
        };
        if !c.is_one() {
            num = num.div_int_exact(&c);
            den = den.div_int_exact(&c);
        }
        if den.leading().is_some_and(Signed::is_negative) {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
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

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::from_parts(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Scalar) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        // coprime parts stay coprime under powers
        Ok(Scalar { num: base.num.pow(e), den: base.den.pow(e) }.renormalized())
    }

    fn renormalized(self) -> Self {
        Scalar::from_parts(self.num, self.den)
    }

    /// The field automorphism `v -> 1/v`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Scalar::zero();
        }
        // n(1/v)/d(1/v) = rev(n) v^{deg d} / (rev(d) v^{deg n})
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let rn = self.num.reversed();
        let rd = self.den.reversed();
        let (num, den) = if dd >= dn {
            (rn.shift_up(dd - dn), rd)
        } else {
            (rn, rd.shift_up(dn - dd))
        };
        Scalar::from_parts(num, den)
    }

    /// Exact value at `v = v0`.
    pub fn eval_at(&self, v0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(v0);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(v0) / d)
    }

    pub fn eval_at_int(&self, v0: i64) -> Result<BigRational> {
        self.eval_at(&BigRational::from_integer(BigInt::from(v0)))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Scalar::int(c)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Scalar::from_parts(self.num.add(&rhs.num), self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Scalar::from_parts(num, self.den.mul(&rhs.den))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        // cross-cancel first so the products stay small
        let g1 = self.num.gcd_primitive(&rhs.den);
        let g2 = rhs.num.gcd_primitive(&self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_exact(&g1), rhs.den.div_exact(&g1))
        };
        let (n2, d1) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_exact(&g2), self.den.div_exact(&g2))
        };
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        // coprime in Q[v] now; only the integer content may remain
        Scalar::from_parts_coprime(num, den)
    }
}

impl Scalar {
    fn from_parts_coprime(mut num: Poly, mut den: Poly) -> Self {
        let c = num_integer::Integer::gcd(&num.content(), &den.content());
        if !c.is_one() {
            num = num.div_int_exact(&c);
            den = den.div_int_exact(&c);
        }
        if den.leading().is_some_and(Signed::is_negative) {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &'a Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})/", self.num)?;
        } else {
            write!(f, "{}/", self.num)?;
        }
        let den_bare = self.den.term_count() == 1
            && (self.den.is_constant() || self.den.leading().is_some_and(One::is_one));
        if den_bare {
            write!(f, "{}", self.den)
        } else {
            write!(f, "({})", self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse_scalar(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
