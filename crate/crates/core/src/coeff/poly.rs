//! Dense univariate polynomials in `v` over the integers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients are stored lowest degree first with no trailing zeros, so the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::from_coeffs(vec![c.into()])
    }

    /// `c * v^deg`
    pub fn monomial(c: impl Into<BigInt>, deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c.into();
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
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

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Largest `k` such that `v^k` divides `self` (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.push(c);
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies by `v^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divides by `v^k`; the caller guarantees `k <= valuation()`.
    pub fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(k <= self.valuation() || self.is_zero());
        Poly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// `v^deg * p(1/v)`.
    pub fn reversed(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(coeffs)
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_int_exact(&self, c: &BigInt) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.content();
        let mut p = self.div_int_exact(&c);
        if p.leading().is_some_and(Signed::is_negative) {
            p = p.neg();
        }
        p
    }

    /// Pseudo-remainder of `self` by `d` (`d` nonzero).
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let rl = r.leading().unwrap().clone();
            // r <- lc * r - rl * v^(rd-dd) * d
            let t = d.scale(&rl).shift_up(rd - dd);
            r = r.scale(&lc).sub(&t);
            // keep coefficients small
            if !r.is_zero() {
                let c = r.content();
                if !c.is_one() {
                    r = r.div_int_exact(&c);
                }
            }
        }
        r
    }

    /// Exact quotient `self / d` in `Z[v]`. Panics if the division is not exact.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by zero polynomial");
        if d.is_one() {
            return self.clone();
        }
        let lc = d.leading().unwrap();
        let mut r = self.clone();
        let Some(sd) = r.degree() else {
            return Poly::zero();
        };
        if sd < dd {
            panic!("inexact polynomial division");
        }
        let mut q = vec![BigInt::zero(); sd - dd + 1];
        while let Some(rd) = r.degree() {
            if rd < dd {
                panic!("inexact polynomial division");
            }
            let (qc, rem) = r.leading().unwrap().div_rem(lc);
            assert!(rem.is_zero(), "inexact polynomial division");
            let t = d.scale(&qc).shift_up(rd - dd);
            q[rd - dd] = qc;
            r = r.sub(&t);
        }
        Poly::from_coeffs(q)
    }

    /// Primitive gcd (positive leading coefficient); the gcd of the integer
    /// contents is not included.
    pub fn gcd_primitive(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        // strip common powers of v first; denominators are often v^k times something
        let vk = self.valuation().min(other.valuation());
        let mut a = self.shift_down(self.valuation()).primitive();
        let mut b = other.shift_down(other.valuation()).primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                a = Poly::one();
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().shift_up(vk)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    fn write_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (deg, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{abs}*v")?,
                (_, true) => write!(f, "v^{deg}")?,
                (_, false) => write!(f, "{abs}*v^{deg}")?,
            }
        }
        Ok(())
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f)
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_i64s(cs)
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (1+v^2)(v-2) and (1+v^2)(3v+1) v
        let a = p(&[1, 0, 1]).mul(&p(&[-2, 1]));
        let b = p(&[1, 0, 1]).mul(&p(&[1, 3])).mul(&p(&[0, 1]));
        assert_eq!(a.gcd_primitive(&b), p(&[1, 0, 1]));
    }

    #[test]
    fn gcd_strips_v_powers() {
        let a = p(&[0, 0, 0, 2]);
        let b = p(&[0, 0, 4, 4]);
        assert_eq!(a.gcd_primitive(&b), p(&[0, 0, 1]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 2, 1]).mul(&p(&[3, 0, -5]));
        assert_eq!(a.div_exact(&p(&[1, 1])), p(&[1, 1]).mul(&p(&[3, 0, -5])));
    }

    #[test]
    #[should_panic(expected = "inexact")]
    fn inexact_division_panics() {
        p(&[1, 0, 1]).div_exact(&p(&[1, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, 0, 1, 0, 0, 0, 1, 0, -1]).to_string(), "-v^8+v^6+v^2");
        assert_eq!(p(&[-3, 2]).to_string(), "2*v-3");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
