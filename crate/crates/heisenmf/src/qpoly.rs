//! Sparse polynomials in the decay variable q = exp(-t) with exact rational
//! coefficients. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub};

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{ToPrimitive, Zero};

pub type BigRational = Ratio<BigInt>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: BTreeMap<u64, BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly::monomial(0, c)
    }

    pub fn one() -> Self {
        QPoly::constant(BigRational::from_integer(BigInt::from(1)))
    }

    pub fn monomial(exponent: u64, c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exponent, c);
        }
        QPoly { coeffs }
    }

    pub fn from_integer_coeffs(pairs: &[(u64, i64)]) -> Self {
        let mut out = QPoly::zero();
        for &(e, c) in pairs {
            out.add_term(e, BigRational::from_integer(BigInt::from(c)));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, exponent: u64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exponent).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn coeff(&self, exponent: u64) -> BigRational {
        self.coeffs.get(&exponent).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Exponent-coefficient pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Substitutes q -> q^stride, multiplying every exponent.
    pub fn stretch(&self, stride: u64) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e * stride, v.clone())).collect(),
        }
    }

    /// Multiplies by q^delta, adding to every exponent.
    pub fn shift(&self, delta: u64) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e + delta, v.clone())).collect(),
        }
    }

    /// Evaluates at q = exp(-t) in double precision, Horner over the sparse
    /// exponent ladder.
    pub fn eval_exp(&self, t: f64) -> f64 {
        self.eval((-t).exp())
    }

    pub fn eval(&self, q: f64) -> f64 {
        let mut acc = 0.0;
        let mut prev_exp = 0u64;
        // Descending exponents: acc = acc * q^(gap) + coeff.
        for (&e, c) in self.coeffs.iter().rev() {
            if acc != 0.0 {
                acc *= q.powi((prev_exp - e) as i32);
            }
            acc += rational_to_f64(c);
            prev_exp = e;
        }
        if acc != 0.0 && prev_exp > 0 {
            acc *= q.powi(prev_exp as i32);
        }
        acc
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    // Ratio::to_f64 handles magnitudes beyond f64 by scaling internally.
    r.to_f64().expect("rational out of f64 range")
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}*q", c)?,
                _ => write!(f, "{}*q^{}", c, e)?,
            }
        }
        Ok(())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c.clone());
        }
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn add_cancels_to_zero() {
        let a = QPoly::from_integer_coeffs(&[(0, 3), (2, 1)]);
        let b = QPoly::from_integer_coeffs(&[(2, -1)]);
        let sum = &a + &b;
        assert_eq!(sum, QPoly::from_integer_coeffs(&[(0, 3)]));
        assert_eq!(sum.coeff(2), int(0));
        assert!((&sum - &sum).is_zero());
    }

    #[test]
    fn product_matches_hand_expansion() {
        // (1 - q)(1 + q + q^2) = 1 - q^3
        let a = QPoly::from_integer_coeffs(&[(0, 1), (1, -1)]);
        let b = QPoly::from_integer_coeffs(&[(0, 1), (1, 1), (2, 1)]);
        assert_eq!(&a * &b, QPoly::from_integer_coeffs(&[(0, 1), (3, -1)]));
    }

    #[test]
    fn stretch_scales_exponents() {
        let a = QPoly::from_integer_coeffs(&[(0, 1), (2, 5)]);
        assert_eq!(a.stretch(3), QPoly::from_integer_coeffs(&[(0, 1), (6, 5)]));
    }

    #[test]
    fn eval_matches_direct_sum() {
        let a = QPoly::from_integer_coeffs(&[(0, 3), (3, 4)]);
        let t: f64 = 0.7;
        let q = (-t).exp();
        let want = 3.0 + 4.0 * q.powi(3);
        assert!((a.eval_exp(t) - want).abs() < 1e-14 * want.abs());
        assert_eq!(QPoly::zero().eval_exp(t), 0.0);
    }
}
