use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Polynomial in the crossing weight `q` with non-negative integer coefficients.
///
/// `coeffs[k]` is the coefficient of `q^k`. Trailing zeros are trimmed, so the
/// zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigUint>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigUint::one())
    }

    pub fn monomial(power: usize, coeff: BigUint) -> Self {
        let mut coeffs = vec![BigUint::zero(); power + 1];
        coeffs[power] = coeff;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Coefficient of `q^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Value at `q = 1`, i.e. the sum of all coefficients.
    pub fn at_one(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Value at `q = 0`.
    pub fn at_zero(&self) -> BigUint {
        self.coeff(0)
    }

    /// Horner evaluation in floating point.
    pub fn eval(&self, q: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * q + c.to_f64().unwrap_or(f64::INFINITY))
    }

    /// Multiplies by `[k]_q = 1 + q + … + q^{k-1}`.
    pub(crate) fn times_q_integer(&self, k: usize) -> Self {
        if k == 0 || self.is_zero() {
            return Self::zero();
        }
        let len = self.coeffs.len() + k - 1;
        let mut out = Vec::with_capacity(len);
        let mut window = BigUint::zero();
        for m in 0..len {
            if let Some(c) = self.coeffs.get(m) {
                window += c;
            }
            if m >= k {
                window -= &self.coeffs[m - k];
            }
            out.push(window.clone());
        }
        Self::from_coeffs(out)
    }

    pub(crate) fn add_assign_ref(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigUint::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![BigUint::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::from_coeffs(out)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{c}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{c}q^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_trailing_zeros() {
        let p = QPolynomial::from_u64s(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(QPolynomial::from_u64s(&[0, 0]).degree(), None);
    }

    #[test]
    fn q_integer_product_matches_multiplication() {
        let p = QPolynomial::from_u64s(&[5, 6, 3, 1]);
        for k in 1..6 {
            let qk = QPolynomial::from_u64s(&vec![1; k]);
            assert_eq!(p.times_q_integer(k), &p * &qk, "k = {k}");
        }
        assert!(p.times_q_integer(0).is_zero());
    }

    #[test]
    fn display_and_eval() {
        let p = QPolynomial::from_u64s(&[5, 6, 3, 1]);
        assert_eq!(p.to_string(), "5 + 6q + 3q^2 + q^3");
        assert_eq!(p.eval(1.0), 15.0);
        assert_eq!(p.eval(0.5), 5.0 + 3.0 + 0.75 + 0.125);
    }
}
