use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::BivarPoly;
use crate::{Error, Result};

/// Power series in `z` truncated after `z^order`, with coefficients in `Q[λ₁, q]`.
///
/// Every operation keeps exactly the coefficients `0..=order`; results of
/// binary operations take the smaller order of the two operands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BivarPoly>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BivarPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BivarPoly::one())
    }

    pub fn constant(order: usize, c: BivarPoly) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Pads with zeros or truncates `coeffs` to `order + 1` entries.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<BivarPoly>) -> Self {
        coeffs.resize(order + 1, BivarPoly::zero());
        Self { coeffs }
    }

    /// Series with constant rational coefficients.
    pub fn from_rationals(order: usize, coeffs: &[BigRational]) -> Self {
        Self::from_coeffs(
            order,
            coeffs.iter().cloned().map(BivarPoly::constant).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `[z^k]`, or zero past the truncation order.
    pub fn coeff(&self, k: usize) -> BivarPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BivarPoly] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(order.min(self.order()), self.coeffs.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BivarPoly::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j].add_product(a, b);
                }
            }
        }
        Self { coeffs }
    }

    pub fn scale(&self, c: &BivarPoly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `z`; the top coefficient falls off.
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(BivarPoly::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Self { coeffs }
    }

    /// `d/dz`; the result is known one order less.
    pub fn derivative(&self) -> Self {
        let order = self.order().saturating_sub(1);
        let coeffs = (1..=self.order())
            .map(|k| self.coeffs[k].scale(&BigRational::from_integer(BigInt::from(k))))
            .collect();
        Self::from_coeffs(order, coeffs)
    }

    /// The pointing operator `z d/dz`, which keeps the order.
    pub fn pointing(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a.scale(&BigRational::from_integer(BigInt::from(k))))
                .collect(),
        }
    }

    /// Multiplicative inverse; the constant term must be a non-zero rational.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or(Error::NonInvertibleSeries)?;
        let inv_c0 = BivarPoly::constant(c0.recip());
        let order = self.order();
        let mut out = vec![BivarPoly::zero(); order + 1];
        out[0] = inv_c0.clone();
        for n in 1..=order {
            let mut acc = BivarPoly::zero();
            for k in 1..=n {
                acc.add_product(&self.coeffs[k], &out[n - k]);
            }
            out[n] = &(-&acc) * &inv_c0;
        }
        Ok(Self { coeffs: out })
    }

    pub fn div(&self, denominator: &Self) -> Result<Self> {
        Ok(self.mul(&denominator.inverse()?))
    }

    /// `log(1/(1 − S)) = Σ_{k≥1} S^k/k`; `S` must have zero constant term.
    pub fn log_one_over_one_minus(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain(
                "log(1/(1 - S)) needs S with zero constant term".into(),
            ));
        }
        let order = self.order();
        let mut total = Self::zero(order);
        let mut power = self.clone();
        for k in 1..=order {
            let inv_k = BivarPoly::constant(BigRational::new(1.into(), BigInt::from(k)));
            total = total.add(&power.scale(&inv_k));
            power = power.mul(self);
        }
        Ok(total)
    }

    /// `1/(1 − S)`; `S` must have zero constant term.
    pub fn geometric(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain(
                "1/(1 - S) needs S with zero constant term".into(),
            ));
        }
        Self::one(self.order()).sub(self).inverse()
    }
}
