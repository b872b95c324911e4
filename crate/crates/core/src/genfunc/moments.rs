use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{BivarPoly, PowerSeries};
use crate::qcomb::{binomial, composition_terms, factorial, rt_polynomial};
use crate::Result;

/// Default truncation order of the moment generating functions.
pub const DEFAULT_ORDER: usize = 24;

/// The subtracted moment `m_p` as an exact polynomial in `(λ₁, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentValue {
    pub p: usize,
    pub value: BivarPoly,
}

impl MomentValue {
    pub fn eval(&self, lambda1: f64, q: f64) -> f64 {
        self.value.eval(lambda1, q)
    }
}

fn rational(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn rt_table(max: usize) -> Vec<BivarPoly> {
    (0..=max)
        .map(|i| BivarPoly::from_qpoly(&rt_polynomial(i)))
        .collect()
}

/// `R(z, q) = Σ RT(i, q) z^{2i}` truncated after `z^order`.
pub fn series_r(order: usize) -> PowerSeries {
    let rt = rt_table(order / 2);
    let mut coeffs = vec![BivarPoly::zero(); order + 1];
    for (i, poly) in rt.into_iter().enumerate() {
        coeffs[2 * i] = poly;
    }
    PowerSeries::from_coeffs(order, coeffs)
}

/// `m_p` from the double sum over `j` and multiplicity vectors `(k₁, …, k_j)`:
///
/// `Σ_j λ₁^{p−2j} · p/(p−2j) · Σ_k multinomial(p−2j; k₁, …, k_j, p−2j−Σk) · Π RT(i, q)^{k_i}`
///
/// The `j = 0` term is `λ₁^p`.
pub fn moments_closed(p: usize) -> MomentValue {
    assert!(p >= 1, "moments are indexed from p = 1");
    let max_j = (p - 1) / 2;
    let rt = rt_table(max_j);
    let mut value = BivarPoly::zero();
    for j in 0..=max_j {
        let free = p - 2 * j;
        let mut inner = BivarPoly::zero();
        for term in composition_terms(j) {
            let parts = term.parts();
            if parts > free {
                continue;
            }
            let denom = term
                .multiplicities()
                .iter()
                .fold(factorial(free - parts), |acc, &k| acc * factorial(k));
            let multinomial = factorial(free) / denom;
            let mut product = BivarPoly::constant(rational(multinomial));
            for (size, k) in term.iter() {
                product = &product * &rt[size].pow(k as u32);
            }
            inner.add_assign_ref(&product);
        }
        let prefactor = BigRational::new(BigInt::from(p), BigInt::from(free));
        value.add_assign_ref(&inner.scale(&prefactor).times_lambda_pow(free as u32));
    }
    MomentValue { p, value }
}

/// `m_p` from the sum over compositions of `j` into `l` ordered parts:
///
/// `Σ_j λ₁^{p−2j} · p/(p−2j) · Σ_l C(p−2j, l) · Σ_{k₁+…+k_l=j} Π RT(k_i, q)`
pub fn moments_composition(p: usize) -> MomentValue {
    assert!(p >= 1, "moments are indexed from p = 1");
    let max_j = (p - 1) / 2;
    let rt = rt_table(max_j);
    // by_parts[l][j] = Σ over compositions of j into l positive parts of Π RT(k_i)
    let mut by_parts = vec![vec![BivarPoly::zero(); max_j + 1]; max_j + 1];
    by_parts[0][0] = BivarPoly::one();
    for l in 1..=max_j {
        for j in l..=max_j {
            let mut acc = BivarPoly::zero();
            for first in 1..=j - (l - 1) {
                acc.add_product(&rt[first], &by_parts[l - 1][j - first]);
            }
            by_parts[l][j] = acc;
        }
    }
    let mut value = BivarPoly::zero();
    for j in 0..=max_j {
        let free = p - 2 * j;
        let inner = if j == 0 {
            BivarPoly::one()
        } else {
            let mut acc = BivarPoly::zero();
            for (l, row) in by_parts.iter().enumerate().take(j + 1).skip(1) {
                acc.add_assign_ref(&row[j].scale(&rational(binomial(free, l))));
            }
            acc
        };
        let prefactor = BigRational::new(BigInt::from(p), BigInt::from(free));
        value.add_assign_ref(&inner.scale(&prefactor).times_lambda_pow(free as u32));
    }
    MomentValue { p, value }
}

fn source_series(order: usize) -> (PowerSeries, PowerSeries) {
    let r = series_r(order);
    let s = r.shift().scale(&BivarPoly::lambda());
    (r, s)
}

/// `Σ_p m_p z^p = z d/dz log(1/(1 − λ₁ z R(z, q)))`, truncated after `z^order`.
pub fn moments_gf(order: usize) -> PowerSeries {
    let (_, s) = source_series(order);
    s.log_one_over_one_minus()
        .expect("λ₁ z R(z, q) has no constant term")
        .pointing()
}

/// The same generating function as the product `(1 + zR′/R) · λ₁zR/(1 − λ₁zR)`.
pub fn moments_gf_product(order: usize) -> Result<PowerSeries> {
    let (r, s) = source_series(order);
    let log_derivative = r.pointing().div(&r)?;
    let first = PowerSeries::one(order).add(&log_derivative);
    Ok(first.mul(&s.mul(&s.geometric()?)))
}

/// Large-`p` form `λ₁^p Σ_{j=0}^{⌊(p−1)/2⌋} C(p, j) (E_split/λ₁ − 1)^j`.
pub fn moments_asymptotic(p: usize, lambda1: f64, e_split: f64) -> f64 {
    let ratio = e_split / lambda1 - 1.0;
    let max_j = p.saturating_sub(1) / 2;
    let mut binom = 1.0;
    let mut sum = 0.0;
    for j in 0..=max_j {
        if j > 0 {
            binom *= (p - j + 1) as f64 / j as f64;
        }
        sum += binom * ratio.powi(j as i32);
    }
    lambda1.powi(p as i32) * sum
}

/// Exact `λ₁^p Σ_j C(p, j) (E/λ₁ − 1)^j` for rational `λ₁`, `E`.
pub fn moments_asymptotic_exact(p: usize, lambda1: &BigRational, e_split: &BigRational) -> BigRational {
    let ratio = e_split / lambda1 - BigRational::one();
    let mut sum = BigRational::zero();
    for j in 0..=p.saturating_sub(1) / 2 {
        sum += rational(binomial(p, j)) * num_traits::pow(ratio.clone(), j);
    }
    num_traits::pow(lambda1.clone(), p) * sum
}
