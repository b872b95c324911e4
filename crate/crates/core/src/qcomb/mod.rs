//! Exact chord-diagram combinatorics.
//!
//! Everything here works in arbitrary-precision integers or rationals; the only
//! floating-point output is [`qtilde`], converted at the very end.

mod appendix;
mod chord;
mod necklace;
mod partition;
mod qpoly;

pub use appendix::{appendix_s, appendix_s_bruteforce, BRUTEFORCE_J_LIMIT};
pub use chord::{
    crossing_polynomial, enumerate_chord_diagrams, enumerate_chord_diagrams_with_limit,
    rt_polynomial, ChordDiagram, DEFAULT_ENUMERATION_LIMIT,
};
pub use necklace::necklace_count;
pub use partition::{composition_terms, CompositionTerm};
pub use qpoly::QPolynomial;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `C_n = C(2n, n)/(n + 1)`.
pub fn catalan(n: usize) -> BigUint {
    binomial(2 * n, n) / BigUint::from(n + 1)
}

/// `(2n − 1)!!`, the number of perfect matchings of `2n` points; `1` for `n = 0`.
pub fn odd_double_factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(2 * k - 1))
}

/// Finite-`p` crossing weight `q̃(N, p) = C(N, p)⁻¹ Σ_c (−1)^c C(p, c) C(N − p, p − c)`, exactly.
///
/// This is the mean of `(−1)^{|α ∩ β|}` over independent uniformly random
/// `p`-subsets `α`, `β` of `{1, …, N}`.
pub fn qtilde_exact(n: usize, p: usize) -> Result<BigRational> {
    if n == 0 || p > n {
        return Err(Error::Domain(format!(
            "qtilde needs 0 <= p <= N and N >= 1, got N = {n}, p = {p}"
        )));
    }
    let mut sum = BigInt::zero();
    for c in 0..=p {
        let term = BigInt::from(binomial(p, c)) * BigInt::from(binomial(n - p, p - c));
        if c % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(BigRational::new(sum, BigInt::from(binomial(n, p))))
}

/// [`qtilde_exact`] rounded to `f64`.
pub fn qtilde(n: usize, p: usize) -> Result<f64> {
    let exact = qtilde_exact(n, p)?;
    Ok(exact.to_f64().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), BigUint::from(1u32));
        assert_eq!(catalan(3), BigUint::from(5u32));
        assert_eq!(catalan(10), BigUint::from(16796u32));
    }

    #[test]
    fn catalan_matches_product_formula() {
        // C_n = prod_{k=2}^{n} (n + k) / k
        for n in 0..40usize {
            let num = (2..=n).fold(BigUint::one(), |a, k| a * BigUint::from(n + k));
            let den = (2..=n).fold(BigUint::one(), |a, k| a * BigUint::from(k));
            assert_eq!(catalan(n), num / den, "n = {n}");
        }
    }

    #[test]
    fn qtilde_table_value() {
        let q = qtilde_exact(24, 4).unwrap();
        assert_eq!(q, BigRational::new(1346.into(), 10626.into()));
        assert!((qtilde(24, 4).unwrap() - 0.126_671).abs() < 1e-6);
    }

    #[test]
    fn qtilde_p_zero_is_one() {
        for n in 1..20 {
            assert_eq!(qtilde(n, 0).unwrap(), 1.0);
        }
    }

    #[test]
    fn qtilde_rejects_p_above_n() {
        assert!(matches!(qtilde(3, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn qtilde_approaches_double_scaled_limit() {
        let gap = |n: usize| (qtilde(n, 4).unwrap() - (-32.0 / n as f64).exp()).abs();
        assert!(gap(1000) < gap(100));
        assert!(gap(1000) < 1e-3);
        assert!(gap(100) < 0.02);
    }

    #[test]
    fn qtilde_in_unit_interval_and_increasing() {
        for p in 1..=6usize {
            let mut prev = -1.0;
            for n in 2 * p * p..2 * p * p + 60 {
                let q = qtilde(n, p).unwrap();
                // q̃(2, 1) is exactly 0; past the boundary it is strictly positive.
                let lower_ok = if n == 2 * p * p { q >= 0.0 } else { q > 0.0 };
                assert!(lower_ok && q <= 1.0, "N = {n}, p = {p}: {q}");
                assert!(q > prev, "not increasing at N = {n}, p = {p}");
                prev = q;
            }
        }
    }
}
