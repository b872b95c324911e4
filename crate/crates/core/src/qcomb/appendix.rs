use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{binomial, catalan, composition_terms};
use crate::{Error, Result};

/// Largest `j` accepted by [`appendix_s_bruteforce`].
pub const BRUTEFORCE_J_LIMIT: usize = 12;

fn check_range(p: usize, j: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::Domain("S(p, j) needs p >= 1".into()));
    }
    let max_j = (p - 1) / 2;
    if j > max_j {
        return Err(Error::Domain(format!(
            "S(p, j) needs 0 <= j <= floor((p-1)/2) = {max_j}, got j = {j} for p = {p}"
        )));
    }
    Ok(())
}

/// Closed form `S(p, j) = ((p − 2j)/p)·C(p, j)` of the Catalan-weighted composition sum.
pub fn appendix_s(p: usize, j: usize) -> Result<BigRational> {
    check_range(p, j)?;
    let numer = BigInt::from(p - 2 * j) * BigInt::from(binomial(p, j));
    Ok(BigRational::new(numer, BigInt::from(p)))
}

/// `S(p, j)` by direct summation over every multiplicity vector `(k₁, …, k_j)` with `Σ i·k_i = j`:
///
/// `Σ multinomial(Σk; k₁, …, k_j) · C(p − 2j, Σk) · Π C_iᵏⁱ`
pub fn appendix_s_bruteforce(p: usize, j: usize) -> Result<BigRational> {
    if j > BRUTEFORCE_J_LIMIT {
        return Err(Error::SizeLimit {
            what: "S(p, j) brute-force j",
            value: j,
            limit: BRUTEFORCE_J_LIMIT,
        });
    }
    check_range(p, j)?;
    let free = p - 2 * j;
    let mut total = BigInt::zero();
    for term in composition_terms(j) {
        let mut weight = BigInt::from(term.multinomial()) * BigInt::from(binomial(free, term.parts()));
        for (size, k) in term.iter() {
            weight *= BigInt::from(catalan(size)).pow(k as u32);
        }
        total += weight;
    }
    Ok(BigRational::from_integer(total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(appendix_s(10, 3).unwrap(), int(48));
        assert_eq!(appendix_s(3, 1).unwrap(), int(1));
        assert_eq!(appendix_s(20, 5).unwrap(), int(7752));
        for p in 1..15 {
            assert_eq!(appendix_s(p, 0).unwrap(), int(1));
        }
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(appendix_s_bruteforce(10, 3).unwrap(), int(48));
        assert_eq!(appendix_s_bruteforce(3, 1).unwrap(), int(1));
        assert_eq!(appendix_s_bruteforce(20, 5).unwrap(), int(7752));
        assert_eq!(appendix_s_bruteforce(4, 1).unwrap(), int(2));
        assert_eq!(appendix_s_bruteforce(7, 0).unwrap(), int(1));
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(appendix_s(4, 2), Err(Error::Domain(_))));
        assert!(matches!(appendix_s(0, 0), Err(Error::Domain(_))));
        assert!(matches!(appendix_s_bruteforce(4, 2), Err(Error::Domain(_))));
        assert!(matches!(
            appendix_s_bruteforce(40, 13),
            Err(Error::SizeLimit { .. })
        ));
    }
}
