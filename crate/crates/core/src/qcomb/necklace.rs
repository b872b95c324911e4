use num_rational::BigRational;
use num_traits::{One, Zero};

/// Number of size-`n` pointed labeled cycles of rooted `B`-structures, `n·[zⁿ] log(1/(1 − zB(z)))`.
///
/// `block_coeffs[i]` is `b_i`, the coefficient of `zⁱ` in `B(z)`; coefficients
/// past the end of the slice are taken as zero. Uses
/// `z d/dz log(1/(1 − A)) = zA′ · 1/(1 − A)` with `A = zB`, so only exact
/// products and the geometric-series recurrence are needed.
pub fn necklace_count(n: usize, block_coeffs: &[BigRational]) -> BigRational {
    if n == 0 {
        return BigRational::zero();
    }
    // a_i = [z^i] zB(z)
    let a = |i: usize| -> BigRational {
        if i == 0 {
            BigRational::zero()
        } else {
            block_coeffs.get(i - 1).cloned().unwrap_or_else(BigRational::zero)
        }
    };
    // geometric[m] = [z^m] 1/(1 - A(z))
    let mut geometric = Vec::with_capacity(n + 1);
    geometric.push(BigRational::one());
    for m in 1..=n {
        let mut g = BigRational::zero();
        for i in 1..=m {
            g += a(i) * &geometric[m - i];
        }
        geometric.push(g);
    }
    (1..=n)
        .map(|i| a(i) * BigRational::from_integer(i.into()) * &geometric[n - i])
        .fold(BigRational::zero(), |acc, t| acc + t)
}
