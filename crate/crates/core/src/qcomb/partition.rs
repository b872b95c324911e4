use num_bigint::BigUint;
use num_traits::One;

use super::factorial;

/// Multiplicities `k₁, …, k_j` with `Σ i·k_i = j`, i.e. a partition of `j` with `k_i` parts equal to `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompositionTerm {
    multiplicities: Vec<usize>,
}

impl CompositionTerm {
    /// `multiplicities[i - 1]` is `k_i`. Returns `None` if the weighted sum is not the vector length.
    pub fn new(multiplicities: Vec<usize>) -> Option<Self> {
        let term = Self { multiplicities };
        (term.weight() == term.multiplicities.len()).then_some(term)
    }

    /// The `j` of the constraint.
    pub fn target(&self) -> usize {
        self.multiplicities.len()
    }

    /// `Σ i·k_i`.
    pub fn weight(&self) -> usize {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(i, k)| (i + 1) * k)
            .sum()
    }

    /// `Σ k_i`, the number of parts.
    pub fn parts(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// `(i, k_i)` for every part size with non-zero multiplicity.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| (i + 1, k))
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// `(Σ k_i)! / Π k_i!`.
    pub fn multinomial(&self) -> BigUint {
        let denom: BigUint = self
            .multiplicities
            .iter()
            .map(|&k| factorial(k))
            .fold(BigUint::one(), |a, b| a * b);
        factorial(self.parts()) / denom
    }
}

/// Every multiplicity vector for `j`; `j = 0` yields the single empty vector.
pub fn composition_terms(j: usize) -> Vec<CompositionTerm> {
    let mut out = Vec::new();
    let mut current = vec![0; j];
    fill(j, j, &mut current, &mut out);
    out
}

// Chooses k_size for size = largest .. 1 with `left` still to distribute.
fn fill(size: usize, left: usize, current: &mut [usize], out: &mut Vec<CompositionTerm>) {
    if size == 0 {
        if left == 0 {
            out.push(CompositionTerm {
                multiplicities: current.to_vec(),
            });
        }
        return;
    }
    for k in (0..=left / size).rev() {
        current[size - 1] = k;
        fill(size - 1, left - k * size, current, out);
    }
    current[size - 1] = 0;
}
