use faer::Mat;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use super::majorana::{MajoranaAlgebra, PauliString};
use crate::qcomb::binomial;
use crate::{Error, Result};

/// One Gaussian coupling `J_α` of the strictly increasing index set `α`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coupling {
    pub indices: Vec<usize>,
    pub value: f64,
}

/// Fermion-parity sector of the basis: states with even or odd occupation.
///
/// A `p`-body term with even `p` flips an even number of sites, so `H` is block
/// diagonal. `|0⟩` is the first state of the even block.
#[derive(Debug, Clone)]
pub struct ParityBlock {
    /// Basis indices of the sector, ascending.
    pub states: Vec<usize>,
    pub matrix: Mat<Complex64>,
}

/// `H = i^{p(p−1)/2} Σ_α J_α ψ_α + λ₁ |0⟩⟨0|`, with `⟨J_α²⟩ = 1/C(N, p)`.
///
/// Couplings are drawn in lexicographic order of `α` from a ChaCha20 stream
/// seeded by `seed`, one standard normal per set.
#[derive(Debug, Clone)]
pub struct HamiltonianSample {
    pub n: usize,
    pub p: usize,
    pub lambda1: f64,
    pub seed: u64,
    pub couplings: Vec<Coupling>,
    blocks: [ParityBlock; 2],
}

/// Every strictly increasing `p`-subset of `0..n`, lexicographically.
pub fn index_sets(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..p).collect();
    if p > n {
        return out;
    }
    loop {
        out.push(current.clone());
        let Some(i) = (0..p).rev().find(|&i| current[i] < n - p + i) else {
            return out;
        };
        current[i] += 1;
        for k in i + 1..p {
            current[k] = current[k - 1] + 1;
        }
    }
}

fn validate(n: usize, p: usize) -> Result<()> {
    if p == 0 || p % 2 != 0 {
        return Err(Error::Domain(format!("p must be even and positive, got {p}")));
    }
    if p > n {
        return Err(Error::Domain(format!("p = {p} exceeds N = {n}")));
    }
    Ok(())
}

pub fn sample_hamiltonian(n: usize, p: usize, lambda1: f64, seed: u64) -> Result<HamiltonianSample> {
    let algebra = MajoranaAlgebra::new(n)?;
    sample_with_algebra(&algebra, p, lambda1, seed)
}

pub fn sample_with_algebra(
    algebra: &MajoranaAlgebra,
    p: usize,
    lambda1: f64,
    seed: u64,
) -> Result<HamiltonianSample> {
    validate(algebra.n(), p)?;
    let sigma = 1.0 / binomial(algebra.n(), p).to_f64().unwrap_or(f64::INFINITY).sqrt();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let couplings = index_sets(algebra.n(), p)
        .into_iter()
        .map(|indices| {
            let z: f64 = StandardNormal.sample(&mut rng);
            Coupling { indices, value: sigma * z }
        })
        .collect();
    HamiltonianSample::from_couplings(algebra, p, lambda1, seed, couplings)
}

impl HamiltonianSample {
    /// Builds the matrix for explicit couplings; every index set must have length `p`.
    pub fn from_couplings(
        algebra: &MajoranaAlgebra,
        p: usize,
        lambda1: f64,
        seed: u64,
        couplings: Vec<Coupling>,
    ) -> Result<Self> {
        validate(algebra.n(), p)?;
        for c in &couplings {
            if c.indices.len() != p
                || c.indices.windows(2).any(|w| w[0] >= w[1])
                || c.indices.iter().any(|&i| i >= algebra.n())
            {
                return Err(Error::Domain(format!("invalid index set {:?}", c.indices)));
            }
        }
        let terms: Vec<(PauliString, f64)> = couplings
            .iter()
            .map(|c| (algebra.hermitian_product(&c.indices), c.value))
            .collect();

        let dim = algebra.dim();
        let mut position = vec![0usize; dim];
        let mut states = [Vec::with_capacity(dim / 2), Vec::with_capacity(dim / 2)];
        for b in 0..dim {
            let sector = (b.count_ones() % 2) as usize;
            position[b] = states[sector].len();
            states[sector].push(b);
        }
        let blocks = states.map(|states| {
            let size = states.len();
            let mut matrix = Mat::<Complex64>::zeros(size, size);
            for (col, &b) in states.iter().enumerate() {
                for (string, value) in &terms {
                    let (target, amp) = string.apply(b);
                    matrix[(position[target], col)] += amp * *value;
                }
            }
            ParityBlock { states, matrix }
        });
        let mut sample = Self {
            n: algebra.n(),
            p,
            lambda1,
            seed,
            couplings,
            blocks,
        };
        if lambda1 != 0.0 {
            sample.blocks[0].matrix[(0, 0)] += Complex64::new(lambda1, 0.0);
        }
        Ok(sample)
    }

    pub fn dim(&self) -> usize {
        1 << (self.n / 2)
    }

    /// Even block first, then odd.
    pub fn blocks(&self) -> &[ParityBlock; 2] {
        &self.blocks
    }

    /// The full `dim × dim` matrix in the occupation-number basis.
    pub fn dense(&self) -> Mat<Complex64> {
        let dim = self.dim();
        let mut m = Mat::<Complex64>::zeros(dim, dim);
        for block in &self.blocks {
            for (j, &bj) in block.states.iter().enumerate() {
                for (i, &bi) in block.states.iter().enumerate() {
                    m[(bi, bj)] = block.matrix[(i, j)];
                }
            }
        }
        m
    }

    /// `tr H / dim` with `tr 𝟙 = dim`.
    pub fn normalized_trace(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| (0..b.states.len()).map(|i| b.matrix[(i, i)].re).sum::<f64>())
            .sum::<f64>()
            / self.dim() as f64
    }
}

/// `tr H²` (unnormalized) from the couplings alone.
///
/// The strings `i^{p(p−1)/2} ψ_α` square to `𝟙` and are trace-orthogonal, so
/// `tr H_SYK² = dim Σ J_α²`. The cross term `2λ₁ ⟨0|H_SYK|0⟩` collects the
/// diagonal strings, the sets made of pairs `{2k, 2k+1}`, each with
/// `⟨0|·|0⟩ = i^{p/2} · i^{p(p−1)/2}`.
pub fn trace_h2_from_couplings(n: usize, p: usize, lambda1: f64, couplings: &[Coupling]) -> f64 {
    let dim = (1u64 << (n / 2)) as f64;
    let sum_sq: f64 = couplings.iter().map(|c| c.value * c.value).sum();
    let diagonal_sign = if (p / 2 + p * (p - 1) / 2) % 4 == 0 { 1.0 } else { -1.0 };
    let diagonal: f64 = couplings
        .iter()
        .filter(|c| c.indices.chunks(2).all(|pair| pair[0] % 2 == 0 && pair[1] == pair[0] + 1))
        .map(|c| c.value)
        .sum();
    dim * sum_sq + 2.0 * lambda1 * diagonal_sign * diagonal + lambda1 * lambda1
}
