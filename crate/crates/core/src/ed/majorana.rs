use num_complex::Complex64;

use crate::{Error, Result};

pub const MIN_MAJORANAS: usize = 8;
pub const MAX_MAJORANAS: usize = 32;

/// `i^phase · X^x Z^z` on `N/2` qubits; bit `k` of `x`/`z` acts on site `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub x: u32,
    pub z: u32,
    /// Power of `i`, in `0..4`.
    pub phase: u8,
}

fn i_pow(phase: u8) -> Complex64 {
    match phase % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl PauliString {
    pub const IDENTITY: Self = Self { x: 0, z: 0, phase: 0 };

    /// `Z^z X^x = (−1)^{|z∧x|} X^x Z^z`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let sign = 2 * ((self.z & rhs.x).count_ones() % 2) as u8;
        Self {
            x: self.x ^ rhs.x,
            z: self.z ^ rhs.z,
            phase: (self.phase + rhs.phase + sign) % 4,
        }
    }

    pub fn times_i_pow(&self, k: u8) -> Self {
        Self {
            phase: (self.phase + k) % 4,
            ..*self
        }
    }

    pub fn adjoint(&self) -> Self {
        let sign = 2 * ((self.z & self.x).count_ones() % 2) as u8;
        Self {
            phase: (4 - self.phase + sign) % 4,
            ..*self
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.adjoint() == *self
    }

    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    /// Image of the basis state `|b⟩`: `(b ⊕ x, i^phase (−1)^{|z∧b|})`.
    pub fn apply(&self, b: usize) -> (usize, Complex64) {
        let sign = 2 * ((self.z & b as u32).count_ones() % 2) as u8;
        (b ^ self.x as usize, i_pow(self.phase + sign))
    }

    /// Normalized trace `tr(·)/dim`: `i^phase` for the identity string, else zero.
    pub fn normalized_trace(&self) -> Complex64 {
        if self.x == 0 && self.z == 0 {
            i_pow(self.phase)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// Row-major dense matrix on `2^sites` states.
    pub fn to_dense(&self, sites: usize) -> Vec<Complex64> {
        let dim = 1usize << sites;
        let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
        for b in 0..dim {
            let (row, amp) = self.apply(b);
            m[row * dim + b] = amp;
        }
        m
    }
}

/// Jordan–Wigner Majoranas `ψ_{2k} = Z_{<k} X_k`, `ψ_{2k+1} = Z_{<k} Y_k`.
///
/// Basis states are occupation numbers in binary, site `k` in bit `k`, so `|0⟩`
/// (all sites empty) is basis index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajoranaAlgebra {
    n: usize,
    operators: Vec<PauliString>,
}

impl MajoranaAlgebra {
    pub fn new(n: usize) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::Domain(format!("Majorana count must be even, got {n}")));
        }
        if !(MIN_MAJORANAS..=MAX_MAJORANAS).contains(&n) {
            return Err(Error::Domain(format!(
                "Majorana count must lie in {MIN_MAJORANAS}..={MAX_MAJORANAS}, got {n}"
            )));
        }
        let mut operators = Vec::with_capacity(n);
        for k in 0..n / 2 {
            let string = (1u32 << k) - 1;
            operators.push(PauliString { x: 1 << k, z: string, phase: 0 });
            // Y = i X Z
            operators.push(PauliString { x: 1 << k, z: string | 1 << k, phase: 1 });
        }
        Ok(Self { n, operators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sites(&self) -> usize {
        self.n / 2
    }

    pub fn dim(&self) -> usize {
        1 << self.sites()
    }

    pub fn operators(&self) -> &[PauliString] {
        &self.operators
    }

    pub fn operator(&self, i: usize) -> PauliString {
        self.operators[i]
    }

    /// `ψ_{i₁} ψ_{i₂} ⋯ ψ_{i_p}` in the given order.
    pub fn product(&self, indices: &[usize]) -> PauliString {
        indices
            .iter()
            .fold(PauliString::IDENTITY, |acc, &i| acc.mul(&self.operators[i]))
    }

    /// `i^{p(p−1)/2} ψ_{i₁} ⋯ ψ_{i_p}`, Hermitian for strictly increasing indices.
    pub fn hermitian_product(&self, indices: &[usize]) -> PauliString {
        let p = indices.len();
        self.product(indices).times_i_pow((p * (p - 1) / 2 % 4) as u8)
    }
}

pub fn build_majoranas(n: usize) -> Result<MajoranaAlgebra> {
    MajoranaAlgebra::new(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense_mul(a: &[Complex64], b: &[Complex64], dim: usize) -> Vec<Complex64> {
        let mut c = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let aik = a[i * dim + k];
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..dim {
                    c[i * dim + j] += aik * b[k * dim + j];
                }
            }
        }
        c
    }

    fn max_norm_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    fn identity(dim: usize) -> Vec<Complex64> {
        let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            m[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    #[test]
    fn rejects_bad_sizes() {
        for n in [0, 6, 9, 33, 34] {
            assert!(build_majoranas(n).is_err(), "N = {n}");
        }
        assert_eq!(build_majoranas(32).unwrap().dim(), 1 << 16);
    }

    #[test]
    fn clifford_relations_dense() {
        for n in [8, 10, 12] {
            let alg = build_majoranas(n).unwrap();
            let dim = alg.dim();
            let mats: Vec<_> = alg.operators().iter().map(|o| o.to_dense(alg.sites())).collect();
            let one = identity(dim);
            for i in 0..n {
                let adj: Vec<Complex64> = (0..dim * dim)
                    .map(|k| mats[i][(k % dim) * dim + k / dim].conj())
                    .collect();
                assert_eq!(max_norm_diff(&adj, &mats[i]), 0.0, "ψ_{i} not Hermitian");
                assert!(max_norm_diff(&dense_mul(&mats[i], &mats[i], dim), &one) <= 1e-12);
                for j in i + 1..n {
                    let ij = dense_mul(&mats[i], &mats[j], dim);
                    let ji = dense_mul(&mats[j], &mats[i], dim);
                    let anti: Vec<_> = ij.iter().zip(&ji).map(|(a, b)| a + b).collect();
                    assert!(anti.iter().all(|v| v.norm() <= 1e-12), "N = {n}: {{ψ_{i}, ψ_{j}}}");
                }
            }
        }
    }

    #[test]
    fn clifford_relations_symbolic() {
        let alg = build_majoranas(32).unwrap();
        for i in 0..32 {
            let a = alg.operator(i);
            assert_eq!(a.mul(&a), PauliString::IDENTITY);
            assert!(a.is_hermitian());
            for j in i + 1..32 {
                let b = alg.operator(j);
                assert_eq!(a.mul(&b), b.mul(&a).times_i_pow(2));
            }
        }
    }

    #[test]
    fn four_body_strings_traceless_and_hermitian() {
        let alg = build_majoranas(8).unwrap();
        let dim = alg.dim();
        let mut count = 0;
        for a in 0..8 {
            for b in a + 1..8 {
                for c in b + 1..8 {
                    for d in c + 1..8 {
                        count += 1;
                        let raw = alg.product(&[a, b, c, d]).to_dense(alg.sites());
                        let trace: Complex64 = (0..dim).map(|k| raw[k * dim + k]).sum();
                        assert!(trace.norm() < 1e-12);
                        let h = alg.hermitian_product(&[a, b, c, d]).to_dense(alg.sites());
                        for r in 0..dim {
                            for s in 0..dim {
                                assert_eq!(h[r * dim + s], h[s * dim + r].conj());
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(count, 70);
    }

    #[test]
    fn increasing_products_are_traceless() {
        let alg = build_majoranas(10).unwrap();
        for mask in 1u32..1 << 10 {
            let idx: Vec<usize> = (0..10).filter(|i| mask >> i & 1 == 1).collect();
            assert_eq!(alg.product(&idx).normalized_trace(), Complex64::new(0.0, 0.0));
        }
    }

    fn pauli() -> impl Strategy<Value = PauliString> {
        (0u32..256, 0u32..256, 0u8..4).prop_map(|(x, z, phase)| PauliString { x, z, phase })
    }

    proptest! {
        #[test]
        fn product_is_associative(a in pauli(), b in pauli(), c in pauli()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn adjoint_reverses_products(a in pauli(), b in pauli()) {
            prop_assert_eq!(a.mul(&b).adjoint(), b.adjoint().mul(&a.adjoint()));
            prop_assert_eq!(a.adjoint().adjoint(), a);
        }

        #[test]
        fn apply_agrees_with_product(a in pauli(), b in pauli(), state in 0usize..256) {
            let (mid, amp_b) = b.apply(state);
            let (end, amp_a) = a.apply(mid);
            let (direct, amp) = a.mul(&b).apply(state);
            prop_assert_eq!(end, direct);
            prop_assert_eq!(amp_a * amp_b, amp);
        }
    }

    #[test]
    fn symbolic_product_matches_dense_product() {
        let alg = build_majoranas(8).unwrap();
        let dim = alg.dim();
        let idx = [0, 3, 5, 6];
        let dense = idx.iter().fold(identity(dim), |acc, &i| {
            dense_mul(&acc, &alg.operator(i).to_dense(alg.sites()), dim)
        });
        assert_eq!(max_norm_diff(&dense, &alg.product(&idx).to_dense(alg.sites())), 0.0);
    }
}
