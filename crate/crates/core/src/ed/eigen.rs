use faer::Side;
use rand::seq::index::sample as sample_indices;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::hamiltonian::HamiltonianSample;
use crate::{Error, Result};

/// Largest matrix handed to the dense eigensolver.
pub const EIGEN_DIM_LIMIT: usize = 1 << 13;

fn check_size(size: usize) -> Result<()> {
    if size > EIGEN_DIM_LIMIT {
        return Err(Error::SizeLimit {
            what: "parity block dimension",
            value: size,
            limit: EIGEN_DIM_LIMIT,
        });
    }
    Ok(())
}

/// All `dim` eigenvalues, ascending; each parity block is diagonalized separately.
pub fn eigenvalues(sample: &HamiltonianSample) -> Result<Vec<f64>> {
    let mut all = Vec::with_capacity(sample.dim());
    for block in sample.blocks() {
        check_size(block.states.len())?;
        let values = block
            .matrix
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|_| Error::NonConvergence { seed: sample.seed })?;
        all.extend(values);
    }
    all.sort_by(f64::total_cmp);
    Ok(all)
}

/// Largest `‖Hv − Ev‖ / ‖H‖` over `count` eigenpairs per block chosen with `seed`.
///
/// `‖H‖` is the spectral norm, the largest `|E|`.
pub fn residual_spot_check(sample: &HamiltonianSample, count: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for block in sample.blocks() {
        let size = block.states.len();
        check_size(size)?;
        let evd = block
            .matrix
            .self_adjoint_eigen(Side::Lower)
            .map_err(|_| Error::NonConvergence { seed: sample.seed })?;
        let values = evd.S().column_vector();
        let vectors = evd.U();
        let norm = (0..size).map(|k| values[k].re.abs()).fold(0.0, f64::max);
        for k in sample_indices(&mut rng, size, count.min(size)) {
            let v = vectors.col(k);
            let hv = &block.matrix * v;
            let residual = (0..size)
                .map(|i| (hv[i] - v[i] * values[k].re).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(residual / norm);
        }
    }
    Ok(worst)
}
