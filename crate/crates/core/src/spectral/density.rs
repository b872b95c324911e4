use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::quad::adaptive_simpson;
use super::rfunc::check_q;
use super::{solve_secular, spectral_edge, DeformationParams};
use crate::{Error, Result};

/// Default truncation of the infinite product: the first `k` with `|q|^k` below this.
pub const PRODUCT_CUTOFF: f64 = 1e-12;
/// Tolerance of the normalization integral.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// Q-Hermite weight function, the double-scaled SYK bulk density
///
/// `ρ(E) = c √(1 − x²) Π_{k=1}^{k_max} [1 − 4x² / (2 + q^k + q^{−k})]`, `x = E √(1−q) / 2`.
///
/// Each factor is evaluated as `1 − 4x² q^k/(1 + q^k)²`, which is finite at `q = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QHermiteDensity {
    pub q: f64,
    pub normalization_c: f64,
    pub product_truncation: usize,
    pub support_edge: f64,
}

/// Smallest `k ≥ 1` with `|q|^k < PRODUCT_CUTOFF`.
pub fn default_truncation(q: f64) -> usize {
    let mut k = 1;
    let mut power = q.abs();
    while power >= PRODUCT_CUTOFF {
        power *= q.abs();
        k += 1;
    }
    k
}

impl QHermiteDensity {
    pub fn new(q: f64) -> Result<Self> {
        check_q(q)?;
        Self::with_truncation(q, default_truncation(q))
    }

    pub fn with_truncation(q: f64, k_max: usize) -> Result<Self> {
        check_q(q)?;
        if k_max == 0 {
            return Err(Error::Domain("product truncation must be at least 1".into()));
        }
        let mut density = Self {
            q,
            normalization_c: 1.0,
            product_truncation: k_max,
            support_edge: spectral_edge(q)?,
        };
        // E = edge·cos θ makes the integrand smooth on [0, π].
        let edge = density.support_edge;
        let integral = adaptive_simpson(
            &|theta: f64| density.shape(theta.cos()) * theta.sin() * edge,
            0.0,
            PI,
            NORMALIZATION_TOLERANCE,
        );
        density.normalization_c = 1.0 / integral;
        Ok(density)
    }

    /// Unnormalized profile at reduced energy `x = E/edge`, zero outside `[−1, 1]`.
    fn shape(&self, x: f64) -> f64 {
        if x.abs() >= 1.0 {
            return 0.0;
        }
        let x2 = x * x;
        let mut value = (1.0 - x2).sqrt();
        let mut qk = 1.0;
        for _ in 0..self.product_truncation {
            qk *= self.q;
            let factor = 1.0 - 4.0 * x2 * qk / ((1.0 + qk) * (1.0 + qk));
            value *= factor;
        }
        value
    }

    pub fn density(&self, energy: f64) -> f64 {
        self.normalization_c * self.shape(energy / self.support_edge)
    }

    /// `∫_a^b ρ(E) dE`, clipped to the support.
    pub fn mass_between(&self, a: f64, b: f64) -> f64 {
        let lo = a.max(-self.support_edge);
        let hi = b.min(self.support_edge);
        if hi <= lo {
            return 0.0;
        }
        let (t_hi, t_lo) = (
            (lo / self.support_edge).clamp(-1.0, 1.0).acos(),
            (hi / self.support_edge).clamp(-1.0, 1.0).acos(),
        );
        let edge = self.support_edge;
        adaptive_simpson(
            &|theta: f64| self.density(edge * theta.cos()) * theta.sin() * edge,
            t_lo,
            t_hi,
            1e-13,
        )
    }
}

/// `ρ_QH(E)` with the product truncated at `k_max` and normalized to unit mass.
pub fn rho_qh(energy: f64, q: f64, k_max: usize) -> Result<f64> {
    Ok(QHermiteDensity::with_truncation(q, k_max)?.density(energy))
}

/// Isolated eigenvalue carried by the ensemble density in the supercritical phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitComponent {
    pub energy: f64,
    /// `1/dim`: one eigenvalue out of `dim`.
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityModel {
    pub bulk: QHermiteDensity,
    pub split: Option<SplitComponent>,
}

/// Ensemble density: bulk `ρ_QH`, plus a point mass `1/dim` at `E_split` when `λ₁ > λ₁ᶜ`.
pub fn density_model(params: &DeformationParams, dim: usize) -> Result<DensityModel> {
    if dim == 0 {
        return Err(Error::Domain("Hilbert-space dimension must be positive".into()));
    }
    let bulk = QHermiteDensity::new(params.q)?;
    let split = match solve_secular(params) {
        Ok(energy) => Some(SplitComponent {
            energy,
            weight: 1.0 / dim as f64,
        }),
        Err(Error::GapAbsent { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(DensityModel { bulk, split })
}
