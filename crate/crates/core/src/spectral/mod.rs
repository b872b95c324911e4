//! Closed-form spectral quantities of the deformed model.
//!
//! `g(z) = z R(z, q)` is increasing on `(0, ρ_g]` with `ρ_g = √(1 − q)/2` and
//! `g(ρ_g) = τ_g`. The sequence construction `1/(1 − λ₁ g(z))` is subcritical,
//! critical or supercritical as `λ₁ τ_g` is below, at or above one; in the
//! supercritical phase its pole `ρ_C < ρ_g` gives the split eigenvalue `1/ρ_C`.

mod density;
mod quad;
mod regime;
mod rfunc;
mod secular;

pub use density::{
    default_truncation, density_model, rho_qh, DensityModel, QHermiteDensity, SplitComponent,
    NORMALIZATION_TOLERANCE, PRODUCT_CUTOFF,
};
pub use quad::adaptive_simpson;
pub use regime::{classify_regime, Regime, RegimeReport, CRITICAL_TOLERANCE};
pub use rfunc::{lambda_critical, r_closed, rho_g, spectral_edge, tau_g};
pub use secular::{secular_residual, solve_secular};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Crossing weight `q` and source strength `λ₁`.
///
/// `q` is accepted on `(−1, 1)`: the finite-`p` weight `q̃(N, 4)` is slightly
/// negative for `N = 16`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformationParams {
    pub q: f64,
    pub lambda1: f64,
}

impl DeformationParams {
    pub fn new(q: f64, lambda1: f64) -> Result<Self> {
        rfunc::check_q(q)?;
        if !(lambda1.is_finite() && lambda1 > 0.0) {
            return Err(Error::Domain(format!("lambda1 must be positive, got {lambda1}")));
        }
        Ok(Self { q, lambda1 })
    }
}
