use serde::{Deserialize, Serialize};

use super::{lambda_critical, rho_g, solve_secular, tau_g, DeformationParams};
use crate::Result;

/// `|λ₁ − λ₁ᶜ|` at or below which the composition scheme is reported as critical.
pub const CRITICAL_TOLERANCE: f64 = 1e-12;

/// Phase of `C(z, λ₁) = 1/(1 − λ₁ z R(z, q))` as a composition `f(λ₁ g(z))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Subcritical,
    Critical,
    Supercritical,
}

impl Regime {
    /// Exponent `α` of the dominant singular term `(ρ_C − z)^α`.
    pub fn singular_exponent(self) -> f64 {
        match self {
            Regime::Subcritical => 0.5,
            Regime::Critical => -0.5,
            Regime::Supercritical => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Subcritical => "subcritical",
            Regime::Critical => "critical",
            Regime::Supercritical => "supercritical",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub q: f64,
    pub lambda1: f64,
    pub lambda_critical: f64,
    pub regime: Regime,
    /// Dominant singularity of `C(z, λ₁)`.
    pub rho_c: f64,
    pub alpha_exponent: f64,
    pub tau_g: f64,
    pub rho_g: f64,
    /// `1/ρ_C`, present only in the supercritical phase.
    pub e_split: Option<f64>,
}

pub fn classify_regime(params: &DeformationParams) -> Result<RegimeReport> {
    let critical = lambda_critical(params.q)?;
    let tau = tau_g(params.q)?;
    let radius = rho_g(params.q)?;
    let regime = if (params.lambda1 - critical).abs() <= CRITICAL_TOLERANCE {
        Regime::Critical
    } else if params.lambda1 < critical {
        Regime::Subcritical
    } else {
        Regime::Supercritical
    };
    let (rho_c, e_split) = match regime {
        Regime::Supercritical => {
            let e = solve_secular(params)?;
            (1.0 / e, Some(e))
        }
        _ => (radius, None),
    };
    Ok(RegimeReport {
        q: params.q,
        lambda1: params.lambda1,
        lambda_critical: critical,
        regime,
        rho_c,
        alpha_exponent: regime.singular_exponent(),
        tau_g: tau,
        rho_g: radius,
        e_split,
    })
}
