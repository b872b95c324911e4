//! Exact truncated power series over `Q[λ₁, q]` and the subtracted moments `m_p`.
//!
//! The moments are produced four ways (double sum over multiplicity vectors,
//! sum over compositions, logarithmic generating function and its product
//! form). All four are exact polynomials, so agreement is checked with `==`.

mod bipoly;
mod moments;
mod series;

pub use bipoly::{BivarPoly, Exponents};
pub use moments::{
    moments_asymptotic, moments_asymptotic_exact, moments_closed, moments_composition,
    moments_gf, moments_gf_product, series_r, MomentValue, DEFAULT_ORDER,
};
pub use series::PowerSeries;
