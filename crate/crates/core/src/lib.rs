//! Moments, phase transition and split eigenvalue of the SYK model deformed by a
//! rank-one diagonal source `Λ = diag(λ₁, 0, …, 0)`.
//!
//! The crate is organized bottom-up:
//!
//! * [`qcomb`] exact chord-diagram combinatorics: Riordan–Touchard polynomials,
//!   necklace counts, the Catalan-weighted composition sum and the finite-`p`
//!   crossing weight `q̃(N, p)`.
//! * [`genfunc`] truncated power series over `Q[λ₁, q]` and the four equivalent
//!   forms of the subtracted moments `m_p`.
//! * [`spectral`] closed-form `R(z, q)`, the critical coupling, regime
//!   classification of `1/(1 − λ₁ z R(z, q))`, the secular equation and the
//!   Q-Hermite bulk density.
//! * [`ed`] exact diagonalization: Jordan–Wigner Majoranas, seeded Hamiltonian
//!   ensembles, split-eigenvalue statistics, empirical moments and histograms.

pub mod ed;
pub mod error;
pub mod genfunc;
pub mod qcomb;
pub mod spectral;

pub use error::{Error, Result};
