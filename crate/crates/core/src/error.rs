use thiserror::Error;

/// Errors raised across the combinatorics, spectral and diagonalization layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("size limit exceeded: {what} = {value} (limit {limit})")]
    SizeLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("power series division by a series whose constant term is not an invertible constant")]
    NonInvertibleSeries,

    #[error("no split eigenvalue: lambda1 = {lambda1} does not exceed the critical coupling {critical}")]
    GapAbsent { lambda1: f64, critical: f64 },

    #[error("secular equation has no sign change on [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("eigensolver did not converge for the sample with seed {seed}")]
    NonConvergence { seed: u64 },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
