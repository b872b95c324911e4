//! Exact diagonalization of `H = H_SYK + λ₁ |0⟩⟨0|` for finite `N`.
//!
//! Majoranas are Jordan–Wigner Pauli strings; the Hamiltonian is assembled by
//! applying strings to basis states and diagonalized densely per fermion-parity
//! block. Ensembles run one task per sample with seeds derived from a master seed.

mod eigen;
mod ensemble;
mod hamiltonian;
mod majorana;

pub use eigen::{eigenvalues, residual_spot_check, EIGEN_DIM_LIMIT};
pub use ensemble::{
    count_beyond, empirical_moments, histogram, run_ensemble, sample_seed, split_statistics,
    split_statistics_with_margin, summarize, EmpiricalMoment, EnsembleResult, EnsembleSpec,
    EnsembleStatistics, FlaggedSample, Histogram, SampleSpectrum, SplitStatistics,
    StatisticsOptions, DEFAULT_SPLIT_MARGIN, EMPIRICAL_P_MAX, ENSEMBLE_SCHEMA_VERSION, MIN_BINS,
};
pub use hamiltonian::{
    index_sets, sample_hamiltonian, sample_with_algebra, trace_h2_from_couplings, Coupling,
    HamiltonianSample, ParityBlock,
};
pub use majorana::{build_majoranas, MajoranaAlgebra, PauliString, MAX_MAJORANAS, MIN_MAJORANAS};
