use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::eigen::eigenvalues;
use super::hamiltonian::sample_with_algebra;
use super::majorana::MajoranaAlgebra;
use crate::qcomb::{qtilde, rt_polynomial};
use crate::spectral::{
    adaptive_simpson, lambda_critical, solve_secular, spectral_edge, DeformationParams,
    QHermiteDensity,
};
use crate::{Error, Result};

pub const ENSEMBLE_SCHEMA_VERSION: u32 = 1;
/// Split threshold is `edge · (1 + DEFAULT_SPLIT_MARGIN)`.
pub const DEFAULT_SPLIT_MARGIN: f64 = 0.05;
pub const EMPIRICAL_P_MAX: usize = 12;
pub const MIN_BINS: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub n: usize,
    pub p: usize,
    pub lambda1: f64,
    pub sample_count: usize,
    pub master_seed: u64,
}

/// Seed of sample `index`: a SplitMix64 finalizer over `master_seed` and the index.
pub fn sample_seed(master_seed: u64, index: usize) -> u64 {
    let mut z = master_seed ^ (index as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSpectrum {
    pub index: usize,
    pub seed: u64,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleResult {
    pub schema_version: u32,
    pub spec: EnsembleSpec,
    pub dim: usize,
    /// `q̃(N, p)`, the crossing weight the analytic side is evaluated at.
    pub q_eff: f64,
    pub samples: Vec<SampleSpectrum>,
    pub statistics: Option<EnsembleStatistics>,
}

/// Samples are generated and diagonalized independently on the rayon pool and
/// collected in index order, so the result does not depend on the thread count.
pub fn run_ensemble(spec: &EnsembleSpec) -> Result<EnsembleResult> {
    if spec.sample_count == 0 {
        return Err(Error::Config("sample_count must be at least 1".into()));
    }
    let algebra = MajoranaAlgebra::new(spec.n)?;
    let q_eff = qtilde(spec.n, spec.p)?;
    let samples = (0..spec.sample_count)
        .into_par_iter()
        .map(|index| {
            let seed = sample_seed(spec.master_seed, index);
            let h = sample_with_algebra(&algebra, spec.p, spec.lambda1, seed)?;
            Ok(SampleSpectrum {
                index,
                seed,
                eigenvalues: eigenvalues(&h)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EnsembleResult {
        schema_version: ENSEMBLE_SCHEMA_VERSION,
        spec: spec.clone(),
        dim: algebra.dim(),
        q_eff,
        samples,
        statistics: None,
    })
}

impl EnsembleResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ensemble results contain only finite numbers")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("ensemble JSON: {e}")))
    }

    /// Rows `sample_index,eigen_index,value` with 17 significant digits.
    pub fn write_eigenvalue_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "sample_index,eigen_index,value")?;
        for s in &self.samples {
            for (k, e) in s.eigenvalues.iter().enumerate() {
                writeln!(out, "{},{},{:.16e}", s.index, k, e)?;
            }
        }
        Ok(())
    }

    pub fn with_statistics(mut self, options: &StatisticsOptions) -> Result<Self> {
        self.statistics = Some(summarize(&self, options)?);
        Ok(self)
    }
}

/// Number of eigenvalues above `threshold`, per sample.
pub fn count_beyond(result: &EnsembleResult, threshold: f64) -> Vec<usize> {
    result
        .samples
        .iter()
        .map(|s| s.eigenvalues.iter().filter(|&&e| e > threshold).count())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlaggedSample {
    pub index: usize,
    pub beyond_threshold: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitStatistics {
    pub threshold: f64,
    pub analytic: f64,
    /// Split eigenvalue of every sample with exactly one eigenvalue beyond the threshold.
    pub per_sample: Vec<(usize, f64)>,
    /// Samples with zero or several eigenvalues beyond the threshold; excluded above.
    pub flagged: Vec<FlaggedSample>,
    /// `None` when every sample is flagged.
    pub mean: Option<f64>,
    /// `√(mean (E_i − E_analytic)²)`, the spread about the analytic value.
    pub sigma_split: Option<f64>,
}

pub fn split_statistics(result: &EnsembleResult, q_eff: f64, lambda1: f64) -> Result<SplitStatistics> {
    split_statistics_with_margin(result, q_eff, lambda1, DEFAULT_SPLIT_MARGIN)
}

pub fn split_statistics_with_margin(
    result: &EnsembleResult,
    q_eff: f64,
    lambda1: f64,
    margin: f64,
) -> Result<SplitStatistics> {
    let params = DeformationParams::new(q_eff, lambda1)?;
    let analytic = solve_secular(&params)?;
    let threshold = spectral_edge(q_eff)? * (1.0 + margin);
    let mut per_sample = Vec::new();
    let mut flagged = Vec::new();
    for s in &result.samples {
        let beyond: Vec<f64> = s.eigenvalues.iter().copied().filter(|&e| e > threshold).collect();
        if beyond.len() == 1 {
            per_sample.push((s.index, beyond[0]));
        } else {
            flagged.push(FlaggedSample {
                index: s.index,
                beyond_threshold: beyond.len(),
            });
        }
    }
    let count = per_sample.len() as f64;
    let (mean, sigma_split) = if per_sample.is_empty() {
        (None, None)
    } else {
        let mean = per_sample.iter().map(|(_, e)| e).sum::<f64>() / count;
        let var = per_sample.iter().map(|(_, e)| (e - analytic).powi(2)).sum::<f64>() / count;
        (Some(mean), Some(var.sqrt()))
    };
    Ok(SplitStatistics {
        threshold,
        analytic,
        per_sample,
        flagged,
        mean,
        sigma_split,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalMoment {
    pub p: usize,
    pub estimate: f64,
    /// Standard error of the ensemble mean; absent for a single sample.
    pub stderr: Option<f64>,
}

/// `m_p ≈ Σ_i E_i^p − dim · RT(p/2, q_eff)` averaged over samples (the subtraction only for even `p`).
pub fn empirical_moments(result: &EnsembleResult, p_max: usize, q_eff: f64) -> Result<Vec<EmpiricalMoment>> {
    if p_max > EMPIRICAL_P_MAX {
        return Err(Error::SizeLimit {
            what: "empirical moment order",
            value: p_max,
            limit: EMPIRICAL_P_MAX,
        });
    }
    let dim = result.dim as f64;
    let count = result.samples.len() as f64;
    let mut out = Vec::with_capacity(p_max);
    for p in 1..=p_max {
        let subtrahend = if p % 2 == 0 {
            dim * rt_polynomial(p / 2).eval(q_eff)
        } else {
            0.0
        };
        let per_sample: Vec<f64> = result
            .samples
            .iter()
            .map(|s| s.eigenvalues.iter().map(|e| e.powi(p as i32)).sum::<f64>() - subtrahend)
            .collect();
        let mean = per_sample.iter().sum::<f64>() / count;
        let stderr = (per_sample.len() > 1).then(|| {
            let var = per_sample.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1.0);
            (var / count).sqrt()
        });
        out.push(EmpiricalMoment {
            p,
            estimate: mean,
            stderr,
        });
    }
    Ok(out)
}

/// Eigenvalue density over `[lo, hi]`, normalized by the count of all eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
    pub density: Vec<f64>,
    pub total: u64,
    pub below: u64,
    pub above: u64,
}

impl Histogram {
    pub fn bin_width(&self) -> f64 {
        (self.hi - self.lo) / self.counts.len() as f64
    }

    pub fn bin_edges(&self, k: usize) -> (f64, f64) {
        let w = self.bin_width();
        (self.lo + k as f64 * w, self.lo + (k + 1) as f64 * w)
    }

    /// `Σ density · width`, the fraction of eigenvalues inside `[lo, hi]`.
    pub fn mass(&self) -> f64 {
        self.density.iter().sum::<f64>() * self.bin_width()
    }

    /// `∫ |h − ρ|` over the real line: per-bin quadrature inside the range, plus the
    /// histogram mass outside it and the density mass outside it.
    pub fn l1_distance(&self, rho: &QHermiteDensity) -> f64 {
        let mut total = (self.below + self.above) as f64 / self.total as f64;
        for (k, &h) in self.density.iter().enumerate() {
            let (a, b) = self.bin_edges(k);
            total += adaptive_simpson(&|e: f64| (h - rho.density(e)).abs(), a, b, 1e-10);
        }
        total + rho.mass_between(f64::NEG_INFINITY, self.lo) + rho.mass_between(self.hi, f64::INFINITY)
    }
}

/// Histogram of every eigenvalue of every sample; `range` defaults to the observed extremes.
pub fn histogram(result: &EnsembleResult, bins: usize, range: Option<(f64, f64)>) -> Result<Histogram> {
    if bins < MIN_BINS {
        return Err(Error::Config(format!("at least {MIN_BINS} bins required, got {bins}")));
    }
    let all = result.samples.iter().flat_map(|s| s.eigenvalues.iter().copied());
    let (lo, hi) = match range {
        Some(r) => r,
        None => all.clone().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), e| (a.min(e), b.max(e))),
    };
    if !(lo < hi && lo.is_finite() && hi.is_finite()) {
        return Err(Error::Config(format!("invalid histogram range [{lo}, {hi}]")));
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0u64; bins];
    let (mut total, mut below, mut above) = (0u64, 0u64, 0u64);
    for e in all {
        total += 1;
        if e < lo {
            below += 1;
        } else if e > hi {
            above += 1;
        } else {
            let k = (((e - lo) / width) as usize).min(bins - 1);
            counts[k] += 1;
        }
    }
    let density = counts
        .iter()
        .map(|&c| c as f64 / (total as f64 * width))
        .collect();
    Ok(Histogram {
        lo,
        hi,
        counts,
        density,
        total,
        below,
        above,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatisticsOptions {
    pub p_max: usize,
    pub bins: usize,
    pub range: Option<(f64, f64)>,
    pub margin: f64,
}

impl Default for StatisticsOptions {
    fn default() -> Self {
        Self {
            p_max: 6,
            bins: 60,
            range: None,
            margin: DEFAULT_SPLIT_MARGIN,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleStatistics {
    pub lambda_critical: f64,
    pub threshold: f64,
    pub beyond_threshold: Vec<usize>,
    /// Present only when `λ₁` exceeds the critical coupling at `q_eff`.
    pub split: Option<SplitStatistics>,
    pub moments: Vec<EmpiricalMoment>,
    pub histogram: Histogram,
    pub bulk_l1_distance: f64,
}

pub fn summarize(result: &EnsembleResult, options: &StatisticsOptions) -> Result<EnsembleStatistics> {
    let q = result.q_eff;
    let critical = lambda_critical(q)?;
    let threshold = spectral_edge(q)? * (1.0 + options.margin);
    let split = if result.spec.lambda1 > critical {
        Some(split_statistics_with_margin(result, q, result.spec.lambda1, options.margin)?)
    } else {
        None
    };
    let histogram = histogram(result, options.bins, options.range)?;
    let bulk_l1_distance = histogram.l1_distance(&QHermiteDensity::new(q)?);
    Ok(EnsembleStatistics {
        lambda_critical: critical,
        threshold,
        beyond_threshold: count_beyond(result, threshold),
        split,
        moments: empirical_moments(result, options.p_max, q)?,
        histogram,
        bulk_l1_distance,
    })
}
