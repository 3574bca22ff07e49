//! Random-matrix ensembles with independent centered entries of variance `1/N`.
//!
//! All samplers are driven by ChaCha8 (a counter-based stream cipher RNG with
//! a stable, documented algorithm), so a `(kind, N, seed)` triple yields
//! bit-identical matrices on every platform and every run.

use crate::{Complex64, Error, Result};
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

/// Identifier of the RNG algorithm, recorded in run manifests.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Entry law for an ensemble. Every law has mean 0 and variance exactly `1/N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnsembleKind {
    /// `Normal(0, 1/N)` real entries.
    GinibreReal,
    /// Independent real and imaginary parts, each `Normal(0, 1/(2N))`.
    GinibreComplex,
    /// `±1/√N` equiprobable.
    Rademacher,
    /// `Uniform(-√(3/N), √(3/N))`.
    Uniform,
    /// Symmetric Laplace scaled to variance `1/N` (scale `b = 1/√(2N)`).
    Laplace,
}

impl EnsembleKind {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "ginibre-real" => Ok(Self::GinibreReal),
            "ginibre-complex" => Ok(Self::GinibreComplex),
            "rademacher" => Ok(Self::Rademacher),
            "uniform" => Ok(Self::Uniform),
            "laplace" => Ok(Self::Laplace),
            other => Err(Error::InvalidEnsemble(format!("unknown kind '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::GinibreReal => "ginibre-real",
            Self::GinibreComplex => "ginibre-complex",
            Self::Rademacher => "rademacher",
            Self::Uniform => "uniform",
            Self::Laplace => "laplace",
        }
    }

    pub fn is_complex(&self) -> bool {
        matches!(self, Self::GinibreComplex)
    }
}

/// Description of an `N x N` i.i.d. random matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub dimension: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, dimension: usize, seed: u64) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::Precondition(format!(
                "ensemble dimension must be >= 2, got {dimension}"
            )));
        }
        Ok(Self { kind, dimension, seed })
    }

    /// The same spec with a different seed; used for seed fan-out in sweeps.
    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..*self }
    }
}

/// A realized `N x N` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMatrix {
    pub n: usize,
    pub entries: Array2<Complex64>,
    pub is_real: bool,
}

impl SampleMatrix {
    pub fn frobenius_sq(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.entries[[i, i]]).sum()
    }
}

pub(crate) fn draw_entry(kind: EnsembleKind, n: usize, rng: &mut ChaCha8Rng) -> Complex64 {
    let nf = n as f64;
    match kind {
        EnsembleKind::GinibreReal => {
            let dist = Normal::new(0.0, (1.0 / nf).sqrt()).unwrap();
            Complex64::new(dist.sample(rng), 0.0)
        }
        EnsembleKind::GinibreComplex => {
            let dist = Normal::new(0.0, (0.5 / nf).sqrt()).unwrap();
            Complex64::new(dist.sample(rng), dist.sample(rng))
        }
        EnsembleKind::Rademacher => {
            let s = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            Complex64::new(s / nf.sqrt(), 0.0)
        }
        EnsembleKind::Uniform => {
            let half = (3.0 / nf).sqrt();
            Complex64::new(rng.gen_range(-half..half), 0.0)
        }
        EnsembleKind::Laplace => {
            // Inverse-CDF sampling: u in (-1/2, 1/2), x = -b sgn(u) ln(1-2|u|),
            // with b = 1/sqrt(2N) so that Var = 2b^2 = 1/N.
            let b = (0.5 / nf).sqrt();
            let u: f64 = rng.gen::<f64>() - 0.5;
            let x = -b * u.signum() * (1.0 - 2.0 * u.abs()).ln();
            Complex64::new(x, 0.0)
        }
    }
}

/// Draw the full matrix for `spec`. Deterministic given `(kind, N, seed)`.
pub fn sample_matrix(spec: &EnsembleSpec) -> SampleMatrix {
    let n = spec.dimension;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut entries = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            entries[[i, j]] = draw_entry(spec.kind, n, &mut rng);
        }
    }
    SampleMatrix { n, entries, is_real: !spec.kind.is_complex() }
}

/// `Y_z = X - zI`. Off-diagonal entries are untouched.
pub fn shift(x: &SampleMatrix, z: Complex64) -> SampleMatrix {
    let mut entries = x.entries.clone();
    for i in 0..x.n {
        entries[[i, i]] -= z;
    }
    SampleMatrix { n: x.n, entries, is_real: x.is_real && z.im == 0.0 && z.re == 0.0 }
}

/// Empirical tail report for the scaled entry law of `√N X_ij`.
#[derive(Debug, Clone, Serialize)]
pub struct TailReport {
    pub sample_count: usize,
    pub empirical_mean: Complex64,
    pub empirical_variance: f64,
    /// `(lambda, empirical P(|√N X| > lambda))` on a log-spaced grid.
    pub exceedance_curve: Vec<(f64, f64)>,
    /// Fitted subexponential decay exponent, absent when the observed tail is
    /// too thin to fit.
    pub fitted_theta: Option<f64>,
}

/// Estimate the subexponential tail exponent of the scaled entry law.
///
/// Fits `log(-log P(|√N X| > λ))` against `log λ` by least squares over the
/// part of the exceedance curve with enough mass to be trustworthy.
pub fn validate_tails(spec: &EnsembleSpec, trials: usize) -> Result<TailReport> {
    if trials < 10_000 {
        return Err(Error::Precondition(format!(
            "validate_tails needs at least 10^4 trials, got {trials}"
        )));
    }
    let n = spec.dimension;
    let scale = (n as f64).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x7a11_5eed);
    let mut samples = Vec::with_capacity(trials);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sum_sq = 0.0;
    for _ in 0..trials {
        let e = draw_entry(spec.kind, n, &mut rng);
        sum += e;
        sum_sq += e.norm_sqr();
        samples.push(e.norm() * scale);
    }
    let mean = sum / trials as f64;
    let variance = sum_sq / trials as f64 - mean.norm_sqr();

    let lambdas: Vec<f64> = (0..40)
        .map(|k| 10f64.powf(-1.0 + 2.0 * k as f64 / 39.0)) // 0.1 .. 10, log-spaced
        .collect();
    let mut curve = Vec::with_capacity(lambdas.len());
    for &lam in &lambdas {
        let count = samples.iter().filter(|&&s| s > lam).count();
        curve.push((lam, count as f64 / trials as f64));
    }

    // Fit over points where P is resolved: at least 10 exceedances and P < 1/2.
    let min_p = 10.0 / trials as f64;
    let pts: Vec<(f64, f64)> = curve
        .iter()
        .filter(|&&(_, p)| p > min_p && p < 0.5)
        .map(|&(lam, p)| (lam.ln(), (-p.ln()).ln()))
        .collect();
    let fitted_theta = if pts.len() >= 4 { Some(least_squares_slope(&pts)) } else { None };

    Ok(TailReport {
        sample_count: trials,
        empirical_mean: mean,
        empirical_variance: variance,
        exceedance_curve: curve,
        fitted_theta,
    })
}

/// Slope of the least-squares line through `(x, y)` points.
pub fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
