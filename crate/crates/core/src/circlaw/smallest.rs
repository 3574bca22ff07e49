//! Distribution of the smallest eigenvalue `λ_1(z)` of `Y_z* Y_z`.

use crate::ensembles::{sample_matrix, EnsembleSpec};
use crate::resolvent::hermitize;
use crate::{Complex64, Error, Result};
use rayon::prelude::*;

#[derive(Debug, Clone)]
pub struct SmallestReport {
    pub n: usize,
    pub z: Complex64,
    /// Per-seed `λ_1(z)`, in seed order.
    pub lambda1: Vec<f64>,
}

impl SmallestReport {
    /// Median of `N² λ_1` over seeds.
    pub fn median_scaled(&self) -> f64 {
        let n2 = (self.n * self.n) as f64;
        let mut vals: Vec<f64> = self.lambda1.iter().map(|&l| n2 * l).collect();
        vals.sort_by(f64::total_cmp);
        let k = vals.len();
        if k % 2 == 1 {
            vals[k / 2]
        } else {
            0.5 * (vals[k / 2 - 1] + vals[k / 2])
        }
    }

    /// Fraction of seeds with `|log λ_1| ≤ (log N)²`.
    pub fn log_bound_fraction(&self) -> f64 {
        let bound = (self.n as f64).ln().powi(2);
        let ok = self.lambda1.iter().filter(|&&l| l > 0.0 && l.ln().abs() <= bound).count();
        ok as f64 / self.lambda1.len() as f64
    }
}

/// Sample `λ_1(z)` across seeds via the smallest singular value of `Y_z`.
pub fn smallest_eigenvalue_stats(
    spec: &EnsembleSpec,
    z: Complex64,
    seeds: &[u64],
) -> Result<SmallestReport> {
    if seeds.is_empty() {
        return Err(Error::Precondition(
            "smallest_eigenvalue_stats needs at least one seed".into(),
        ));
    }
    let lambda1: Vec<f64> = seeds
        .par_iter()
        .map(|&seed| -> Result<f64> {
            let x = sample_matrix(&spec.with_seed(seed));
            let eigenvalues = hermitize(&x, z, false)?.eigenvalues;
            Ok(eigenvalues[0])
        })
        .collect::<Result<_>>()?;
    Ok(SmallestReport { n: spec.dimension, z, lambda1 })
}
