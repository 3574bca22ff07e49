//! Rigidity of the Hermitized eigenvalues against the classical locations.

use crate::ensembles::{sample_matrix, EnsembleSpec};
use crate::limiting::classical_locations;
use crate::report::csv_document;
use crate::resolvent::hermitize;
use crate::{Complex64, Error, Result};
use rayon::prelude::*;

#[derive(Debug, Clone)]
pub struct RigidityRow {
    pub seed: u64,
    /// Max over bulk `j` of the relative deviation divided by the
    /// deterministic envelope with `(log N)^4` as the polylog factor.
    pub max_bulk_norm_dev: f64,
    pub median_bulk_rel_dev: f64,
    /// Fraction of bulk indices with `γ_{j-s} ≤ λ_j ≤ γ_{j+s}`,
    /// `s = ⌈(log N)²⌉`.
    pub sandwich_fraction: f64,
}

#[derive(Debug, Clone)]
pub struct RigidityReport {
    pub n: usize,
    pub z: Complex64,
    pub shift: usize,
    pub rows: Vec<RigidityRow>,
}

impl RigidityReport {
    pub fn fraction_within_envelope(&self) -> f64 {
        if self.rows.is_empty() {
            return 1.0;
        }
        let ok = self.rows.iter().filter(|r| r.max_bulk_norm_dev <= 1.0).count();
        ok as f64 / self.rows.len() as f64
    }

    pub fn mean_sandwich_fraction(&self) -> f64 {
        if self.rows.is_empty() {
            return 1.0;
        }
        self.rows.iter().map(|r| r.sandwich_fraction).sum::<f64>() / self.rows.len() as f64
    }

    pub fn median_bulk_rel_dev(&self) -> f64 {
        let mut vals: Vec<f64> = self.rows.iter().map(|r| r.median_bulk_rel_dev).collect();
        vals.sort_by(f64::total_cmp);
        let k = vals.len();
        if k % 2 == 1 {
            vals[k / 2]
        } else {
            0.5 * (vals[k / 2 - 1] + vals[k / 2])
        }
    }

    pub fn to_csv(&self) -> String {
        let rows: Vec<Vec<f64>> = self
            .rows
            .iter()
            .map(|r| vec![r.seed as f64, r.max_bulk_norm_dev, r.sandwich_fraction])
            .collect();
        csv_document(&["seed", "max_bulk_norm_dev", "sandwich_fraction"], &rows)
    }
}

/// Compare ordered eigenvalues `λ_j` of `Y_z* Y_z` with the classical
/// locations `γ_j` over the bulk `j ∈ [0.1N, 0.9N]`, one matrix per seed.
pub fn rigidity_check(spec: &EnsembleSpec, z: Complex64, seeds: &[u64]) -> Result<RigidityReport> {
    if (z.norm() - 1.0).abs() < 0.05 {
        return Err(Error::Hypothesis(format!(
            "rigidity_check requires ||z|-1| >= 0.05, got |z| = {}",
            z.norm()
        )));
    }
    if seeds.is_empty() {
        return Err(Error::Precondition("rigidity_check needs at least one seed".into()));
    }
    let n = spec.dimension;
    let nf = n as f64;
    let gamma = classical_locations(n, z)?.gamma;
    let logn4 = nf.ln().powi(4);
    let shift = nf.ln().powi(2).ceil() as usize;
    let inside = z.norm() < 1.0;
    // deterministic envelope for |λ_j - γ_j|/γ_j with (log N)^4 polylog
    let envelope = |j: usize| -> f64 {
        let frac = j as f64 / nf;
        if inside {
            logn4 / (j as f64 * (1.0 - frac).cbrt())
        } else {
            logn4 * frac.min(1.0 - frac).cbrt().recip() / nf
        }
    };
    let bulk: Vec<usize> = (1..=n)
        .filter(|&j| j as f64 >= 0.1 * nf && j as f64 <= 0.9 * nf)
        .collect();

    let rows: Vec<RigidityRow> = seeds
        .par_iter()
        .map(|&seed| -> Result<RigidityRow> {
            let x = sample_matrix(&spec.with_seed(seed));
            let lambda = hermitize(&x, z, false)?.eigenvalues;
            let mut max_norm: f64 = 0.0;
            let mut rel_devs = Vec::with_capacity(bulk.len());
            let mut sandwiched = 0usize;
            for &j in &bulk {
                let l = lambda[j - 1];
                let g = gamma[j - 1];
                let rel = (l - g).abs() / g;
                rel_devs.push(rel);
                max_norm = max_norm.max(rel / envelope(j));
                let lo = if j > shift { gamma[j - 1 - shift] } else { 0.0 };
                let hi = if j + shift <= n { gamma[j - 1 + shift] } else { f64::INFINITY };
                if lo <= l && l <= hi {
                    sandwiched += 1;
                }
            }
            rel_devs.sort_by(f64::total_cmp);
            Ok(RigidityRow {
                seed,
                max_bulk_norm_dev: max_norm,
                median_bulk_rel_dev: rel_devs[rel_devs.len() / 2],
                sandwich_fraction: sandwiched as f64 / bulk.len() as f64,
            })
        })
        .collect::<Result<_>>()?;

    Ok(RigidityReport { n, z, shift, rows })
}
