//! Delta-like linear eigenvalue statistics against the uniform disk measure
//! and their scaling in `N`.

use crate::circlaw::spectrum::{nonhermitian_spectrum, ComplexSpectrum};
use crate::circlaw::testfn::TestFunction;
use crate::ensembles::{least_squares_slope, sample_matrix, EnsembleSpec};
use crate::limiting::quad;
use crate::report::csv_document;
use crate::{Complex64, Error, Result};
use rayon::prelude::*;
use std::f64::consts::PI;

/// `N^{-1} Σ_j f_{z0}(μ_j)`, the delta-like statistic at scale `N^{-a}`.
pub fn local_stat(spectrum: &ComplexSpectrum, tf: &TestFunction) -> f64 {
    let sum: f64 = spectrum.mu.iter().map(|&m| tf.rescaled_value(spectrum.n, m)).sum();
    sum / spectrum.n as f64
}

/// `(1/π) ∫_D f_{z0} dA` over the unit disk `D`.
///
/// In the rescaled variable `ζ = N^a (z - z0)` the integrand is the radial
/// base bump, and the disk constraint becomes an angular arc at each radius;
/// the domain is decomposed in polar coordinates around `z0`.
pub fn disk_integral(tf: &TestFunction, n: usize) -> Result<f64> {
    let d = tf.z0.norm();
    let na = (n as f64).powf(tf.a);
    let r_max = tf.support_radius;
    // arc of directions at base radius r that lands inside the unit disk
    let theta_in = move |r: f64| -> f64 {
        let rho = r / na;
        if d == 0.0 {
            return if rho < 1.0 { 2.0 * PI } else { 0.0 };
        }
        let c = (1.0 - d * d - rho * rho) / (2.0 * d * rho);
        if c >= 1.0 {
            2.0 * PI
        } else if c <= -1.0 {
            0.0
        } else {
            2.0 * (PI - c.acos())
        }
    };
    // the arc function has kinks where the circle of radius rho around z0
    // starts or stops crossing |z| = 1
    let mut cuts = vec![0.0, r_max];
    for rho in [(1.0 - d).abs(), 1.0 + d] {
        let r = rho * na;
        if r > 0.0 && r < r_max {
            cuts.push(r);
        }
    }
    cuts.sort_by(f64::total_cmp);
    let mut total = 0.0;
    for pair in cuts.windows(2) {
        total += quad::integrate(
            &|r: f64| tf.value_base(r) * r * theta_in(r),
            pair[0],
            pair[1],
            1e-11,
        )
        .ok_or_else(|| Error::Numerical("disk-integral quadrature did not converge".into()))?;
    }
    Ok(total / PI)
}

/// One seeded observation of the local statistic against its disk limit.
#[derive(Debug, Clone)]
pub struct CircularLawSample {
    pub n: usize,
    pub seed: u64,
    pub z0: Complex64,
    pub a: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub err: f64,
    /// `N^{-1+2a} ‖Δf‖_{L¹}`.
    pub bound: f64,
}

#[derive(Debug, Clone)]
pub struct ScalingRow {
    pub n: usize,
    pub a: f64,
    pub median_err: f64,
    pub envelope: f64,
}

#[derive(Debug, Clone)]
pub struct ScalingReport {
    pub z0: Complex64,
    pub a: f64,
    pub samples: Vec<CircularLawSample>,
    pub rows: Vec<ScalingRow>,
    /// Least-squares slope of `log median_err` against `log N`.
    pub slope: f64,
}

impl ScalingReport {
    /// Mean and standard error of `lhs` over seeds at dimension `n`.
    pub fn mean_lhs(&self, n: usize) -> Option<(f64, f64)> {
        let vals: Vec<f64> =
            self.samples.iter().filter(|s| s.n == n).map(|s| s.lhs).collect();
        if vals.len() < 2 {
            return None;
        }
        let k = vals.len() as f64;
        let mean = vals.iter().sum::<f64>() / k;
        let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (k - 1.0);
        Some((mean, (var / k).sqrt()))
    }

    /// Fraction of samples with `err ≤ slack · bound`.
    pub fn fraction_within(&self, slack: f64) -> f64 {
        if self.samples.is_empty() {
            return 1.0;
        }
        let ok = self.samples.iter().filter(|s| s.err <= slack * s.bound).count();
        ok as f64 / self.samples.len() as f64
    }

    pub fn to_csv(&self) -> String {
        let rows: Vec<Vec<f64>> = self
            .rows
            .iter()
            .map(|r| vec![r.n as f64, r.a, r.median_err, r.envelope, self.slope])
            .collect();
        csv_document(&["N", "a", "median_err", "envelope", "slope"], &rows)
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let k = values.len();
    if k % 2 == 1 {
        values[k / 2]
    } else {
        0.5 * (values[k / 2 - 1] + values[k / 2])
    }
}

/// Run the delta-like statistic across dimensions and seeds and fit the decay
/// rate of the median error against the predicted envelope `N^{-1+2a}`.
pub fn circular_law_scaling(
    template: &EnsembleSpec,
    z0: Complex64,
    a: f64,
    ns: &[usize],
    seeds: &[u64],
) -> Result<ScalingReport> {
    if (z0.norm() - 1.0).abs() < 0.05 {
        return Err(Error::Hypothesis(format!(
            "circular_law_scaling requires ||z0|-1| >= 0.05, got |z0| = {}",
            z0.norm()
        )));
    }
    if ns.is_empty() || seeds.is_empty() {
        return Err(Error::Precondition("needs at least one dimension and one seed".into()));
    }
    let tf = TestFunction::new(z0, a, 1.0)?;
    let mut samples = Vec::new();
    let mut rows = Vec::new();
    for &n in ns {
        let rhs = disk_integral(&tf, n)?;
        let bound = (n as f64).powf(-1.0 + 2.0 * a) * tf.laplacian_l1();
        let batch: Vec<CircularLawSample> = seeds
            .par_iter()
            .map(|&seed| -> Result<CircularLawSample> {
                let spec = EnsembleSpec::new(template.kind, n, seed)?;
                let spectrum = nonhermitian_spectrum(&sample_matrix(&spec))?;
                let lhs = local_stat(&spectrum, &tf);
                Ok(CircularLawSample { n, seed, z0, a, lhs, rhs, err: (lhs - rhs).abs(), bound })
            })
            .collect::<Result<_>>()?;
        let mut errs: Vec<f64> = batch.iter().map(|s| s.err).collect();
        rows.push(ScalingRow { n, a, median_err: median(&mut errs), envelope: bound });
        samples.extend(batch);
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.median_err > 0.0)
        .map(|r| ((r.n as f64).ln(), r.median_err.ln()))
        .collect();
    let slope = if pts.len() >= 2 { least_squares_slope(&pts) } else { f64::NAN };
    Ok(ScalingReport { z0, a, samples, rows, slope })
}
