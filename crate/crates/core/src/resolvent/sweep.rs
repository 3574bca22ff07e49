//! Local-law deviation sweeps over `S(α)` and the fixed-minor conditional
//! expectation check.

use crate::ensembles::{draw_entry, sample_matrix, EnsembleKind, EnsembleSpec, SampleMatrix};
use crate::limiting::{mc_solve, ShiftContext, SpectralPoint};
use crate::report::csv_document;
use crate::resolvent::green::{green_from_spectrum, hermitize, m_empirical, MinorSpec};
use crate::resolvent::{green_entries, SGrid};
use crate::{Complex64, Error, Result};
use ndarray::Array1;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// One `(seed, grid point)` observation of the empirical resolvent against
/// its deterministic limit.
#[derive(Debug, Clone)]
pub struct ResolventSample {
    pub w: SpectralPoint,
    pub m_emp: Complex64,
    pub mc: Complex64,
    /// `Λ = |m_emp - m_c|`.
    pub lambda: f64,
    pub entry_max_offdiag: Option<f64>,
    pub entry_max_diag_dev: Option<f64>,
    /// `√(Im m_c/(Nη)) + 1/(Nη)`.
    pub theory_entry_bound: f64,
}

/// Seed-aggregated statistics at one grid point.
#[derive(Debug, Clone)]
pub struct LocalLawRow {
    pub e: f64,
    pub eta: f64,
    pub mc: Complex64,
    pub median_neta_lambda: f64,
    pub max_neta_lambda: f64,
    /// Median over seeds of `entry_max_offdiag / theory_entry_bound`; only at
    /// the subsampled points where entrywise Green functions were computed.
    pub entry_ratio_median: Option<f64>,
    pub entry_diag_ratio_median: Option<f64>,
    /// Log-log slope of the median `Λ` against `η` over this row's column.
    pub slope: f64,
    /// Whether `E` sits in the interior 80% of the limiting support.
    pub bulk: bool,
}

#[derive(Debug, Clone)]
pub struct LocalLawReport {
    pub z: Complex64,
    pub n: usize,
    pub seeds: Vec<u64>,
    pub rows: Vec<LocalLawRow>,
}

impl LocalLawReport {
    /// Fraction of bulk rows whose median `Nη·Λ` is at most `bound`.
    pub fn bulk_fraction_within(&self, bound: f64) -> f64 {
        let bulk: Vec<_> = self.rows.iter().filter(|r| r.bulk).collect();
        if bulk.is_empty() {
            return 1.0;
        }
        let ok = bulk.iter().filter(|r| r.median_neta_lambda <= bound).count();
        ok as f64 / bulk.len() as f64
    }

    /// Fraction of entrywise-sampled rows with median off-diagonal ratio at
    /// most `bound`.
    pub fn entry_fraction_within(&self, bound: f64) -> f64 {
        let sampled: Vec<_> =
            self.rows.iter().filter_map(|r| r.entry_ratio_median).collect();
        if sampled.is_empty() {
            return 1.0;
        }
        let ok = sampled.iter().filter(|&&r| r <= bound).count();
        ok as f64 / sampled.len() as f64
    }

    /// Log-log slope of median `Λ` against `η` at the energy closest to `e`,
    /// restricted to `η ∈ [eta_lo, eta_hi]`. `None` with fewer than 3 points.
    pub fn column_slope(&self, e: f64, eta_lo: f64, eta_hi: f64) -> Option<f64> {
        let best = self
            .rows
            .iter()
            .map(|r| r.e)
            .min_by(|a, b| (a - e).abs().total_cmp(&(b - e).abs()))?;
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter(|r| {
                r.e == best
                    && r.eta >= eta_lo
                    && r.eta <= eta_hi
                    && r.median_neta_lambda > 0.0
            })
            .map(|r| (r.eta.ln(), (r.median_neta_lambda / (self.n as f64 * r.eta)).ln()))
            .collect();
        if pts.len() < 3 {
            return None;
        }
        Some(crate::ensembles::least_squares_slope(&pts))
    }

    /// CSV with one row per grid point. `slope_flag` is 1 when the column's
    /// log-log slope sits in `-1 ± 0.3`, else 0; `entry_ratio_median` is NaN
    /// where entries were not sampled.
    pub fn to_csv(&self) -> String {
        let rows: Vec<Vec<f64>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.e,
                    r.eta,
                    r.median_neta_lambda,
                    r.max_neta_lambda,
                    r.entry_ratio_median.unwrap_or(f64::NAN),
                    if (r.slope + 1.0).abs() <= 0.3 { 1.0 } else { 0.0 },
                ]
            })
            .collect();
        csv_document(
            &["E", "eta", "median_NetaLambda", "max_NetaLambda", "entry_ratio_median", "slope_flag"],
            &rows,
        )
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

struct SeedObservation {
    lambdas: Vec<f64>,
    entry_ratios: Vec<Option<(f64, f64)>>,
}

/// Sweep `Λ = |m - m_c|` and entrywise Green-function deviations over the
/// grid, one independent matrix per seed.
///
/// One decomposition per seed serves every grid point; full entrywise Green
/// functions are evaluated at up to 32 evenly subsampled points. Refuses
/// `||z| - 1| < 0.05`, where the deterministic comparison is not justified.
pub fn local_law_sweep(
    spec: &EnsembleSpec,
    z: Complex64,
    grid: &SGrid,
    seeds: &[u64],
) -> Result<LocalLawReport> {
    if (z.norm() - 1.0).abs() < 0.05 {
        return Err(Error::Hypothesis(format!(
            "local_law_sweep requires ||z|-1| >= 0.05, got |z| = {}",
            z.norm()
        )));
    }
    if seeds.is_empty() {
        return Err(Error::Precondition("local_law_sweep needs at least one seed".into()));
    }
    let n = spec.dimension;
    let ctx = ShiftContext::new(z);

    let mut points: Vec<SpectralPoint> = Vec::with_capacity(grid.point_count());
    for col in &grid.columns {
        for &eta in &col.etas {
            points.push(SpectralPoint::new(col.e, eta));
        }
    }
    let mcs: Vec<Complex64> =
        points.iter().map(|&w| mc_solve(w, z).map(|v| v.mc)).collect::<Result<_>>()?;

    let stride = (points.len() + 31) / 32;
    let sampled: Vec<bool> = (0..points.len()).map(|i| i % stride.max(1) == 0).collect();

    let observations: Vec<SeedObservation> = seeds
        .par_iter()
        .map(|&seed| -> Result<SeedObservation> {
            let x = sample_matrix(&spec.with_seed(seed));
            let herm = hermitize(&x, z, true)?;
            let mut lambdas = Vec::with_capacity(points.len());
            let mut entry_ratios = Vec::with_capacity(points.len());
            for (k, &w) in points.iter().enumerate() {
                lambdas.push((m_empirical(&herm, w) - mcs[k]).norm());
                if !sampled[k] {
                    entry_ratios.push(None);
                    continue;
                }
                let g = green_from_spectrum(&herm, w)?;
                let bound =
                    (mcs[k].im / (n as f64 * w.eta)).sqrt() + 1.0 / (n as f64 * w.eta);
                let mut off = 0.0f64;
                let mut diag = 0.0f64;
                for i in 0..n {
                    for j in 0..n {
                        let gij = g[[i, j]];
                        if i == j {
                            diag = diag.max((gij - mcs[k]).norm());
                        } else {
                            off = off.max(gij.norm());
                        }
                    }
                }
                entry_ratios.push(Some((off / bound, diag / bound)));
            }
            Ok(SeedObservation { lambdas, entry_ratios })
        })
        .collect::<Result<_>>()?;

    let width = ctx.lambda_plus - ctx.support_min();
    let bulk_lo = ctx.support_min() + 0.1 * width;
    let bulk_hi = ctx.lambda_plus - 0.1 * width;

    let mut rows = Vec::with_capacity(points.len());
    let mut k = 0usize;
    for col in &grid.columns {
        let col_start = k;
        for &eta in &col.etas {
            let mut ls: Vec<f64> = observations.iter().map(|o| o.lambdas[k]).collect();
            let med = median(&mut ls);
            let max = ls.last().copied().unwrap_or(0.0);
            let neta = n as f64 * eta;
            let (entry_ratio_median, entry_diag_ratio_median) = if sampled[k] {
                let mut offs: Vec<f64> = observations
                    .iter()
                    .filter_map(|o| o.entry_ratios[k].map(|r| r.0))
                    .collect();
                let mut diags: Vec<f64> = observations
                    .iter()
                    .filter_map(|o| o.entry_ratios[k].map(|r| r.1))
                    .collect();
                (Some(median(&mut offs)), Some(median(&mut diags)))
            } else {
                (None, None)
            };
            rows.push(LocalLawRow {
                e: col.e,
                eta,
                mc: mcs[k],
                median_neta_lambda: neta * med,
                max_neta_lambda: neta * max,
                entry_ratio_median,
                entry_diag_ratio_median,
                slope: 0.0,
                bulk: col.e >= bulk_lo && col.e <= bulk_hi,
            });
            k += 1;
        }
        let pts: Vec<(f64, f64)> = rows[col_start..]
            .iter()
            .filter(|r| r.median_neta_lambda > 0.0)
            .map(|r| (r.eta.ln(), (r.median_neta_lambda / (n as f64 * r.eta)).ln()))
            .collect();
        let slope =
            if pts.len() >= 2 { crate::ensembles::least_squares_slope(&pts) } else { f64::NAN };
        for r in rows[col_start..].iter_mut() {
            r.slope = slope;
        }
    }

    Ok(LocalLawReport { z, n, seeds: seeds.to_vec(), rows })
}

/// Result of the Monte-Carlo check of the fixed-minor expectation identity
/// `E(y_i G^{(ij)} y_j*) = |z|² G^{(ij)}_{ij}`.
#[derive(Debug, Clone)]
pub struct McErrorReport {
    pub target: Complex64,
    pub average: Complex64,
    /// `|average - target|`.
    pub deviation: f64,
    /// Empirical standard deviation of the quadratic form over `1/√resamples`.
    pub statistical_scale: f64,
    pub resamples: usize,
}

/// Resample rows `i` and `j` of `X` while holding the minor `G^{(∅,ij)}`
/// fixed, and compare the average quadratic form `y_i G^{(ij)} y_j*` with its
/// exact conditional expectation `|z|² G^{(ij)}_{ij}`.
pub fn conditional_expectation_check(
    x: &SampleMatrix,
    kind: EnsembleKind,
    z: Complex64,
    w: SpectralPoint,
    i: usize,
    j: usize,
    resamples: usize,
    seed: u64,
) -> Result<McErrorReport> {
    if i == j {
        return Err(Error::Precondition("row indices must differ".into()));
    }
    if w.eta <= 0.0 {
        return Err(Error::Precondition("eta must be positive".into()));
    }
    if resamples < 1000 {
        return Err(Error::Precondition(format!(
            "needs at least 10^3 resamples, got {resamples}"
        )));
    }
    let n = x.n;
    let (g, _) = green_entries(x, z, w, &MinorSpec { t: vec![], u: vec![i, j] })?;
    let target = Complex64::new(z.norm_sqr(), 0.0) * g[[i, j]];

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sum_sq = 0.0f64;
    let mut yi: Array1<Complex64> = Array1::zeros(n);
    let mut yj: Array1<Complex64> = Array1::zeros(n);
    for _ in 0..resamples {
        for a in 0..n {
            yi[a] = draw_entry(kind, n, &mut rng);
            yj[a] = draw_entry(kind, n, &mut rng);
        }
        yi[i] -= z;
        yj[j] -= z;
        let gyj = g.dot(&yj.mapv(|e| e.conj()));
        let q: Complex64 = yi.iter().zip(gyj.iter()).map(|(a, b)| a * b).sum();
        sum += q;
        sum_sq += q.norm_sqr();
    }
    let average = sum / resamples as f64;
    let var = (sum_sq / resamples as f64 - average.norm_sqr()).max(0.0);
    Ok(McErrorReport {
        target,
        average,
        deviation: (average - target).norm(),
        statistical_scale: (var / resamples as f64).sqrt(),
        resamples,
    })
}
