//! Hermitized spectra, Green-function entries for arbitrary minors, and the
//! machine-precision resolvent identity suite.

use crate::ensembles::{shift, SampleMatrix};
use crate::limiting::SpectralPoint;
use crate::{Complex64, Error, Result};
use ndarray::{Array1, Array2, Axis};
use ndarray_linalg::{Inverse, SVD};

/// Eigenvalues (and optionally eigenvectors) of `Y_z* Y_z`.
#[derive(Debug, Clone)]
pub struct HermitizedSpectrum {
    pub z: Complex64,
    pub n: usize,
    /// Nondecreasing, clamped to `[0, ∞)`.
    pub eigenvalues: Vec<f64>,
    /// Columns are eigenvectors of `Y_z* Y_z`, ordered like `eigenvalues`.
    pub eigenvectors: Option<Array2<Complex64>>,
    /// Number of eigenvalues clamped up to zero from round-off.
    pub clamped: usize,
}

/// Spectrum of `Y_z* Y_z` via singular values of `Y_z` (squaring the singular
/// values instead of forming the product keeps the small eigenvalues accurate).
pub fn hermitize(x: &SampleMatrix, z: Complex64, want_vectors: bool) -> Result<HermitizedSpectrum> {
    let y = shift(x, z);
    let (_, s, vt) = y
        .entries
        .svd(false, want_vectors)
        .map_err(|e| Error::Numerical(format!("SVD failed: {e}")))?;
    let n = x.n;
    // singular values come out descending; eigenvalues ascend
    let mut eigenvalues: Vec<f64> = s.iter().rev().map(|&sv| sv * sv).collect();
    let mut clamped = 0;
    for ev in eigenvalues.iter_mut() {
        if *ev < 0.0 {
            if *ev < -1e-10 {
                return Err(Error::Numerical(format!(
                    "eigenvalue {ev} below round-off clamp threshold"
                )));
            }
            *ev = 0.0;
            clamped += 1;
        }
    }
    let eigenvectors = vt.map(|vt| {
        // rows of V^H are conjugated eigenvectors; reverse to ascending order
        let k = vt.nrows();
        let mut out = Array2::zeros((n, k));
        for c in 0..k {
            let row = vt.row(k - 1 - c);
            for r in 0..n {
                out[[r, c]] = row[r].conj();
            }
        }
        out
    });
    let spectrum = HermitizedSpectrum { z, n, eigenvalues, eigenvectors, clamped };
    // trace cross-check against the Frobenius norm of Y_z
    let trace: f64 = spectrum.eigenvalues.iter().sum();
    let fro = y.frobenius_sq();
    if (trace - fro).abs() > 1e-8 * fro.max(1.0) {
        return Err(Error::Numerical(format!(
            "eigenvalue sum {trace} disagrees with trace {fro}"
        )));
    }
    Ok(spectrum)
}

/// Empirical Stieltjes transform `m(w) = N^{-1} Σ_j (λ_j - w)^{-1}`.
pub fn m_empirical(spec: &HermitizedSpectrum, w: SpectralPoint) -> Complex64 {
    let wc = w.w();
    let sum: Complex64 = spec
        .eigenvalues
        .iter()
        .map(|&l| (Complex64::new(l, 0.0) - wc).inv())
        .sum();
    sum / spec.n as f64
}

/// Green function `G(w) = V diag((λ_j - w)^{-1}) V^H` from a decomposition
/// with eigenvectors.
pub fn green_from_spectrum(spec: &HermitizedSpectrum, w: SpectralPoint) -> Result<Array2<Complex64>> {
    let v = spec
        .eigenvectors
        .as_ref()
        .ok_or_else(|| Error::Precondition("spectrum lacks eigenvectors".into()))?;
    let wc = w.w();
    let inv: Array1<Complex64> = spec
        .eigenvalues
        .iter()
        .map(|&l| (Complex64::new(l, 0.0) - wc).inv())
        .collect();
    // V * diag * V^H
    let mut scaled = v.clone();
    for (mut col, d) in scaled.axis_iter_mut(Axis(1)).zip(inv.iter()) {
        col.mapv_inplace(|e| e * d);
    }
    let vh = v.mapv(|e| e.conj()).reversed_axes();
    Ok(scaled.dot(&vh))
}

/// Rows/columns removed from `Y` when forming a minor. Original labels are
/// kept: entries of the minor resolvent indexed by a removed label are 0.
#[derive(Debug, Clone, Default)]
pub struct MinorSpec {
    /// Column indices removed.
    pub t: Vec<usize>,
    /// Row indices removed.
    pub u: Vec<usize>,
}

impl MinorSpec {
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.t.len() + self.u.len() > n / 2 {
            return Err(Error::Precondition(format!(
                "minor removes {} indices, more than N/2 = {}",
                self.t.len() + self.u.len(),
                n / 2
            )));
        }
        for &i in self.t.iter().chain(self.u.iter()) {
            if i >= n {
                return Err(Error::Precondition(format!("minor index {i} out of range")));
            }
        }
        Ok(())
    }
}

fn kept(n: usize, removed: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !removed.contains(i)).collect()
}

fn inv_shifted(h: &Array2<Complex64>, w: Complex64) -> Result<Array2<Complex64>> {
    let mut a = h.clone();
    let k = a.nrows();
    for i in 0..k {
        a[[i, i]] -= w;
    }
    a.inv()
        .map_err(|e| Error::Numerical(format!("resolvent solve failed: {e}")))
}

/// Minor Green functions `G^{(T,U)} = ((Y^{(T,U)})* Y^{(T,U)} - w)^{-1}` and
/// `𝒢^{(T,U)} = (Y^{(T,U)} (Y^{(T,U)})* - w)^{-1}`, embedded back into `N×N`
/// arrays under the original labels (removed labels give zero entries).
pub fn green_entries(
    x: &SampleMatrix,
    z: Complex64,
    w: SpectralPoint,
    minor: &MinorSpec,
) -> Result<(Array2<Complex64>, Array2<Complex64>)> {
    if w.eta <= 0.0 {
        return Err(Error::Precondition("green_entries requires eta > 0".into()));
    }
    minor.validate(x.n)?;
    let y = shift(x, z);
    let rows = kept(x.n, &minor.u);
    let cols = kept(x.n, &minor.t);
    let mut ym = Array2::zeros((rows.len(), cols.len()));
    for (ri, &r) in rows.iter().enumerate() {
        for (ci, &c) in cols.iter().enumerate() {
            ym[[ri, ci]] = y.entries[[r, c]];
        }
    }
    let ymh = ym.mapv(|e| e.conj()).reversed_axes();
    let g_small = inv_shifted(&ymh.dot(&ym), w.w())?;
    let gg_small = inv_shifted(&ym.dot(&ymh), w.w())?;

    let mut g = Array2::zeros((x.n, x.n));
    for (ai, &a) in cols.iter().enumerate() {
        for (bi, &b) in cols.iter().enumerate() {
            g[[a, b]] = g_small[[ai, bi]];
        }
    }
    let mut gg = Array2::zeros((x.n, x.n));
    for (ai, &a) in rows.iter().enumerate() {
        for (bi, &b) in rows.iter().enumerate() {
            gg[[a, b]] = gg_small[[ai, bi]];
        }
    }
    Ok((g, gg))
}

fn normalized_trace(m: &Array2<Complex64>, n: usize) -> Complex64 {
    (0..m.nrows()).map(|i| m[[i, i]]).sum::<Complex64>() / n as f64
}

/// Residuals and inequality margins for the exact resolvent identities.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    /// (a) column-removal formula `G^{(k,∅)}_{ij} = G_{ij} - G_{ik}G_{kj}/G_{kk}`.
    pub res_column_removal: f64,
    /// (b) rank-one row-removal formula for `G^{(∅,i)}`.
    pub res_row_removal: f64,
    /// (c) `Y G Y* = 1 + w 𝒢`.
    pub res_ward: f64,
    /// trace relation `m_G^{(T,U)} - m_𝒢^{(T,U)} = (|T|-|U|)/(N w)`.
    pub res_trace_relation: f64,
    /// (d) worst margin of `|m - m^{(T,U)}| ≤ (|U|+|T|)/(Nη)` (≤ 0 means holds).
    pub margin_minor_trace_bound: f64,
    /// (e) margin of `|Re m| ≤ 2√(Im m/η)`.
    pub margin_re_im: f64,
    /// (f) worst margin of `η |[G²]_{ii}| ≤ Im G_{ii}`.
    pub margin_g_squared: f64,
    /// scale used for relative comparisons (max |G| entry)
    pub scale: f64,
}

impl IdentityReport {
    pub fn max_residual(&self) -> f64 {
        self.res_column_removal
            .max(self.res_row_removal)
            .max(self.res_ward)
            .max(self.res_trace_relation)
    }

    pub fn inequalities_hold(&self, slack: f64) -> bool {
        self.margin_minor_trace_bound <= slack
            && self.margin_re_im <= slack
            && self.margin_g_squared <= slack
    }
}

/// Verify the exact resolvent/minor identities and deterministic
/// inequalities on one `(X, z, w)` instance. Dense all-pairs checks; intended
/// for `N ≤ 400`.
pub fn identity_suite(x: &SampleMatrix, z: Complex64, w: SpectralPoint) -> Result<IdentityReport> {
    if w.eta <= 0.0 {
        return Err(Error::Precondition("identity_suite requires eta > 0".into()));
    }
    if x.n > 400 {
        return Err(Error::Precondition(format!(
            "identity_suite is a dense check, N = {} > 400",
            x.n
        )));
    }
    let n = x.n;
    let y = shift(x, z);
    let (g, gg) = green_entries(x, z, w, &MinorSpec::default())?;
    let scale = g.iter().map(|e| e.norm()).fold(0.0, f64::max);

    // (a) column removal at k = 0 and k = n/2
    let mut res_column_removal: f64 = 0.0;
    for k in [0, n / 2] {
        let (gk, _) = green_entries(x, z, w, &MinorSpec { t: vec![k], u: vec![] })?;
        for i in 0..n {
            for j in 0..n {
                if i == k || j == k {
                    continue;
                }
                let rhs = g[[i, j]] - g[[i, k]] * g[[k, j]] / g[[k, k]];
                res_column_removal = res_column_removal.max((gk[[i, j]] - rhs).norm());
            }
        }
    }

    // (b) rank-one row removal at i = 0: G^{(∅,i)} = G + (G y_i*)(y_i G)/(1 - y_i G y_i*)
    let i0 = 0usize;
    let (gi, _) = green_entries(x, z, w, &MinorSpec { t: vec![], u: vec![i0] })?;
    let yi = y.entries.row(i0).to_owned();
    let yi_conj = yi.mapv(|e| e.conj());
    let gyi = g.dot(&yi_conj); // G y_i^*
    let yig = yi.dot(&g); // y_i G
    let denom = Complex64::new(1.0, 0.0) - yi.dot(&g.dot(&yi_conj));
    let mut res_row_removal: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let rhs = g[[a, b]] + gyi[a] * yig[b] / denom;
            res_row_removal = res_row_removal.max((gi[[a, b]] - rhs).norm());
        }
    }

    // (c) Y G Y* = 1 + w 𝒢
    let yh = y.entries.mapv(|e| e.conj()).reversed_axes();
    let lhs = y.entries.dot(&g).dot(&yh);
    let mut res_ward: f64 = 0.0;
    let wc = w.w();
    for a in 0..n {
        for b in 0..n {
            let rhs = if a == b { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }
                + wc * gg[[a, b]];
            res_ward = res_ward.max((lhs[[a, b]] - rhs).norm());
        }
    }

    // (d) + trace relation, over a few deterministic minors
    let m_full = normalized_trace(&g, n);
    let minors = [
        MinorSpec { t: vec![1], u: vec![] },
        MinorSpec { t: vec![], u: vec![2] },
        MinorSpec { t: vec![0, 3], u: vec![1] },
        MinorSpec { t: vec![n / 2], u: vec![n / 2] },
    ];
    let mut margin_minor_trace_bound = f64::NEG_INFINITY;
    let mut res_trace_relation: f64 = 0.0;
    for minor in &minors {
        let (gm, ggm) = green_entries(x, z, w, minor)?;
        let mg = normalized_trace(&gm, n);
        let mgg = normalized_trace(&ggm, n);
        // removing |U| rows and |T| columns leaves |U|-|T| extra zero
        // eigenvalues in (Y^{(T,U)})* Y^{(T,U)} relative to the other product
        let offset = Complex64::new(minor.t.len() as f64 - minor.u.len() as f64, 0.0)
            / (n as f64 * wc);
        res_trace_relation = res_trace_relation.max((mg - mgg - offset).norm());
        let bound = (minor.u.len() + minor.t.len()) as f64 / (n as f64 * w.eta);
        margin_minor_trace_bound = margin_minor_trace_bound
            .max((m_full - mg).norm() - bound)
            .max((m_full - mgg - offset).norm() - bound);
    }

    // (e) |Re m| ≤ 2 √(Im m / η)
    let margin_re_im = m_full.re.abs() - 2.0 * (m_full.im / w.eta).sqrt();

    // (f) η |[G²]_{ii}| ≤ Im G_{ii}
    let g2 = g.dot(&g);
    let mut margin_g_squared = f64::NEG_INFINITY;
    for i in 0..n {
        margin_g_squared = margin_g_squared.max(w.eta * g2[[i, i]].norm() - g[[i, i]].im);
    }

    Ok(IdentityReport {
        res_column_removal,
        res_row_removal,
        res_ward,
        res_trace_relation,
        margin_minor_trace_bound,
        margin_re_im,
        margin_g_squared,
        scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{sample_matrix, EnsembleKind, EnsembleSpec};
    use ndarray::Array2;

    fn zero_matrix(n: usize) -> SampleMatrix {
        SampleMatrix { n, entries: Array2::zeros((n, n)), is_real: true }
    }

    #[test]
    fn hermitize_zero_matrix_unit_shift() {
        let x = zero_matrix(8);
        let spec = hermitize(&x, Complex64::new(1.0, 0.0), false).unwrap();
        for &l in &spec.eigenvalues {
            assert!((l - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hermitize_diagonal_case() {
        let n = 5;
        let mut x = zero_matrix(n);
        let diag = [0.5, -1.25, 2.0, 0.0, 3.5];
        for (i, &d) in diag.iter().enumerate() {
            x.entries[[i, i]] = Complex64::new(d, 0.0);
        }
        let spec = hermitize(&x, Complex64::new(0.0, 0.0), false).unwrap();
        let mut expect: Vec<f64> = diag.iter().map(|d| d * d).collect();
        expect.sort_by(f64::total_cmp);
        for (a, b) in spec.eigenvalues.iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn yy_star_and_y_star_y_share_spectrum() {
        let spec = EnsembleSpec::new(EnsembleKind::GinibreComplex, 24, 5).unwrap();
        let x = sample_matrix(&spec);
        let z = Complex64::new(0.4, -0.3);
        let herm = hermitize(&x, z, false).unwrap();
        // eigenvalues of Y Y*: hermitize the conjugate-transposed matrix
        let y = shift(&x, z);
        let yh = SampleMatrix {
            n: x.n,
            entries: y.entries.mapv(|e| e.conj()).reversed_axes().to_owned(),
            is_real: false,
        };
        let herm2 = hermitize(&yh, Complex64::new(0.0, 0.0), false).unwrap();
        for (a, b) in herm.eigenvalues.iter().zip(herm2.eigenvalues.iter()) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn m_empirical_constant_spectrum() {
        let spec = HermitizedSpectrum {
            z: Complex64::new(0.0, 0.0),
            n: 4,
            eigenvalues: vec![1.0; 4],
            eigenvectors: None,
            clamped: 0,
        };
        let m = m_empirical(&spec, SpectralPoint::new(1.0, 1.0));
        assert!((m - Complex64::new(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn m_empirical_positive_imaginary() {
        let spec = EnsembleSpec::new(EnsembleKind::Uniform, 32, 3).unwrap();
        let x = sample_matrix(&spec);
        let herm = hermitize(&x, Complex64::new(0.7, 0.1), false).unwrap();
        for eta in [1e-3, 0.1, 2.0] {
            let m = m_empirical(&herm, SpectralPoint::new(1.0, eta));
            assert!(m.im > 0.0);
        }
    }

    #[test]
    fn eta_im_m_monotone_in_eta() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let spec = HermitizedSpectrum {
                z: Complex64::new(0.0, 0.0),
                n: 12,
                eigenvalues: (0..12).map(|_| rng.gen_range(0.0..5.0)).collect(),
                eigenvectors: None,
                clamped: 0,
            };
            let e = rng.gen_range(0.0..5.0);
            let mut last = 0.0;
            for k in 1..=20 {
                let eta = 0.05 * k as f64;
                let v = eta * m_empirical(&spec, SpectralPoint::new(e, eta)).im;
                assert!(v >= last - 1e-14);
                last = v;
            }
        }
    }

    #[test]
    fn empty_minor_trace_is_m_empirical() {
        let spec = EnsembleSpec::new(EnsembleKind::GinibreReal, 20, 1).unwrap();
        let x = sample_matrix(&spec);
        let z = Complex64::new(0.5, 0.0);
        let w = SpectralPoint::new(1.0, 0.1);
        let (g, _) = green_entries(&x, z, w, &MinorSpec::default()).unwrap();
        let herm = hermitize(&x, z, false).unwrap();
        let tr = normalized_trace(&g, x.n);
        assert!((tr - m_empirical(&herm, w)).norm() < 1e-12);
    }

    #[test]
    fn trace_relation_offsets() {
        let spec = EnsembleSpec::new(EnsembleKind::GinibreComplex, 24, 9).unwrap();
        let x = sample_matrix(&spec);
        let z = Complex64::new(0.3, 0.2);
        let w = SpectralPoint::new(0.8, 0.2);
        // |T| = |U|: traces agree
        let (g, gg) =
            green_entries(&x, z, w, &MinorSpec { t: vec![1], u: vec![3] }).unwrap();
        let d = (normalized_trace(&g, x.n) - normalized_trace(&gg, x.n)).norm();
        assert!(d < 1e-10, "{d}");
        // |U| = 1, |T| = 0: offset -1/(N w)
        let (g, gg) = green_entries(&x, z, w, &MinorSpec { t: vec![], u: vec![2] }).unwrap();
        let offset = Complex64::new(-1.0, 0.0) / (x.n as f64 * w.w());
        let d = (normalized_trace(&g, x.n) - normalized_trace(&gg, x.n) - offset).norm();
        assert!(d < 1e-10, "{d}");
    }

    #[test]
    fn identity_suite_on_random_instance() {
        let spec = EnsembleSpec::new(EnsembleKind::GinibreReal, 50, 7).unwrap();
        let x = sample_matrix(&spec);
        let rep =
            identity_suite(&x, Complex64::new(0.5, 0.0), SpectralPoint::new(1.0, 0.1)).unwrap();
        assert!(rep.max_residual() <= 1e-10 * rep.scale.max(1.0), "{rep:?}");
        assert!(rep.inequalities_hold(1e-12), "{rep:?}");
    }

    #[test]
    fn green_from_spectrum_matches_direct_inverse() {
        let spec = EnsembleSpec::new(EnsembleKind::GinibreComplex, 16, 4).unwrap();
        let x = sample_matrix(&spec);
        let z = Complex64::new(0.2, 0.1);
        let w = SpectralPoint::new(0.5, 0.05);
        let herm = hermitize(&x, z, true).unwrap();
        let g1 = green_from_spectrum(&herm, w).unwrap();
        let (g2, _) = green_entries(&x, z, w, &MinorSpec::default()).unwrap();
        let mut max = 0.0f64;
        for (a, b) in g1.iter().zip(g2.iter()) {
            max = max.max((a - b).norm());
        }
        assert!(max < 1e-9, "max deviation {max}");
    }
}
