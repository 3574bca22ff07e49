//! Eigenvalues of the non-Hermitian matrix `X` itself.

use crate::ensembles::SampleMatrix;
use crate::{Complex64, Error, Result};
use ndarray_linalg::EigVals;

/// The `N` complex eigenvalues of `X`, unordered.
#[derive(Debug, Clone)]
pub struct ComplexSpectrum {
    pub n: usize,
    pub mu: Vec<Complex64>,
}

/// Dense nonsymmetric eigensolve, verified per instance via the trace
/// identity and the Schur inequality `Σ|μ_j|² ≤ Σ|X_{ij}|²`.
pub fn nonhermitian_spectrum(x: &SampleMatrix) -> Result<ComplexSpectrum> {
    let vals = x
        .entries
        .eigvals()
        .map_err(|e| Error::Numerical(format!("eigensolver failed: {e}")))?;
    let mu: Vec<Complex64> = vals.to_vec();
    let sum: Complex64 = mu.iter().sum();
    let trace = x.trace();
    let scale = trace.norm().max(1.0);
    if (sum - trace).norm() > 1e-8 * scale {
        return Err(Error::Numerical(format!(
            "eigenvalue sum {sum} disagrees with trace {trace}"
        )));
    }
    let moment: f64 = mu.iter().map(|m| m.norm_sqr()).sum();
    let fro = x.frobenius_sq();
    if moment > fro * (1.0 + 1e-10) + 1e-10 {
        return Err(Error::Numerical(format!(
            "Schur inequality violated: Σ|μ|² = {moment} > ‖X‖_F² = {fro}"
        )));
    }
    Ok(ComplexSpectrum { n: x.n, mu })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{sample_matrix, EnsembleKind, EnsembleSpec};
    use ndarray::Array2;

    #[test]
    fn diagonal_matrix_eigenvalues() {
        let n = 4;
        let diag = [
            Complex64::new(1.0, 0.5),
            Complex64::new(-2.0, 0.0),
            Complex64::new(0.0, 3.0),
            Complex64::new(0.25, -0.25),
        ];
        let mut entries = Array2::zeros((n, n));
        for (i, &d) in diag.iter().enumerate() {
            entries[[i, i]] = d;
        }
        let x = SampleMatrix { n, entries, is_real: false };
        let spec = nonhermitian_spectrum(&x).unwrap();
        // multiset match: pair each expected value with a distinct computed one
        let mut remaining = spec.mu.clone();
        for d in diag {
            let (k, _) = remaining
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 - d).norm().total_cmp(&(b.1 - d).norm()))
                .unwrap();
            assert!((remaining[k] - d).norm() < 1e-10);
            remaining.remove(k);
        }
    }

    #[test]
    fn trace_and_schur_on_random_instances() {
        for (kind, seed) in [
            (EnsembleKind::GinibreComplex, 1),
            (EnsembleKind::GinibreReal, 2),
            (EnsembleKind::Rademacher, 3),
        ] {
            let spec = EnsembleSpec::new(kind, 80, seed).unwrap();
            let x = sample_matrix(&spec);
            let s = nonhermitian_spectrum(&x).unwrap();
            assert_eq!(s.mu.len(), 80);
            let sum: Complex64 = s.mu.iter().sum();
            assert!((sum - x.trace()).norm() < 1e-8 * x.trace().norm().max(1.0));
            let moment: f64 = s.mu.iter().map(|m| m.norm_sqr()).sum();
            assert!(moment <= x.frobenius_sq() * (1.0 + 1e-10) + 1e-10);
        }
    }
}
