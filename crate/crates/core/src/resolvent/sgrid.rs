//! The spectral grid `S(α)`: energies in `[max(λ_-/5, 0), 5λ_+]` with, for
//! each energy, imaginary parts log-spaced from the self-consistent floor
//! `φ^α N^{-1} |m_c|^{-1}` up to 10, where `φ = (log N)^{log log N}`.

use crate::limiting::{mc_solve, ShiftContext, SpectralPoint};
use crate::{Complex64, Error, Result};

/// `φ = (log N)^{log log N}`.
pub fn phi_factor(n: usize) -> f64 {
    let ln = (n as f64).ln();
    ln.powf(ln.ln())
}

#[derive(Debug, Clone)]
pub struct SGridColumn {
    pub e: f64,
    /// Log-spaced, ascending, all satisfying the `S(α)` membership bounds.
    pub etas: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SGrid {
    pub z: Complex64,
    pub n: usize,
    pub alpha_exponent: f64,
    pub phi: f64,
    pub columns: Vec<SGridColumn>,
}

impl SGrid {
    /// Direct re-check of the two `S(α)` membership inequalities at `(E, η)`.
    pub fn is_member(&self, e: f64, eta: f64) -> Result<bool> {
        let ctx = ShiftContext::new(self.z);
        let e_lo = (ctx.lambda_minus / 5.0).max(0.0);
        let e_hi = 5.0 * ctx.lambda_plus;
        if e < e_lo || e > e_hi || eta > 10.0 {
            return Ok(false);
        }
        let mc = mc_solve(SpectralPoint::new(e, eta), self.z)?.mc;
        Ok(eta >= self.phi.powf(self.alpha_exponent) / (self.n as f64 * mc.norm()))
    }

    pub fn point_count(&self) -> usize {
        self.columns.iter().map(|c| c.etas.len()).sum()
    }
}

/// Build the grid: `nE` linear energies, `nEta` log-spaced η per energy.
///
/// The η floor solves `η = φ^α / (N |m_c(E + iη)|)` by fixed-point iteration
/// started from `φ^α / N`. Energies whose floor exceeds 10 are skipped (the
/// η interval of `S(α)` is empty there).
pub fn build_sgrid(
    z: Complex64,
    n: usize,
    alpha_exponent: f64,
    n_e: usize,
    n_eta: usize,
) -> Result<SGrid> {
    if n_e < 2 || n_eta < 2 {
        return Err(Error::Precondition("build_sgrid needs nE, nEta >= 2".into()));
    }
    let ctx = ShiftContext::new(z);
    let phi = phi_factor(n);
    let phia = phi.powf(alpha_exponent);
    let e_lo = (ctx.lambda_minus / 5.0).max(0.0);
    let e_hi = 5.0 * ctx.lambda_plus;

    let mut columns = Vec::with_capacity(n_e);
    for k in 0..n_e {
        let mut e = e_lo + (e_hi - e_lo) * k as f64 / (n_e - 1) as f64;
        if e == 0.0 {
            // m_c(iη) is finite but the energy axis starts at the support
            // edge; nudge off the exact origin so the floor fixed point is
            // well defined.
            e = 1e-12;
        }
        let mut floor = phia / n as f64;
        for _ in 0..64 {
            let mc = mc_solve(SpectralPoint::new(e, floor.min(10.0)), z)?.mc;
            let next = phia / (n as f64 * mc.norm());
            if (next - floor).abs() <= 1e-12 * floor {
                floor = next;
                break;
            }
            floor = next;
        }
        floor *= 1.0 + 1e-9; // keep the lowest point strictly inside S(α)
        if floor >= 10.0 {
            continue;
        }
        let ratio = (10.0 / floor).ln();
        let etas: Vec<f64> = (0..n_eta)
            .map(|j| (floor * (ratio * j as f64 / (n_eta - 1) as f64).exp()).min(10.0))
            .collect();
        columns.push(SGridColumn { e, etas });
    }
    Ok(SGrid { z, n, alpha_exponent, phi, columns })
}
