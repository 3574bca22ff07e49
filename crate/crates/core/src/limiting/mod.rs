//! Deterministic limiting-theory computations for the Hermitized family
//! `Y_z* Y_z`: the Stieltjes transform `m_c`, the density `rho_c`, its
//! support edges, classical eigenvalue locations, regime asymptotics, the
//! log-potential, and the Ginibre one-point intensity.

mod ginibre;
mod locations;
mod mc;
mod potential;
pub mod quad;
mod regime;

pub use ginibre::{ginibre_intensity, ginibre_intensity_radial_mass};
pub use locations::{
    classical_locations, sample_density, trapezoid_mass, ClassicalLocations, DensityCurve,
};
pub use mc::{cubic_residual, mc_explicit_real_axis, mc_solve, rho_c, rho_c_with_ctx, BranchNote, McValue};
pub use potential::{log_potential, log_potential_laplacian};
pub use regime::{regime_check, Regime, RegimeRatio, RegimeReport};

use crate::Complex64;

/// Per-`z` derived constants: `|z|^2`, `α = √(1+8|z|^2)`, and the spectral
/// edges `λ_± = (α±3)^3 / (8(α±1))`.
#[derive(Debug, Clone, Copy)]
pub struct ShiftContext {
    pub z: Complex64,
    pub zsq: f64,
    pub alpha: f64,
    /// `-inf` sentinel at `z = 0` (where `α = 1` and the formula divides by 0).
    pub lambda_minus: f64,
    pub lambda_plus: f64,
    pub inside_disk: bool,
}

impl ShiftContext {
    pub fn new(z: Complex64) -> Self {
        let zsq = z.norm_sqr();
        let alpha = (1.0 + 8.0 * zsq).sqrt();
        let lambda_plus = (alpha + 3.0).powi(3) / (8.0 * (alpha + 1.0));
        let lambda_minus = if alpha == 1.0 {
            f64::NEG_INFINITY
        } else {
            (alpha - 3.0).powi(3) / (8.0 * (alpha - 1.0))
        };
        ShiftContext {
            z,
            zsq,
            alpha,
            lambda_minus,
            lambda_plus,
            inside_disk: zsq < 1.0,
        }
    }

    /// Left endpoint of the support of `rho_c`: `max(0, λ_-)`.
    pub fn support_min(&self) -> f64 {
        self.lambda_minus.max(0.0)
    }
}

/// Construct the per-`z` constants.
pub fn make_shift_context(z: Complex64) -> ShiftContext {
    ShiftContext::new(z)
}

/// A point `w = E + iη` of the upper half plane (or its boundary).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub e: f64,
    pub eta: f64,
}

impl SpectralPoint {
    pub fn new(e: f64, eta: f64) -> Self {
        assert!(eta >= 0.0, "SpectralPoint requires eta >= 0");
        SpectralPoint { e, eta }
    }

    pub fn w(&self) -> Complex64 {
        Complex64::new(self.e, self.eta)
    }
}

/// `∫_a^b rho_c(x, z) dx` with both edge singularities substituted away
/// (`x = x_min + t^2` on the left half of the support, `x = λ_+ - s^2` on the
/// right half). `None` on quadrature nonconvergence.
pub fn rho_integral(ctx: &ShiftContext, a: f64, b: f64, tol: f64) -> Option<f64> {
    let lo = ctx.support_min();
    let hi = ctx.lambda_plus;
    let a = a.max(lo);
    let b = b.min(hi);
    if b <= a {
        return Some(0.0);
    }
    let mid = 0.5 * (lo + hi);
    let mut total = 0.0;
    if a < mid {
        let upper = b.min(mid);
        let t0 = (a - lo).sqrt();
        let t1 = (upper - lo).sqrt();
        let f = |t: f64| 2.0 * t * rho_c_with_ctx(lo + t * t, ctx);
        total += quad::integrate(&f, t0, t1, tol)?;
    }
    if b > mid {
        let lower = a.max(mid);
        let s0 = (hi - b).sqrt();
        let s1 = (hi - lower).sqrt();
        let f = |s: f64| 2.0 * s * rho_c_with_ctx(hi - s * s, ctx);
        total += quad::integrate(&f, s0, s1, tol)?;
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_context_at_origin() {
        let ctx = make_shift_context(Complex64::new(0.0, 0.0));
        assert_eq!(ctx.alpha, 1.0);
        assert_eq!(ctx.lambda_plus, 4.0);
        assert!(ctx.lambda_minus.is_infinite() && ctx.lambda_minus < 0.0);
    }

    #[test]
    fn shift_context_on_circle() {
        let ctx = make_shift_context(Complex64::new(0.0, 1.0));
        assert!((ctx.alpha - 3.0).abs() < 1e-15);
        assert!((ctx.lambda_plus - 27.0 / 4.0).abs() < 1e-12);
        assert!(ctx.lambda_minus.abs() < 1e-12);
    }

    #[test]
    fn edges_match_density_support_by_bisection() {
        // |z| = 0.5: locate the right support endpoint of rho_c by bisection
        // on rho_c > 1e-12 and compare against the λ_+ formula.
        let z = Complex64::new(0.5, 0.0);
        let ctx = make_shift_context(z);
        assert!((ctx.alpha - 3.0f64.sqrt()).abs() < 1e-15);
        let (mut lo, mut hi) = (1.0, ctx.lambda_plus + 2.0);
        for _ in 0..80 {
            let m = 0.5 * (lo + hi);
            if rho_c(m, z) > 1e-12 {
                lo = m;
            } else {
                hi = m;
            }
        }
        assert!(
            (lo - ctx.lambda_plus).abs() < 1e-6,
            "bisected edge {lo} vs formula {}",
            ctx.lambda_plus
        );
    }

    #[test]
    fn density_normalization_across_z() {
        for zabs in [0.0, 0.3, 0.7, 0.95, 1.05, 1.5, 2.0] {
            let ctx = make_shift_context(Complex64::new(zabs, 0.0));
            let mass = rho_integral(&ctx, ctx.support_min(), ctx.lambda_plus, 1e-9).unwrap();
            assert!((mass - 1.0).abs() < 1e-6, "|z|={zabs}: mass {mass}");
        }
    }

    #[test]
    fn lambda_minus_sign_tracks_disk() {
        for (zabs, sign) in [(0.5, -1.0), (1.5, 1.0)] {
            let ctx = make_shift_context(Complex64::new(0.0, zabs));
            assert_eq!(ctx.lambda_minus.signum(), sign);
            assert!(ctx.lambda_minus < ctx.lambda_plus);
        }
    }
}
