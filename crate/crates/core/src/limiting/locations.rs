//! Density curves and classical eigenvalue locations `γ_j`.

use super::{rho_c_with_ctx, rho_integral, ShiftContext};
use crate::{Complex64, Error, Result};

/// Sampled density values along sorted abscissae.
#[derive(Debug, Clone)]
pub struct DensityCurve {
    pub z: Complex64,
    pub xs: Vec<f64>,
    pub rho: Vec<f64>,
}

/// Evaluate `rho_c(x, z)` on the given abscissae (must be sorted ascending).
pub fn sample_density(z: Complex64, xs: Vec<f64>) -> DensityCurve {
    let ctx = ShiftContext::new(z);
    let rho = xs.iter().map(|&x| rho_c_with_ctx(x, &ctx)).collect();
    DensityCurve { z, xs, rho }
}

/// The deterministic quantiles `γ_j` of `rho_c` at levels `j/N`.
#[derive(Debug, Clone)]
pub struct ClassicalLocations {
    pub n: usize,
    pub z: Complex64,
    /// `gamma[j-1]` solves `∫_0^{γ_j} rho_c = j/N`; nondecreasing.
    pub gamma: Vec<f64>,
}

const QUAD_TOL: f64 = 1e-10;

/// Cumulative distribution of `rho_c`, with the left half of the support
/// integrated once and cached.
struct Cdf<'a> {
    ctx: &'a ShiftContext,
    mid: f64,
    left_mass: f64,
}

impl<'a> Cdf<'a> {
    fn new(ctx: &'a ShiftContext) -> Result<Self> {
        let mid = 0.5 * (ctx.support_min() + ctx.lambda_plus);
        let left_mass = rho_integral(ctx, ctx.support_min(), mid, QUAD_TOL)
            .ok_or_else(|| Error::Numerical("density quadrature failed to converge".into()))?;
        Ok(Cdf { ctx, mid, left_mass })
    }

    fn eval(&self, y: f64) -> Result<f64> {
        let v = if y <= self.mid {
            rho_integral(self.ctx, self.ctx.support_min(), y, QUAD_TOL)
        } else {
            rho_integral(self.ctx, self.mid, y, QUAD_TOL).map(|r| self.left_mass + r)
        };
        v.ok_or_else(|| Error::Numerical("density quadrature failed to converge".into()))
    }
}

/// Compute all `γ_j`, `j = 1..N`, by monotone bisection on the cached CDF.
pub fn classical_locations(n: usize, z: Complex64) -> Result<ClassicalLocations> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "classical_locations requires N >= 2, got {n}"
        )));
    }
    let ctx = ShiftContext::new(z);
    let cdf = Cdf::new(&ctx)?;
    let total = cdf.eval(ctx.lambda_plus)?;
    let x_min = ctx.support_min();
    let width_tol = 1e-12 * ctx.lambda_plus;

    let mut gamma = Vec::with_capacity(n);
    let mut lo_prev = x_min;
    for j in 1..=n {
        let target = j as f64 / n as f64;
        if target >= total {
            gamma.push(ctx.lambda_plus);
            continue;
        }
        let (mut lo, mut hi) = (lo_prev, ctx.lambda_plus);
        while hi - lo > width_tol {
            let m = 0.5 * (lo + hi);
            if cdf.eval(m)? < target {
                lo = m;
            } else {
                hi = m;
            }
        }
        let g = 0.5 * (lo + hi);
        gamma.push(g);
        lo_prev = g;
    }
    Ok(ClassicalLocations { n, z, gamma })
}

/// Trapezoid mass of a density curve over its abscissae.
pub fn trapezoid_mass(curve: &DensityCurve) -> f64 {
    let mut mass = 0.0;
    for k in 1..curve.xs.len() {
        let (x0, x1) = (curve.xs[k - 1], curve.xs[k]);
        let (r0, r1) = (curve.rho[k - 1], curve.rho[k]);
        if r0.is_finite() && r1.is_finite() {
            mass += 0.5 * (r0 + r1) * (x1 - x0);
        }
    }
    mass
}
