//! The canonical smooth compactly supported test function: a radial bump
//! with closed-form Laplacian.

use crate::limiting::quad;
use crate::{Complex64, Error, Result};
use std::f64::consts::PI;

/// `b(r) = exp(-1/(1-r²))` for `r < 1`, `0` otherwise.
fn bump(r: f64) -> f64 {
    if r.abs() >= 1.0 {
        return 0.0;
    }
    (-1.0 / (1.0 - r * r)).exp()
}

/// 2-D Laplacian `b''(r) + b'(r)/r` in closed form.
fn bump_laplacian(r: f64) -> f64 {
    let r = r.abs();
    if r >= 1.0 {
        return 0.0;
    }
    let s = 1.0 - r * r;
    let t = r * r;
    // b'' + b'/r = b · 4 (t² + t − 1) / s⁴
    bump(r) * 4.0 * (t * t + t - 1.0) / (s * s * s * s)
}

/// A radial bump `f(z) = b(|z - z0| / R)` together with the rescaling
/// exponent `a` used to form the delta-like family
/// `f_{z0}(z) = N^{2a} f(N^a (z - z0))`.
#[derive(Debug, Clone)]
pub struct TestFunction {
    pub z0: Complex64,
    pub a: f64,
    pub support_radius: f64,
    laplacian_l1: f64,
}

impl TestFunction {
    pub fn new(z0: Complex64, a: f64, support_radius: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&a) || a == 0.0 {
            return Err(Error::Precondition(format!(
                "rescale exponent must lie in (0, 1/2], got {a}"
            )));
        }
        if support_radius <= 0.0 {
            return Err(Error::Precondition("support radius must be positive".into()));
        }
        // ‖Δf‖_{L¹} is invariant under the radius rescale in 2-D, so it is
        // computed once for the unit bump. The sign of Δb flips at
        // t = r² = (√5 − 1)/2; integrate the two smooth pieces separately.
        let r_flip = ((5.0f64.sqrt() - 1.0) / 2.0).sqrt();
        let piece = |lo: f64, hi: f64| {
            quad::integrate(&|r: f64| 2.0 * PI * r * bump_laplacian(r), lo, hi, 1e-12)
                .ok_or_else(|| Error::Numerical("bump Laplacian quadrature failed".into()))
        };
        let laplacian_l1 = piece(0.0, r_flip)?.abs() + piece(r_flip, 1.0)?.abs();
        Ok(Self { z0, a, support_radius, laplacian_l1 })
    }

    /// `‖Δf‖_{L¹}` of the unrescaled bump (radius-independent in 2-D).
    pub fn laplacian_l1(&self) -> f64 {
        self.laplacian_l1
    }

    /// Unrescaled value at distance `r` from the center.
    pub fn value_base(&self, r: f64) -> f64 {
        bump(r / self.support_radius)
    }

    /// Unrescaled 2-D Laplacian at distance `r` from the center.
    pub fn laplacian_base(&self, r: f64) -> f64 {
        bump_laplacian(r / self.support_radius) / (self.support_radius * self.support_radius)
    }

    /// `f_{z0}(z) = N^{2a} f(N^a (z - z0))`.
    pub fn rescaled_value(&self, n: usize, z: Complex64) -> f64 {
        let na = (n as f64).powf(self.a);
        na * na * self.value_base(na * (z - self.z0).norm())
    }

    /// Radius of the support of `f_{z0}` around `z0`.
    pub fn rescaled_radius(&self, n: usize) -> f64 {
        self.support_radius / (n as f64).powf(self.a)
    }
}
