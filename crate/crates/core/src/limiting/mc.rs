//! The deterministic Stieltjes transform `m_c(w, z)` and the density `rho_c`.
//!
//! `m_c` is the unique solution with positive imaginary part of
//! `1/m = -w(1+m) + |z|^2/(1+m)`, equivalently the cubic
//! `P_{w,z}(m) = w m (1+m)^2 + m (1 - |z|^2) + 1 = 0`.
//! On the real axis the limit `eta -> 0+` has a closed form in terms of the
//! signed cube roots of `A_±(E, z)`; the imaginary part of that limit is
//! `pi * rho_c(E, z)`.

use super::{ShiftContext, SpectralPoint};
use crate::{Complex64, Error, Result};
use ndarray::Array2;
use ndarray_linalg::Eig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchNote {
    UpperHalf,
    RealAxisLimit,
}

/// A solved value of `m_c` with its residual diagnostic.
#[derive(Debug, Clone, Copy)]
pub struct McValue {
    pub w: SpectralPoint,
    pub z: Complex64,
    pub mc: Complex64,
    /// `|P_{w,z}(mc)|`
    pub residual: f64,
    pub branch_note: BranchNote,
}

/// `P_{w,z}(m) = w m (1+m)^2 + m (1-|z|^2) + 1`.
pub fn cubic_residual(m: Complex64, w: Complex64, zsq: f64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    w * m * (one + m) * (one + m) + m * (1.0 - zsq) + one
}

fn cubic_derivative(m: Complex64, w: Complex64, zsq: f64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    w * ((one + m) * (one + m) + 2.0 * m * (one + m)) + (1.0 - zsq)
}

fn newton_polish(mut m: Complex64, w: Complex64, zsq: f64) -> Complex64 {
    for _ in 0..2 {
        let p = cubic_residual(m, w, zsq);
        let dp = cubic_derivative(m, w, zsq);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        m -= step;
    }
    m
}

/// All three roots of the cubic via a companion-matrix eigensolve, each
/// polished by Newton steps.
fn cubic_roots(w: Complex64, zsq: f64) -> Vec<Complex64> {
    // monic form: m^3 + 2 m^2 + ((w + 1 - zsq)/w) m + 1/w
    let c2 = Complex64::new(2.0, 0.0);
    let c1 = (w + (1.0 - zsq)) / w;
    let c0 = Complex64::new(1.0, 0.0) / w;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let companion = Array2::from_shape_vec(
        (3, 3),
        vec![zero, zero, -c0, one, zero, -c1, zero, one, -c2],
    )
    .unwrap();
    let (eigs, _) = companion.eig().expect("3x3 eigensolve cannot fail");
    eigs.iter().map(|&m| newton_polish(m, w, zsq)).collect()
}

/// Solve for `m_c(w, z)` at `w` with `eta > 0`, selecting the unique root in
/// the upper half plane.
pub fn mc_solve(w: SpectralPoint, z: Complex64) -> Result<McValue> {
    if w.eta <= 0.0 {
        return Err(Error::Precondition(format!(
            "mc_solve requires eta > 0, got {}",
            w.eta
        )));
    }
    let zsq = z.norm_sqr();
    let wc = w.w();
    let mc = if zsq == 0.0 {
        // The cubic factors as (1+m)(w m^2 + w m + 1); the Stieltjes branch
        // solves the quadratic.
        let disc = (Complex64::new(1.0, 0.0) - 4.0 / wc).sqrt();
        let r1 = (-Complex64::new(1.0, 0.0) + disc) / 2.0;
        let r2 = (-Complex64::new(1.0, 0.0) - disc) / 2.0;
        if r1.im > r2.im {
            r1
        } else {
            r2
        }
    } else {
        let roots = cubic_roots(wc, zsq);
        let upper: Vec<Complex64> = roots.iter().copied().filter(|r| r.im > 0.0).collect();
        match upper.len() {
            0 => {
                return Err(Error::Numerical(format!(
                    "no cubic root with Im > 0 at w={wc}, z={z}"
                )))
            }
            1 => upper[0],
            // Theory gives a unique upper-half-plane root for eta > 0; ties
            // can only come from a real root pushed across the axis by
            // round-off. Take the clearly-imaginary one.
            _ => upper
                .into_iter()
                .max_by(|a, b| a.im.total_cmp(&b.im))
                .unwrap(),
        }
    };
    if mc.im <= 0.0 {
        return Err(Error::Numerical(format!(
            "selected root has Im <= 0 at w={wc}, z={z}"
        )));
    }
    let residual = cubic_residual(mc, wc, zsq).norm();
    Ok(McValue {
        w,
        z,
        mc,
        residual,
        branch_note: BranchNote::UpperHalf,
    })
}

/// `sgn(x) |x|^{1/3}`.
fn cbrt_signed(x: f64) -> f64 {
    x.cbrt()
}

/// `A_±(E, z) = 2E^{3/2} - 9E^{1/2}(1+2|z|^2) ± 6√3 |z| √(((λ_+-E)(E-λ_-))_+)`.
fn a_pm(e: f64, ctx: &ShiftContext) -> (f64, f64) {
    let sqrt_e = e.sqrt();
    let base = 2.0 * e * sqrt_e - 9.0 * sqrt_e * (1.0 + 2.0 * ctx.zsq);
    let prod = ((ctx.lambda_plus - e) * (e - ctx.lambda_minus)).max(0.0);
    let t = 6.0 * 3.0f64.sqrt() * ctx.zsq.sqrt() * prod.sqrt();
    (base + t, base - t)
}

/// The real-axis limit `lim_{eta->0+} m_c(E + i eta, z)` via the explicit
/// cube-root formula. Requires `E >= 0`.
pub fn mc_explicit_real_axis(e: f64, z: Complex64) -> Result<McValue> {
    if e < 0.0 {
        return Err(Error::Precondition(format!(
            "explicit m_c formula requires E >= 0, got {e}"
        )));
    }
    let zsq = z.norm_sqr();
    let w = SpectralPoint::new(e, 0.0);
    let mc = if zsq == 0.0 {
        // Quadratic branch: w m^2 + w m + 1 = 0 as eta -> 0+.
        if e == 0.0 {
            return Err(Error::Precondition(
                "m_c diverges at E = 0 for z = 0".into(),
            ));
        }
        let disc = 1.0 - 4.0 / e;
        if disc < 0.0 {
            Complex64::new(-0.5, 0.5 * (-disc).sqrt())
        } else {
            Complex64::new(0.5 * (-1.0 + disc.sqrt()), 0.0)
        }
    } else {
        if e == 0.0 {
            return Err(Error::Precondition(
                "explicit m_c formula is singular at E = 0".into(),
            ));
        }
        let ctx = ShiftContext::new(z);
        let (ap, am) = a_pm(e, &ctx);
        let s3 = 3.0f64.sqrt();
        let cp = Complex64::new(0.5, -0.5 * s3); // (1 - √3 i)/2
        let cm = Complex64::new(0.5, 0.5 * s3); // (1 + √3 i)/2
        let pref = 1.0 / (2.0f64.cbrt() * 3.0 * e.sqrt());
        let sum = cp * cbrt_signed(ap) + cm * cbrt_signed(am);
        Complex64::new(-2.0 / 3.0, 0.0) - pref * sum
    };
    let residual = cubic_residual(mc, w.w(), zsq).norm();
    Ok(McValue {
        w,
        z,
        mc,
        residual,
        branch_note: BranchNote::RealAxisLimit,
    })
}

/// The limiting spectral density of `Y_z* Y_z` at `x`.
///
/// Vanishes exactly outside `[max(0, λ_-), λ_+]`; for `|z| < 1` it diverges
/// like `x^{-1/2}` at the origin, reported as `+inf` at `x = 0`.
pub fn rho_c(x: f64, z: Complex64) -> f64 {
    let ctx = ShiftContext::new(z);
    rho_c_with_ctx(x, &ctx)
}

/// Same as [`rho_c`] with a precomputed [`ShiftContext`].
pub fn rho_c_with_ctx(x: f64, ctx: &ShiftContext) -> f64 {
    let lo = ctx.support_min();
    if x < lo || x > ctx.lambda_plus {
        return 0.0;
    }
    if ctx.zsq == 0.0 {
        // Marchenko–Pastur square case: (1/2π) √((4-x)/x).
        if x == 0.0 {
            return f64::INFINITY;
        }
        if x >= 4.0 {
            return 0.0;
        }
        return ((4.0 - x) / x).sqrt() / (2.0 * std::f64::consts::PI);
    }
    if x == 0.0 {
        return if ctx.lambda_minus < 0.0 { f64::INFINITY } else { 0.0 };
    }
    let (ap, am) = a_pm(x, ctx);
    let v = (cbrt_signed(ap) - cbrt_signed(am))
        / (2.0f64.powf(4.0 / 3.0) * 3.0f64.sqrt() * std::f64::consts::PI * x.sqrt());
    v.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limiting::make_shift_context;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn mc_quadratic_degeneration_at_origin_shift() {
        // z=0, w=2+0i^+: root of 2m^2+2m+1 = 0 with Im > 0 is -1/2 + i/2.
        let v = mc_solve(SpectralPoint::new(2.0, 1e-12), Complex64::new(0.0, 0.0)).unwrap();
        assert!((v.mc - Complex64::new(-0.5, 0.5)).norm() < 1e-6);
        let v0 = mc_explicit_real_axis(2.0, Complex64::new(0.0, 0.0)).unwrap();
        assert!((v0.mc - Complex64::new(-0.5, 0.5)).norm() < 1e-12);
    }

    #[test]
    fn mc_at_right_edge_matches_closed_form() {
        for zabs in [0.3, 0.5, 0.9, 1.1, 1.5] {
            let z = Complex64::new(zabs, 0.0);
            let ctx = make_shift_context(z);
            let expect = -2.0 / (3.0 + ctx.alpha);
            let v = mc_explicit_real_axis(ctx.lambda_plus, z).unwrap();
            assert!(
                (v.mc - Complex64::new(expect, 0.0)).norm() < 1e-8,
                "|z|={zabs}: {} vs {expect}",
                v.mc
            );
        }
    }

    #[test]
    fn mc_solve_companion_oracle() {
        // Independent oracle: evaluate the cubic residual of the returned root
        // and check it against the residual of a brute-force root obtained by
        // dense sampling + Newton from many starts.
        let z = Complex64::new(0.5, 0.0);
        let w = SpectralPoint::new(1.0, 0.01);
        let v = mc_solve(w, z).unwrap();
        assert!(v.residual <= 1e-10, "residual {}", v.residual);
        // brute-force: Newton from a grid of starting points, keep Im>0 root
        let mut best: Option<Complex64> = None;
        for re in -30..30 {
            for im in 1..30 {
                let mut m = Complex64::new(re as f64 * 0.1, im as f64 * 0.1);
                for _ in 0..60 {
                    let p = cubic_residual(m, w.w(), z.norm_sqr());
                    let dp = cubic_derivative(m, w.w(), z.norm_sqr());
                    m -= p / dp;
                }
                if m.im > 0.0 && cubic_residual(m, w.w(), z.norm_sqr()).norm() < 1e-10 {
                    best = Some(m);
                }
            }
        }
        let oracle = best.expect("brute-force root");
        assert!((v.mc - oracle).norm() < 1e-9, "{} vs {oracle}", v.mc);
    }

    #[test]
    fn explicit_matches_small_eta_solver() {
        let z = Complex64::new(0.5, 0.0);
        let a = mc_explicit_real_axis(1.0, z).unwrap();
        let b = mc_solve(SpectralPoint::new(1.0, 1e-9), z).unwrap();
        assert!((a.mc - b.mc).norm() < 1e-8, "{} vs {}", a.mc, b.mc);
    }

    #[test]
    fn rho_marchenko_pastur_at_two() {
        let z = Complex64::new(0.0, 0.0);
        let v = rho_c(2.0, z);
        assert!((v - 1.0 / (2.0 * PI)).abs() < 1e-14);
        for k in 1..40 {
            let x = 0.1 * k as f64;
            let mp = ((4.0 - x) / x).sqrt() / (2.0 * PI);
            assert!((rho_c(x, z) - mp).abs() < 1e-10);
        }
    }

    #[test]
    fn rho_square_root_onset_outside_disk() {
        let z = Complex64::new(1.2, 0.0);
        let ctx = make_shift_context(z);
        assert!(rho_c(ctx.lambda_minus - 1e-6, z) == 0.0);
        assert!(rho_c(ctx.lambda_minus + 1e-6, z) > 0.0);
        // fitted onset exponent 0.5 ± 0.05, with t kept small against the
        // distance from the edge to the origin so the √t term dominates
        let pts: Vec<(f64, f64)> = (1..=40)
            .map(|k| {
                let t = ctx.lambda_minus * 1e-5 * 10f64.powf(2.0 * (k as f64 - 1.0) / 39.0);
                (t.ln(), rho_c(ctx.lambda_minus + t, z).ln())
            })
            .collect();
        let slope = crate::ensembles::least_squares_slope(&pts);
        assert!((slope - 0.5).abs() < 0.05, "onset slope {slope}");
    }

    #[test]
    fn mc_conjugate_and_rotation_symmetry() {
        let z = Complex64::new(0.3, 0.4);
        let zr = Complex64::new(0.5, 0.0); // same |z|
        let w = SpectralPoint::new(1.3, 0.2);
        let m = mc_solve(w, z).unwrap().mc;
        let mr = mc_solve(w, zr).unwrap().mc;
        assert!((m - mr).norm() < 1e-12, "rotation invariance");
        // conjugate symmetry via the real-axis reflection of the cubic:
        // m_c(conj w) = conj(m_c(w)) means the residual of conj(m) at conj(w)
        // vanishes.
        let res = cubic_residual(m.conj(), w.w().conj(), z.norm_sqr()).norm();
        assert!(res < 1e-12, "conjugate residual {res}");
    }
}
