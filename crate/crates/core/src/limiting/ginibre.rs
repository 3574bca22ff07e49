//! One-point intensity of the complex Ginibre determinantal process.

use super::quad;
use crate::{Complex64, Error, Result};

/// `K_N(ζ, ζ) = (N/π) e^{-N|ζ|^2} Σ_{ℓ<N} (N|ζ|^2)^ℓ / ℓ!`.
///
/// The truncated-exponential sum is a Poisson CDF, evaluated in the log
/// domain so large `N|ζ|^2` never overflows.
pub fn ginibre_intensity(zeta: Complex64, n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::Precondition("ginibre_intensity requires N >= 1".into()));
    }
    let mu = n as f64 * zeta.norm_sqr();
    let scale = n as f64 / std::f64::consts::PI;
    if mu == 0.0 {
        return Ok(scale); // only the ℓ = 0 term survives
    }
    // log-domain term recursion: lt_{ℓ} = -μ + ℓ ln μ - ln ℓ!
    let ln_mu = mu.ln();
    let mut lt = -mu;
    let mut max_lt = lt;
    let mut lts = Vec::with_capacity(n);
    lts.push(lt);
    for ell in 1..n {
        lt += ln_mu - (ell as f64).ln();
        lts.push(lt);
        if lt > max_lt {
            max_lt = lt;
        }
    }
    let sum: f64 = lts.iter().map(|&l| (l - max_lt).exp()).sum();
    Ok(scale * (max_lt + sum.ln()).exp())
}

/// `∫_C K_N(ζ, ζ) dA(ζ)` by radial quadrature; equals `N` exactly.
pub fn ginibre_intensity_radial_mass(n: usize, r_max: f64) -> Result<f64> {
    let f = |r: f64| {
        2.0 * std::f64::consts::PI
            * r
            * ginibre_intensity(Complex64::new(r, 0.0), n).unwrap_or(0.0)
    };
    quad::integrate(&f, 0.0, r_max, 1e-8 * n as f64)
        .ok_or_else(|| Error::Numerical("radial intensity quadrature failed".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn at_origin_exact() {
        for n in [1, 10, 400] {
            let v = ginibre_intensity(Complex64::new(0.0, 0.0), n).unwrap();
            assert_eq!(v, n as f64 / PI);
        }
    }

    #[test]
    fn near_circle_half_mass() {
        // Poisson CLT: at |ζ| = 1 the CDF P(Pois(N) <= N-1) is close to 1/2.
        let n = 400;
        let v = ginibre_intensity(Complex64::new(1.0, 0.0), n).unwrap();
        let ratio = v / (n as f64 / PI);
        assert!((0.45..=0.55).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn far_outside_tiny() {
        let n = 100;
        let v = ginibre_intensity(Complex64::new(2.0, 0.0), n).unwrap();
        assert!(v / (n as f64 / PI) < 1e-10, "{v}");
    }

    #[test]
    fn direct_summation_oracle() {
        // Brute-force sum in plain arithmetic for small μ.
        let n = 30;
        let zeta = Complex64::new(0.6, 0.2);
        let mu = n as f64 * zeta.norm_sqr();
        let mut term = (-mu).exp();
        let mut sum = term;
        for ell in 1..n {
            term *= mu / ell as f64;
            sum += term;
        }
        let oracle = n as f64 / PI * sum;
        let v = ginibre_intensity(zeta, n).unwrap();
        assert!((v - oracle).abs() < 1e-12 * oracle.max(1.0));
    }

    #[test]
    fn total_mass_is_n() {
        let n = 64;
        let mass = ginibre_intensity_radial_mass(n, 3.0).unwrap();
        assert!((mass - n as f64).abs() < 1e-6 * n as f64, "mass {mass}");
    }
}
