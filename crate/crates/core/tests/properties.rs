//! Randomized invariants over the deterministic machinery.

use circlaw_core::circlaw::{local_stat, ComplexSpectrum, TestFunction};
use circlaw_core::limiting::{
    cubic_residual, make_shift_context, mc_solve, rho_c, SpectralPoint,
};
use circlaw_core::report::g17;
use circlaw_core::Complex64;
use proptest::prelude::*;

proptest! {
    #[test]
    fn mc_maps_into_upper_half_plane(
        e in 1e-3f64..20.0,
        eta in 1e-6f64..10.0,
        zre in -2.0f64..2.0,
        zim in -2.0f64..2.0,
    ) {
        let z = Complex64::new(zre, zim);
        let w = SpectralPoint::new(e, eta);
        let v = mc_solve(w, z).unwrap();
        prop_assert!(v.mc.im > 0.0, "Im m_c = {}", v.mc.im);
        let res = cubic_residual(v.mc, w.w(), z.norm_sqr()).norm();
        prop_assert!(res <= 1e-9 * w.w().norm().max(1.0), "residual {res}");
    }

    #[test]
    fn density_nonnegative_and_supported(
        x in -1.0f64..30.0,
        zabs in 0.0f64..2.0,
    ) {
        let z = Complex64::new(zabs, 0.0);
        let ctx = make_shift_context(z);
        let rho = rho_c(x, z);
        prop_assert!(rho >= 0.0);
        if x > ctx.lambda_plus || x < ctx.lambda_minus.max(0.0) - 1e-12 {
            prop_assert!(rho == 0.0, "rho({x}) = {rho} outside support");
        }
    }

    #[test]
    fn density_depends_only_on_z_modulus(
        x in 0.01f64..8.0,
        zabs in 0.1f64..1.8,
        theta in 0.0f64..std::f64::consts::TAU,
    ) {
        let on_axis = rho_c(x, Complex64::new(zabs, 0.0));
        let rotated = rho_c(x, Complex64::from_polar(zabs, theta));
        prop_assert!((on_axis - rotated).abs() <= 1e-10 * on_axis.max(1.0));
    }

    #[test]
    fn local_stat_permutation_invariant(
        res in prop::collection::vec((-1.5f64..1.5, -1.5f64..1.5), 4..40),
        swap_a in 0usize..40,
        swap_b in 0usize..40,
    ) {
        let tf = TestFunction::new(Complex64::new(0.3, 0.2), 0.25, 1.0).unwrap();
        let mu: Vec<Complex64> = res.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
        let n = mu.len();
        let base = local_stat(&ComplexSpectrum { n, mu: mu.clone() }, &tf);
        let mut shuffled = mu;
        shuffled.swap(swap_a % n, swap_b % n);
        shuffled.reverse();
        let after = local_stat(&ComplexSpectrum { n, mu: shuffled }, &tf);
        // identical up to summation-order round-off
        prop_assert!((base - after).abs() <= 1e-12 * base.abs().max(1.0));
    }

    #[test]
    fn g17_roundtrips_any_finite_float(v in prop::num::f64::NORMAL) {
        let parsed: f64 = g17(v).parse().unwrap();
        prop_assert_eq!(parsed, v);
    }
}
