//! Classification of a spectral point into the asymptotic regimes of `m_c`
//! (near an edge, near the origin, bulk, or outside the support) and checks
//! that the solved `m_c` has the predicted order of magnitude there.

use super::{mc_solve, ShiftContext, SpectralPoint};
use crate::{Complex64, Error, Result};

/// Regime threshold: a point within this distance of an edge (or the origin)
/// is classified as "near" it.
const TAU: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    NearLambdaPlus,
    NearLambdaMinus,
    NearZero,
    Bulk,
    Outside,
    /// `||z| - 1| < 1e-3`: the self-consistent equation is unstable there and
    /// the classification is refused.
    NearCritical,
}

#[derive(Debug, Clone)]
pub struct RegimeRatio {
    pub name: &'static str,
    pub value: f64,
    /// `value` within `[1/10, 10]` of the predicted order.
    pub within_order: bool,
}

#[derive(Debug, Clone)]
pub struct RegimeReport {
    pub w: SpectralPoint,
    pub z: Complex64,
    pub regime: Regime,
    pub mc: Complex64,
    /// Distance from `E` to the relevant support edge(s).
    pub kappa: f64,
    pub ratios: Vec<RegimeRatio>,
}

fn ratio(name: &'static str, value: f64) -> RegimeRatio {
    RegimeRatio {
        name,
        value,
        within_order: (0.1..=10.0).contains(&value),
    }
}

pub fn regime_check(w: SpectralPoint, z: Complex64) -> Result<RegimeReport> {
    if w.eta <= 0.0 {
        return Err(Error::Precondition("regime_check requires eta > 0".into()));
    }
    if w.w().norm() > 10.0 {
        return Err(Error::Precondition("regime_check requires |w| <= 10".into()));
    }
    let ctx = ShiftContext::new(z);
    let zabs = ctx.zsq.sqrt();
    let mc = mc_solve(w, z)?.mc;

    let kappa = if ctx.inside_disk {
        (w.e - ctx.lambda_plus).abs()
    } else {
        (w.e - ctx.lambda_plus).abs().min((w.e - ctx.lambda_minus).abs())
    };

    if (zabs - 1.0).abs() < 1e-3 {
        return Ok(RegimeReport {
            w,
            z,
            regime: Regime::NearCritical,
            mc,
            kappa,
            ratios: Vec::new(),
        });
    }

    let wc = w.w();
    let wabs = wc.norm();
    let near_plus = (wc - ctx.lambda_plus).norm() <= TAU;
    let near_minus = !ctx.inside_disk && (wc - ctx.lambda_minus).norm() <= TAU;
    let near_zero = ctx.inside_disk && wabs <= TAU;

    let mut ratios = Vec::new();
    let regime;
    if near_plus || near_minus {
        regime = if near_plus { Regime::NearLambdaPlus } else { Regime::NearLambdaMinus };
        let outside_support = if ctx.inside_disk {
            w.e > ctx.lambda_plus
        } else {
            w.e > ctx.lambda_plus || w.e < ctx.lambda_minus
        };
        let predicted = if kappa >= w.eta && outside_support {
            w.eta / kappa.sqrt()
        } else {
            w.eta.sqrt()
        };
        ratios.push(ratio("im_mc_vs_edge_prediction", mc.im / predicted));
        // Edge value: m_c(λ_±) = -2/(3 ± α)
        let edge_val = if near_plus { -2.0 / (3.0 + ctx.alpha) } else { -2.0 / (3.0 - ctx.alpha) };
        let dist = (mc - Complex64::new(edge_val, 0.0)).norm();
        ratios.push(ratio("mc_edge_offset_vs_sqrt_kappa_eta", dist / (kappa + w.eta).sqrt()));
    } else if near_zero {
        regime = Regime::NearZero;
        // m_c ≈ i (1 - |z|^2)/√w as w -> 0.
        ratios.push(ratio(
            "im_mc_sqrt_w_over_one_minus_zsq",
            mc.im * wabs.sqrt() / (1.0 - ctx.zsq),
        ));
        ratios.push(ratio("abs_mc_sqrt_w", mc.norm() * wabs.sqrt()));
    } else {
        let outside = if ctx.inside_disk {
            w.e >= ctx.lambda_plus
        } else {
            w.e >= ctx.lambda_plus || w.e <= ctx.lambda_minus
        };
        if outside {
            regime = Regime::Outside;
            ratios.push(ratio("im_mc_over_eta", mc.im / w.eta));
            ratios.push(ratio("abs_re_mc", mc.re.abs()));
        } else {
            regime = Regime::Bulk;
            ratios.push(ratio("abs_mc", mc.norm()));
            ratios.push(ratio("im_mc", mc.im));
        }
    }
    // Bounds shared by the inside/outside lemmas: |m_c| ~ |m_c + 1| ~ |w|^{-1/2}.
    if ctx.inside_disk || w.e >= ctx.lambda_minus / 5.0 {
        ratios.push(ratio("abs_mc_plus_one_over_abs_mc", (mc + 1.0).norm() / mc.norm()));
    }

    Ok(RegimeReport { w, z, regime, mc, kappa, ratios })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn near_zero_expansion() {
        let r = regime_check(SpectralPoint::new(1e-6, 1e-6), Complex64::new(0.5, 0.0)).unwrap();
        assert_eq!(r.regime, Regime::NearZero);
        let ratio = r
            .ratios
            .iter()
            .find(|r| r.name == "im_mc_sqrt_w_over_one_minus_zsq")
            .unwrap();
        assert!(ratio.within_order, "value {}", ratio.value);
    }

    #[test]
    fn outside_edge_im_mc_linear_in_eta() {
        let z = Complex64::new(0.5, 0.0);
        let ctx = ShiftContext::new(z);
        let r = regime_check(SpectralPoint::new(ctx.lambda_plus + 0.5, 1e-4), z).unwrap();
        assert_eq!(r.regime, Regime::Outside);
        let ratio = r.ratios.iter().find(|r| r.name == "im_mc_over_eta").unwrap();
        assert!(ratio.within_order, "value {}", ratio.value);
    }

    #[test]
    fn bulk_outside_disk_order_one() {
        let z = Complex64::new(1.5, 0.0);
        let ctx = ShiftContext::new(z);
        let e = 0.5 * (ctx.lambda_minus + ctx.lambda_plus);
        let r = regime_check(SpectralPoint::new(e, 1e-3), z).unwrap();
        assert_eq!(r.regime, Regime::Bulk);
        for ratio in &r.ratios {
            assert!(ratio.within_order, "{}: {}", ratio.name, ratio.value);
        }
    }

    #[test]
    fn refuses_near_critical() {
        let r = regime_check(SpectralPoint::new(1.0, 0.1), Complex64::new(0.9995, 0.0)).unwrap();
        assert_eq!(r.regime, Regime::NearCritical);
        assert!(r.ratios.is_empty());
    }
}
