//! Quadrature kernels used by the limiting-theory module.
//!
//! Two integrators are provided:
//! - [`integrate`]: adaptive 15-point Gauss–Legendre for smooth integrands;
//! - [`integrate_de`]: tanh-sinh (double-exponential) rule, which tolerates
//!   integrable endpoint singularities (logarithmic or algebraic) without any
//!   substitution by the caller.

use std::sync::OnceLock;

const GL_ORDER: usize = 15;

fn gl_nodes() -> &'static ([f64; GL_ORDER], [f64; GL_ORDER]) {
    static NODES: OnceLock<([f64; GL_ORDER], [f64; GL_ORDER])> = OnceLock::new();
    NODES.get_or_init(|| {
        // Newton iteration on Legendre P_n, standard construction.
        let n = GL_ORDER;
        let mut xs = [0.0; GL_ORDER];
        let mut ws = [0.0; GL_ORDER];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(n, x);
            xs[i] = x;
            ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (xs, ws)
    })
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn gl_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (xs, ws) = gl_nodes();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for i in 0..GL_ORDER {
        sum += ws[i] * f(mid + half * xs[i]);
    }
    half * sum
}

/// Adaptive Gauss–Legendre integral of a smooth `f` over `[a, b]` with
/// absolute tolerance `tol`. Returns `None` when the recursion-depth cap is
/// exhausted before the tolerance is met.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Option<f64> {
    if a == b {
        return Some(0.0);
    }
    let whole = gl_panel(f, a, b);
    adapt(f, a, b, whole, tol, 48)
}

fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Option<f64> {
    let mid = 0.5 * (a + b);
    let left = gl_panel(f, a, mid);
    let right = gl_panel(f, mid, b);
    let refined = left + right;
    let err = (refined - whole).abs();
    if err <= tol || (b - a) < 1e-300 {
        return Some(refined);
    }
    if depth == 0 {
        return None;
    }
    let l = adapt(f, a, mid, left, 0.5 * tol, depth - 1)?;
    let r = adapt(f, mid, b, right, 0.5 * tol, depth - 1)?;
    Some(l + r)
}

/// Tanh-sinh integral of `f` over `[a, b]` with absolute tolerance `tol`.
///
/// The rule never evaluates `f` at the endpoints and clusters nodes
/// doubly-exponentially toward them, so endpoint singularities like
/// `log(x-a)` or `(x-a)^{-1/2}` are integrated accurately.
pub fn integrate_de<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Option<f64> {
    if a == b {
        return Some(0.0);
    }
    let halflen = 0.5 * (b - a);
    let t_max = 4.0; // g'(t) underflows beyond this
    let eval = |t: f64| -> f64 {
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        // 1 - tanh(u) computed stably for large |u|
        let (x, gp);
        let cosh_u = u.cosh();
        gp = std::f64::consts::FRAC_PI_2 * t.cosh() / (cosh_u * cosh_u);
        if u >= 0.0 {
            let one_minus_g = 2.0 * (-2.0 * u).exp() / (1.0 + (-2.0 * u).exp());
            x = b - halflen * one_minus_g;
        } else {
            let one_plus_g = 2.0 * (2.0 * u).exp() / (1.0 + (2.0 * u).exp());
            x = a + halflen * one_plus_g;
        }
        let v = f(x);
        if v.is_finite() {
            gp * v
        } else {
            0.0
        }
    };

    // Level 0: h = 1
    let mut h = 1.0;
    let mut sum = eval(0.0);
    let mut k = 1;
    loop {
        let t = h * k as f64;
        if t > t_max {
            break;
        }
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut result = halflen * h * sum;

    for _level in 1..=12 {
        h *= 0.5;
        // add the new (odd-multiples-of-h) nodes
        let mut new_sum = 0.0;
        let mut k = 1;
        loop {
            let t = h * k as f64;
            if t > t_max {
                break;
            }
            new_sum += eval(t) + eval(-t);
            k += 2;
        }
        sum += new_sum;
        let refined = halflen * h * sum;
        let err = (refined - result).abs();
        result = refined;
        if err <= tol {
            return Some(result);
        }
    }
    None
}
