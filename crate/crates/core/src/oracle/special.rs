use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// `phi(alpha) = (alpha / e)^alpha / Gamma(alpha)`.
pub fn phi(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    Ok((alpha * (alpha.ln() - 1.0) - ln_gamma(alpha)).exp())
}

/// `Phi(alpha, eps) = phi(alpha) * int_{-eps}^{eps} (1 + s)^(alpha - 1) e^(-alpha s) ds`,
/// the limiting acceptance rate of the approximate-size boxed sampler.
pub fn phi_window(alpha: f64, epsilon: f64) -> Result<f64> {
    let scale = phi(alpha)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    let f = |s: f64| ((alpha - 1.0) * s.ln_1p() - alpha * s).exp();
    Ok(scale * adaptive_simpson(&f, -epsilon, epsilon, 1e-13))
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Number of cell updates Pak's transform performs on a full `w x h`
/// rectangle: `sum_{i=1}^{min(w,h)} i (w - i + h - i + 1)`.
pub fn psi_cost(w: u64, h: u64) -> u64 {
    (1..=w.min(h)).map(|i| i * (w - i + h - i + 1)).sum()
}

/// Closed form `L l (l + 1) / 2 - (l^3 - l) / 6` with `L = max`, `l = min`.
pub fn psi_closed_form(w: u64, h: u64) -> u64 {
    let (big, small) = (w.max(h), w.min(h));
    (3 * big * small * (small + 1) - (small * small * small - small)) / 6
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn phi_closed_forms() {
        assert!((phi(1.0).unwrap() - 1.0 / E).abs() < 1e-15);
        assert!((phi(2.0).unwrap() - 4.0 / (E * E)).abs() < 1e-15);
        let fact9: f64 = (1..=9).map(|k| k as f64).product();
        assert!((phi(10.0).unwrap() / ((10.0 / E).powi(10) / fact9) - 1.0).abs() < 1e-12);
        let half = (0.5 / E).sqrt() / std::f64::consts::PI.sqrt();
        assert!((phi(0.5).unwrap() / half - 1.0).abs() < 1e-12);
        assert!(phi(0.0).is_err());
        assert!(phi(-1.0).is_err());
    }

    #[test]
    fn phi_matches_stirling_for_large_alpha() {
        // phi(alpha) ~ sqrt(alpha / 2 pi) (1 - 1/(12 alpha) + ...)
        for alpha in [50.0f64, 200.0] {
            let s = (alpha / (2.0 * std::f64::consts::PI)).sqrt()
                * (1.0 - 1.0 / (12.0 * alpha) + 1.0 / (288.0 * alpha * alpha));
            assert!((phi(alpha).unwrap() / s - 1.0).abs() < 1e-7);
        }
    }

    #[test]
    fn phi_window_closed_form_at_one() {
        for eps in [0.01, 0.1, 0.5, 0.9] {
            let exact = 2.0 * f64::sinh(eps) / E;
            assert!((phi_window(1.0, eps).unwrap() - exact).abs() < 1e-12);
        }
        assert!((phi_window(1.0, 0.1).unwrap() - 0.073_698_6).abs() < 1e-7);
    }

    #[test]
    fn phi_window_polynomial_integrand() {
        // alpha = 2: phi(2) * int (1 + s) e^{-2s} ds, antiderivative -(2s + 3) e^{-2s} / 4
        let eps: f64 = 0.3;
        let anti = |s: f64| -(2.0 * s + 3.0) * (-2.0 * s).exp() / 4.0;
        let exact = 4.0 / (E * E) * (anti(eps) - anti(-eps));
        assert!((phi_window(2.0, eps).unwrap() - exact).abs() < 1e-12);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_cost(1, 1), 1);
        assert_eq!(psi_cost(2, 2), 5);
        assert_eq!(psi_cost(3, 2), 8);
        for w in 1..=50 {
            for h in 1..=50 {
                assert_eq!(psi_cost(w, h), psi_cost(h, w));
                assert_eq!(psi_cost(w, h), psi_closed_form(w, h));
            }
        }
    }
}
