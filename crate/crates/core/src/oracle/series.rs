use crate::domain::IndexDomain;
use crate::error::{Error, Result};

use super::{OracleConfig, ZETA3};

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(x))
    }
}

/// `A(x) = x / (1 - x)^2`, the generating function of `Z x Seq(Z)^2`.
pub fn eval_a(x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(x / ((1.0 - x) * (1.0 - x)))
}

/// `(x^r, 1 - x^r)` computed from `ln x` without cancellation.
#[inline]
pub(crate) fn pow_pair(ln_x: f64, r: f64) -> (f64, f64) {
    let e = ln_x * r;
    (e.exp(), -e.exp_m1())
}

/// `A(x^j) / j`, the Poisson rate of multiplicity-`j` blocks.
#[inline]
pub(crate) fn block_rate(ln_x: f64, j: u64) -> f64 {
    let (p, q) = pow_pair(ln_x, j as f64);
    p / (q * q) / j as f64
}

/// Sums `term(r)` for `r >= 1` until a geometric tail bound falls below the
/// tolerance. `growth` bounds `term(r + 1) / term(r) <= x ((r + 1) / r)^growth`.
fn sum_with_ratio_tail(
    x: f64,
    cfg: &OracleConfig,
    growth: i32,
    term: impl Fn(u64) -> f64,
) -> Result<f64> {
    let mut sum = 0.0;
    let mut r: u64 = 1;
    loop {
        let t = term(r);
        sum += t;
        let rf = r as f64;
        let q = x * ((rf + 1.0) / rf).powi(growth);
        if q < 1.0 && t * q / (1.0 - q) <= cfg.truncation_tolerance {
            return Ok(sum);
        }
        r += 1;
        if r > cfg.truncation_cap {
            return Err(Error::TruncationCap {
                x,
                cap: cfg.truncation_cap,
            });
        }
    }
}

/// Number of terms `J` such that `sum_{j > J} A(x^j) / j <= 4 x^J / (1 - x)`
/// is below the tolerance (the bound holds once `x^J <= 1/2`).
pub(crate) fn log_m_truncation(x: f64, cfg: &OracleConfig) -> Result<u64> {
    check_x(x)?;
    let ln_x = x.ln();
    // Smallest J with 4 x^J / (1 - x) <= tol and x^J <= 1/2.
    let need = ((cfg.truncation_tolerance * (1.0 - x) / 4.0).ln() / ln_x)
        .max(std::f64::consts::LN_2 / -ln_x)
        .ceil()
        .max(1.0);
    if need.is_nan() || need > cfg.truncation_cap as f64 {
        return Err(Error::TruncationCap {
            x,
            cap: cfg.truncation_cap,
        });
    }
    Ok(need as u64)
}

/// `sum_{j >= 1} A(x^j) / j`, the logarithm of the multiset generating function.
pub fn log_m(x: f64, cfg: &OracleConfig) -> Result<f64> {
    let big_j = log_m_truncation(x, cfg)?;
    let ln_x = x.ln();
    // Smallest terms first.
    Ok((1..=big_j).rev().map(|j| block_rate(ln_x, j)).sum())
}

/// `M(x) = prod (1 - x^k)^-k`, the generating function of plane partitions.
pub fn eval_m(x: f64, cfg: &OracleConfig) -> Result<f64> {
    Ok(log_m(x, cfg)?.exp())
}

/// Mean size of a free Boltzmann multiset: `sum r^2 x^r / (1 - x^r)`.
pub fn expected_size(x: f64, cfg: &OracleConfig) -> Result<f64> {
    check_x(x)?;
    let ln_x = x.ln();
    sum_with_ratio_tail(x, cfg, 2, |r| {
        let (p, q) = pow_pair(ln_x, r as f64);
        let rf = r as f64;
        rf * rf * p / q
    })
}

/// Variance of the size: `sum r^3 x^r / (1 - x^r)^2`.
pub fn variance_size(x: f64, cfg: &OracleConfig) -> Result<f64> {
    check_x(x)?;
    let ln_x = x.ln();
    sum_with_ratio_tail(x, cfg, 3, |r| {
        let (p, q) = pow_pair(ln_x, r as f64);
        let rf = r as f64;
        rf * rf * rf * p / (q * q)
    })
}

/// `1 - (2 zeta(3) / n)^(1/3)`: the parameter whose mean size is asymptotically `n`.
pub fn xi_unconstrained(n: u64) -> Result<f64> {
    let xi = 1.0 - (2.0 * ZETA3 / n as f64).cbrt();
    if xi > 0.0 {
        Ok(xi)
    } else {
        Err(Error::Untunable {
            n,
            reason: "requires n > 2 zeta(3)",
        })
    }
}

/// `1 - ab / n` for `(a x b)`-boxed targets.
pub fn xi_boxed(a: usize, b: usize, n: u64) -> Result<f64> {
    let cells = (a as u64).saturating_mul(b as u64);
    if a == 0 || b == 0 || n <= cells {
        return Err(Error::Untunable {
            n,
            reason: "requires n > ab",
        });
    }
    Ok(1.0 - cells as f64 / n as f64)
}

/// `1 - |D| / n`, the asymptotic tuning for a skew domain.
pub fn xi_domain(dom: &IndexDomain, n: u64) -> Result<f64> {
    let cells = dom.cell_count() as u64;
    if n <= cells {
        return Err(Error::Untunable {
            n,
            reason: "requires n > |D|",
        });
    }
    Ok(1.0 - cells as f64 / n as f64)
}

fn hook_histogram(dom: &IndexDomain) -> Vec<(u64, u64)> {
    let mut counts = std::collections::BTreeMap::new();
    for h in dom.hooks() {
        *counts.entry(h).or_insert(0u64) += 1;
    }
    counts.into_iter().collect()
}

fn lambda_hooks(hist: &[(u64, u64)], x: f64) -> f64 {
    let ln_x = x.ln();
    hist.iter()
        .map(|&(h, c)| {
            let (p, q) = pow_pair(ln_x, h as f64);
            (c * h) as f64 * p / q
        })
        .sum()
}

/// Mean size `sum_{(i,j) in D} h x^h / (1 - x^h)` of the free sampler on a domain.
pub fn domain_expected_size(dom: &IndexDomain, x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(lambda_hooks(&hook_histogram(dom), x))
}

/// Solves `x M_D'(x) / M_D(x) = n` by bisection down to `f64` resolution.
/// The mean size at the returned root is within 0.5 of `n` whenever the
/// floating-point grid near the root is fine enough to allow it.
pub fn solve_target_equation(dom: &IndexDomain, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "target size must be at least 1".into(),
        ));
    }
    let hist = hook_histogram(dom);
    let target = n as f64;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut best = (f64::INFINITY, 0.5);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gap = lambda_hooks(&hist, mid) - target;
        if gap.abs() < best.0 {
            best = (gap.abs(), mid);
        }
        if gap == 0.0 {
            break;
        }
        if gap < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(best.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CFG: OracleConfig = OracleConfig {
        truncation_tolerance: 1e-15,
        truncation_cap: 1 << 31,
    };

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    // Reference values from 30-digit partial sums (3000 terms).
    #[test]
    fn reference_values() {
        assert!(close(
            log_m(0.5, &CFG).unwrap(),
            2.305_792_919_945_023,
            1e-13
        ));
        assert!(close(
            eval_m(0.5, &CFG).unwrap(),
            10.032_129_775_337_715,
            1e-13
        ));
        assert!(close(
            log_m(0.9, &CFG).unwrap(),
            107.932_281_509_175_01,
            1e-12
        ));
        assert!(close(
            expected_size(0.5, &CFG).unwrap(),
            7.099_285_178_890_907,
            1e-13
        ));
        assert!(close(
            expected_size(0.3, &CFG).unwrap(),
            1.309_173_241_336_814,
            1e-13
        ));
        assert!(close(
            expected_size(0.9, &CFG).unwrap(),
            2_054.727_496_926_457,
            1e-12
        ));
        assert!(close(
            variance_size(0.5, &CFG).unwrap(),
            31.070_411_467_028_08,
            1e-13
        ));
        assert!(close(
            variance_size(0.9, &CFG).unwrap(),
            58_520.632_988_930_2,
            1e-12
        ));
        assert!(close(
            expected_size(0.9866, &CFG).unwrap(),
            979_173.010_661_139,
            1e-11
        ));
    }

    #[test]
    fn eval_a_examples() {
        assert_eq!(eval_a(0.5).unwrap(), 2.0);
        assert!(close(eval_a(0.25).unwrap(), 4.0 / 9.0, 1e-15));
        assert!(close(eval_a(1e-9).unwrap(), 1e-9, 1e-8));
        assert!(eval_a(0.0).is_err());
        assert!(eval_a(1.0).is_err());
    }

    #[test]
    fn small_x_limits() {
        let x = 1e-9;
        assert!(close(log_m(x, &CFG).unwrap(), x, 1e-8));
        assert!(close(eval_m(x, &CFG).unwrap(), 1.0, 1e-8));
        assert!(close(expected_size(x, &CFG).unwrap(), x, 1e-8));
        assert!(close(variance_size(x, &CFG).unwrap(), x, 1e-8));
    }

    #[test]
    fn mean_is_log_derivative() {
        let h = 1e-5;
        for x in [0.3, 0.5, 0.7] {
            let d = (log_m(x + h, &CFG).unwrap() - log_m(x - h, &CFG).unwrap()) / (2.0 * h);
            let mean = expected_size(x, &CFG).unwrap();
            assert!((x * d - mean).abs() < 1e-6, "x={x}: {} vs {mean}", x * d);
        }
    }

    #[test]
    fn asymptotic_constants() {
        let mut prev = 0.0;
        for x in [0.9, 0.99, 0.999] {
            let scaled = expected_size(x, &CFG).unwrap() * (1.0 - x).powi(3);
            assert!(scaled > prev, "approach to 2 zeta(3) should be monotone");
            prev = scaled;
        }
        assert!(close(prev, 2.0 * ZETA3, 0.005));
        let v = variance_size(0.999, &CFG).unwrap() * 0.001f64.powi(4);
        assert!(close(v, 6.0 * ZETA3, 0.05));
    }

    #[test]
    fn tuning_values() {
        assert!(close(
            xi_unconstrained(1_000_000).unwrap(),
            0.986_603_7,
            1e-7
        ));
        let n = 2.0 * ZETA3 / 0.001;
        assert!(close(
            xi_unconstrained(n.round() as u64).unwrap(),
            0.9,
            1e-4
        ));
        assert!(xi_unconstrained(2).is_err());
        assert!(xi_unconstrained(3).is_ok());
        assert!(close(xi_boxed(10, 10, 10_000).unwrap(), 0.99, 1e-15));
        assert!(close(xi_boxed(1, 1, 100).unwrap(), 0.99, 1e-15));
        assert!(xi_boxed(100, 100, 10_000).is_err());
    }

    #[test]
    fn target_equation_single_cell() {
        let dom = IndexDomain::rectangle(1, 1).unwrap();
        for n in [1u64, 5, 100, 1_000_000] {
            let x = solve_target_equation(&dom, n).unwrap();
            let nf = n as f64;
            assert!((x / (1.0 - x) - nf).abs() <= 0.5);
            assert!(close(x, nf / (nf + 1.0), 1e-6));
        }
    }

    #[test]
    fn target_equation_boxed() {
        let dom = IndexDomain::rectangle(100, 100).unwrap();
        let x = solve_target_equation(&dom, 1_000_000).unwrap();
        assert!((domain_expected_size(&dom, x).unwrap() - 1e6).abs() <= 0.5);
        // Far from the asymptotic regime the exact root sits well above 1 - ab/n.
        assert!(x > 0.993 && x < 0.994, "{x}");
        // With n >> |D| the root approaches 1 - |D|/n.
        let dom = IndexDomain::new(4, 3, &[(1, 1)]).unwrap();
        let n = 10_000_000;
        let x = solve_target_equation(&dom, n).unwrap();
        let xi = xi_domain(&dom, n).unwrap();
        assert!(((1.0 - x) - (1.0 - xi)).abs() / (1.0 - xi) < 1e-4);
    }
}
