//! Numeric and exact-arithmetic oracles: generating-function evaluation,
//! size moments, tuning parameters, exact coefficient tables and the
//! analytic acceptance-rate constants.

mod counts;
mod series;
mod special;

pub use counts::{boxed_counts, exact_counts, skew_counts, CountKind, CountTable};
pub(crate) use series::{block_rate, log_m_truncation as series_truncation};
pub use series::{
    domain_expected_size, eval_a, eval_m, expected_size, log_m, solve_target_equation,
    variance_size, xi_boxed, xi_domain, xi_unconstrained,
};
pub use special::{phi, phi_window, psi_closed_form, psi_cost};

/// Apéry's constant, `sum_{k >= 1} k^-3`.
pub const ZETA3: f64 = 1.202_056_903_159_594_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Absolute bound on the neglected tail of every infinite sum.
    pub truncation_tolerance: f64,
    /// Largest truncation index before giving up (x too close to 1).
    pub truncation_cap: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            truncation_tolerance: 1e-15,
            truncation_cap: 1 << 31,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> crate::Result<()> {
        let t = self.truncation_tolerance;
        if !(t > 0.0 && t <= 1e-6) {
            return Err(crate::Error::InvalidArgument(format!(
                "truncation tolerance must lie in (0, 1e-6], got {t}"
            )));
        }
        Ok(())
    }
}
