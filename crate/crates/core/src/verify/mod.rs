//! Ground-truth machinery: brute-force enumerators, exhaustive bijection
//! checks, goodness-of-fit tests, acceptance-rate and moment probes, and
//! scaling benchmarks.
//!
//! Every randomized check takes a [`RandomSource`](crate::RandomSource) and
//! records its seed in the [`TestReport`], so a failure can be replayed.

pub mod bench;
pub mod checks;
pub mod enumerate;
pub mod stats;
pub mod suite;

use std::fmt;

pub use bench::{bench_scaling, BenchMode, ScalingRow, ScalingTable};
pub use checks::{bijection_check, boxed_refinement_check, roundtrip_check, skew_check};
pub use enumerate::{
    enumerate_diagrams, enumerate_diagrams_boxed, enumerate_partitions, enumerate_partitions_boxed,
    enumerate_skew, enumerate_skew_diagrams, ENUMERATION_CAP,
};
pub use stats::{
    acceptance_probe, chi_square_uniformity, moment_probe, wilson_interval, AcceptanceEstimate,
    MomentEstimate, SIGNIFICANCE,
};
pub use suite::{run_suite, Suite};

/// Outcome of one check: `statistic` is compared against `threshold`
/// (pass iff `statistic <= threshold`).
#[derive(Debug, Clone, PartialEq)]
pub struct TestReport {
    pub name: String,
    pub statistic: f64,
    pub threshold: f64,
    pub passed: bool,
    pub samples: u64,
    pub seed: u64,
}

impl TestReport {
    pub fn new(
        name: impl Into<String>,
        statistic: f64,
        threshold: f64,
        samples: u64,
        seed: u64,
    ) -> Self {
        TestReport {
            name: name.into(),
            passed: statistic <= threshold,
            statistic,
            threshold,
            samples,
            seed,
        }
    }
}

impl fmt::Display for TestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: statistic={:.6} threshold={:.6} samples={} seed={}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.statistic,
            self.threshold,
            self.samples,
            self.seed
        )
    }
}
