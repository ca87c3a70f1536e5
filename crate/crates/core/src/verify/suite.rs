//! Named verification suites.

use num_traits::ToPrimitive;

use super::checks::{bijection_check, boxed_refinement_check, roundtrip_check, skew_check};
use super::enumerate::{enumerate_partitions, enumerate_partitions_boxed, enumerate_skew};
use super::stats::{
    acceptance_probe, chi_square_uniformity, default_jobs, farm, moment_probe, z_critical,
    SIGNIFICANCE,
};
use super::TestReport;
use crate::dist::RandomSource;
use crate::domain::IndexDomain;
use crate::error::Result;
use crate::oracle::{eval_m, exact_counts, xi_unconstrained, OracleConfig};
use crate::sampler::{
    sample_partitions, sample_partitions_boxed, sample_partitions_skew, Class, SamplerOptions,
};
use crate::target::TargetSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Exhaustive bijection, refinement, skew and roundtrip checks.
    Small,
    /// Seeded statistical tests, Bonferroni-corrected.
    Stat,
    All,
}

/// Staircases exercised by the skew checks.
pub const SKEW_DOMAINS: [&str; 2] = ["3x3-1x1", "4x4-2x2-1x3"];

/// Chi-square test that `trials` exact-size-`n` samples of `class` are
/// uniform over the enumerated class.
pub fn uniformity_report(
    class: &Class,
    n: u64,
    trials: u64,
    alpha: f64,
    rng: &mut RandomSource,
) -> Result<TestReport> {
    let seed = rng.seed();
    let spec = TargetSpec::exact(n)?;
    let opts = SamplerOptions::default();
    let classes: Vec<Vec<Vec<u64>>> = match class {
        Class::Unconstrained => enumerate_partitions(n)?.iter().map(|p| p.rows()).collect(),
        Class::Boxed { a, b } => enumerate_partitions_boxed(*a, *b, n)?
            .iter()
            .map(|p| p.rows())
            .collect(),
        Class::Skew(dom) => enumerate_skew(dom, n)?.iter().map(|p| p.rows()).collect(),
    };
    let draw = |rng: &mut RandomSource| -> Result<Vec<Vec<u64>>> {
        Ok(match class {
            Class::Unconstrained => sample_partitions(&spec, rng, &opts)?.result.rows(),
            Class::Boxed { a, b } => sample_partitions_boxed(*a, *b, &spec, rng, &opts)?
                .result
                .rows(),
            Class::Skew(dom) => sample_partitions_skew(dom, &spec, rng, &opts)?
                .result
                .rows(),
        })
    };
    let samples = farm(
        trials,
        rng,
        default_jobs(),
        Ok(Vec::new()),
        |rng, len| (0..len).map(|_| draw(rng)).collect::<Result<Vec<_>>>(),
        |a, b| {
            let mut a = a?;
            a.extend(b?);
            Ok(a)
        },
    )?;
    let name = match class {
        Class::Unconstrained => format!("uniformity n={n}"),
        Class::Boxed { a, b } => format!("uniformity boxed {a}x{b} n={n}"),
        Class::Skew(dom) => format!("uniformity skew {dom} n={n}"),
    };
    chi_square_uniformity(&name, samples, &classes, alpha, seed)
}

/// Exact probability that a free draw at `x` has size `n`.
pub fn exact_size_probability(n: u64, x: f64) -> Result<f64> {
    let count = exact_counts(n as usize)
        .get(n as usize)
        .and_then(|c| c.to_f64())
        .expect("coefficient in range");
    Ok(count * x.powi(n as i32) / eval_m(x, &OracleConfig::default())?)
}

fn small_suite(seed: u64) -> Result<Vec<TestReport>> {
    let mut out = vec![bijection_check(12)?, boxed_refinement_check(3, 10)?];
    for d in SKEW_DOMAINS {
        out.push(skew_check(&IndexDomain::parse(d)?, 10)?);
    }
    out.push(roundtrip_check(
        12,
        1000,
        0.9,
        &mut RandomSource::new(seed, 0),
    )?);
    Ok(out)
}

fn stat_suite(seed: u64) -> Result<Vec<TestReport>> {
    // hypothesis tests below; the variance checks use a fixed relative band
    const TESTS: f64 = 7.0;
    let alpha = SIGNIFICANCE / TESTS;
    let z = z_critical(alpha);
    let mut stream = 0u64;
    let mut next = || {
        stream += 1;
        RandomSource::new(seed, stream)
    };
    let skew = Class::Skew(IndexDomain::parse(SKEW_DOMAINS[0])?);
    let mut out = vec![
        uniformity_report(&Class::Unconstrained, 4, 100_000, alpha, &mut next())?,
        uniformity_report(&Class::Unconstrained, 6, 100_000, alpha, &mut next())?,
        uniformity_report(&Class::Boxed { a: 2, b: 2 }, 6, 50_000, alpha, &mut next())?,
        uniformity_report(&skew, 6, 50_000, alpha, &mut next())?,
    ];
    let cfg = OracleConfig::default();
    for x in [0.5, 0.9] {
        let m = moment_probe(x, 100_000, &mut next())?;
        out.push(TestReport::new(
            format!("mean size at x={x}"),
            m.z_mean.abs(),
            z,
            m.trials,
            seed,
        ));
        // the variance of the squared deviation is unknown; a loose relative check
        let rel = (m.variance / crate::oracle::variance_size(x, &cfg)? - 1.0).abs();
        out.push(TestReport::new(
            format!("size variance at x={x} (relative error)"),
            rel,
            0.1,
            m.trials,
            seed,
        ));
    }
    let n = 50;
    let x = xi_unconstrained(n)?;
    let est = acceptance_probe(
        &Class::Unconstrained,
        &TargetSpec::exact(n)?,
        x,
        400_000,
        &mut next(),
    )?;
    let p = exact_size_probability(n, x)?;
    out.push(TestReport::new(
        format!("acceptance rate n={n}"),
        est.z_score(p).abs(),
        z,
        est.trials,
        seed,
    ));
    Ok(out)
}

/// Runs a suite with every randomized check seeded from `seed`.
pub fn run_suite(suite: Suite, seed: u64) -> Result<Vec<TestReport>> {
    Ok(match suite {
        Suite::Small => small_suite(seed)?,
        Suite::Stat => stat_suite(seed)?,
        Suite::All => {
            let mut v = small_suite(seed)?;
            v.extend(stat_suite(seed)?);
            v
        }
    })
}
