//! Goodness-of-fit tests and Monte Carlo probes.

use std::collections::HashMap;
use std::hash::Hash;

use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use super::TestReport;
use crate::dist::RandomSource;
use crate::error::{Error, Result};
use crate::grid::MAX_SIZE;
use crate::oracle::{expected_size, variance_size, OracleConfig};
use crate::sampler::{Class, FreeSampler, MultisetSampler};
use crate::target::{BoltzmannParam, TargetSpec};

/// Default significance level of a single test.
pub const SIGNIFICANCE: f64 = 1e-3;

// Trials per independent substream; fixed so results do not depend on the thread count.
const CHUNK: u64 = 1 << 14;

/// Pearson chi-square test that `samples` are uniform over `classes`.
pub fn chi_square_uniformity<K, I>(
    name: &str,
    samples: I,
    classes: &[K],
    alpha: f64,
    seed: u64,
) -> Result<TestReport>
where
    K: Eq + Hash,
    I: IntoIterator<Item = K>,
{
    if classes.is_empty() || !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(
            "need classes and alpha in (0, 1)".into(),
        ));
    }
    let mut counts: HashMap<&K, u64> = classes.iter().map(|k| (k, 0)).collect();
    let mut total = 0u64;
    for s in samples {
        *counts.get_mut(&s).ok_or(Error::UnknownClass)? += 1;
        total += 1;
    }
    let expected = total as f64 / classes.len() as f64;
    let statistic = if total == 0 {
        0.0
    } else {
        counts
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum()
    };
    let df = (classes.len() - 1) as f64;
    let threshold = if df == 0.0 {
        0.0
    } else {
        ChiSquared::new(df)
            .expect("positive degrees of freedom")
            .inverse_cdf(1.0 - alpha)
    };
    Ok(TestReport::new(name, statistic, threshold, total, seed))
}

/// Wilson score interval for `hits` successes in `trials` at `z` standard
/// deviations.
pub fn wilson_interval(hits: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Runs `trials` calls of `f` split over independent substreams, on up to
/// `jobs` threads, and folds the per-chunk results with `merge`.
pub(crate) fn farm<T, F>(
    trials: u64,
    rng: &mut RandomSource,
    jobs: usize,
    init: T,
    f: F,
    merge: fn(T, T) -> T,
) -> T
where
    T: Send,
    F: Fn(&mut RandomSource, u64) -> T + Sync,
{
    let base = rng.next_u64();
    let chunks = trials.div_ceil(CHUNK);
    let run = |c: u64| {
        let len = CHUNK.min(trials - c * CHUNK);
        f(&mut RandomSource::new(base, c), len)
    };
    let jobs = jobs.max(1).min(chunks.max(1) as usize);
    if jobs == 1 {
        return (0..chunks).map(run).fold(init, merge);
    }
    let mut parts: Vec<(u64, T)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs as u64)
            .map(|t| {
                let run = &run;
                s.spawn(move || {
                    (t..chunks)
                        .step_by(jobs)
                        .map(|c| (c, run(c)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    // merge in chunk order so floating-point sums are reproducible
    parts.sort_by_key(|(c, _)| *c);
    parts.into_iter().map(|(_, t)| t).fold(init, merge)
}

pub(crate) fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

/// Measured fraction of free draws landing in a target window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcceptanceEstimate {
    pub hits: u64,
    pub trials: u64,
    pub rate: f64,
    /// Standard error of `rate`.
    pub std_error: f64,
    /// 95% Wilson interval.
    pub wilson: (f64, f64),
}

impl AcceptanceEstimate {
    /// Distance from `p` in units of the binomial standard deviation at `p`.
    pub fn z_score(&self, p: f64) -> f64 {
        let sd = (p * (1.0 - p) / self.trials as f64).sqrt();
        (self.rate - p) / sd
    }
}

/// Fraction of `trials` free draws of `class` at `x` whose size lies in the
/// window of `spec`.
pub fn acceptance_probe(
    class: &Class,
    spec: &TargetSpec,
    x: f64,
    trials: u64,
    rng: &mut RandomSource,
) -> Result<AcceptanceEstimate> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let sampler = FreeSampler::new(class, BoltzmannParam::new(x)?, &OracleConfig::default())?;
    let (lo, hi) = spec.window();
    let hits = farm(
        trials,
        rng,
        default_jobs(),
        0u64,
        |rng, len| {
            (0..len)
                .filter(|_| sampler.draw_size(rng, hi).is_some_and(|s| s >= lo))
                .count() as u64
        },
        |a, b| a + b,
    );
    let rate = hits as f64 / trials as f64;
    Ok(AcceptanceEstimate {
        hits,
        trials,
        rate,
        std_error: (rate * (1.0 - rate) / trials as f64).sqrt(),
        wilson: wilson_interval(hits, trials, 1.959_963_984_540_054),
    })
}

/// Empirical size moments of the free unconstrained sampler.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub trials: u64,
    pub mean: f64,
    pub variance: f64,
    pub expected_mean: f64,
    pub expected_variance: f64,
    /// `(mean - expected_mean) / sqrt(expected_variance / trials)`.
    pub z_mean: f64,
}

/// Mean and variance of the size over `trials` free draws at `x`.
pub fn moment_probe(x: f64, trials: u64, rng: &mut RandomSource) -> Result<MomentEstimate> {
    if trials < 2 {
        return Err(Error::InvalidArgument("trials must be at least 2".into()));
    }
    let cfg = OracleConfig::default();
    let sampler = MultisetSampler::new(BoltzmannParam::new(x)?, &cfg)?;
    let expected_mean = expected_size(x, &cfg)?;
    let expected_variance = variance_size(x, &cfg)?;
    // sums of (size - expected_mean) and its square, for stability
    let (s1, s2) = farm(
        trials,
        rng,
        default_jobs(),
        (0.0f64, 0.0f64),
        |rng, len| {
            let mut acc = (0.0, 0.0);
            for _ in 0..len {
                let size = sampler
                    .draw(rng, MAX_SIZE, |_, _, _| {})
                    .unwrap_or(MAX_SIZE);
                let d = size as f64 - expected_mean;
                acc.0 += d;
                acc.1 += d * d;
            }
            acc
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    let n = trials as f64;
    let shift = s1 / n;
    let mean = expected_mean + shift;
    let variance = (s2 - n * shift * shift) / (n - 1.0);
    Ok(MomentEstimate {
        trials,
        mean,
        variance,
        expected_mean,
        expected_variance,
        z_mean: shift / (expected_variance / n).sqrt(),
    })
}

/// Two-sided normal critical value for `alpha`.
pub(crate) fn z_critical(alpha: f64) -> f64 {
    Normal::standard().inverse_cdf(1.0 - alpha / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_square_basics() {
        let classes = [0u8, 1, 2, 3];
        let even = (0..400).map(|i| (i % 4) as u8);
        let r = chi_square_uniformity("even", even, &classes, SIGNIFICANCE, 0).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert!(r.passed);
        // df = 3 at 0.001
        assert!((r.threshold - 16.266_236).abs() < 1e-5);
        let skewed = (0..400).map(|i| if i < 300 { 0u8 } else { (i % 4) as u8 });
        assert!(
            !chi_square_uniformity("skewed", skewed, &classes, SIGNIFICANCE, 0)
                .unwrap()
                .passed
        );
        let stray = [7u8].into_iter();
        assert_eq!(
            chi_square_uniformity("stray", stray, &classes, SIGNIFICANCE, 0),
            Err(Error::UnknownClass)
        );
    }

    #[test]
    fn wilson_contains_rate() {
        let (lo, hi) = wilson_interval(30, 1000, 1.96);
        assert!(lo < 0.03 && 0.03 < hi);
        assert_eq!(wilson_interval(0, 10, 1.96).0, 0.0);
    }

    #[test]
    fn farm_is_thread_count_independent() {
        let count = |rng: &mut RandomSource, len: u64| (0..len).map(|_| rng.below(7)).sum::<u64>();
        let a = farm(
            100_000,
            &mut RandomSource::new(5, 0),
            1,
            0,
            count,
            |a, b| a + b,
        );
        let b = farm(
            100_000,
            &mut RandomSource::new(5, 0),
            4,
            0,
            count,
            |a, b| a + b,
        );
        assert_eq!(a, b);
    }

    #[test]
    fn boxed_single_cell_rate() {
        // P(size = 100) = x^100 (1 - x)
        let mut rng = RandomSource::new(11, 0);
        let spec = TargetSpec::exact(100).unwrap();
        let est =
            acceptance_probe(&Class::Boxed { a: 1, b: 1 }, &spec, 0.99, 400_000, &mut rng).unwrap();
        let p = 0.99f64.powi(100) * 0.01;
        assert!((p - 0.003_660).abs() < 1e-6);
        assert!(est.z_score(p).abs() < 4.0);
    }

    #[test]
    fn small_x_mean_vanishes() {
        let m = moment_probe(1e-4, 10_000, &mut RandomSource::new(1, 0)).unwrap();
        assert!(m.mean < 0.01);
        assert!(m.z_mean.abs() < 5.0);
    }
}
