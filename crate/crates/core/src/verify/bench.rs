//! Wall-clock scaling of the targeted samplers.

use std::time::{Duration, Instant};

use crate::dist::RandomSource;
use crate::error::{Error, Result};
use crate::sampler::{
    sample_partitions, sample_partitions_boxed, sample_partitions_skew, Class, SamplerOptions,
};
use crate::target::TargetSpec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BenchMode {
    Exact,
    Approximate(f64),
}

impl BenchMode {
    fn spec(self, n: u64) -> Result<TargetSpec> {
        match self {
            BenchMode::Exact => TargetSpec::exact(n),
            BenchMode::Approximate(eps) => TargetSpec::approximate(n, eps),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub n: u64,
    pub median_time: Duration,
    pub median_rejections: u64,
    pub max_hook_length: u64,
    pub runs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingTable {
    pub rows: Vec<ScalingRow>,
    /// Least-squares slope of log time against log n; `None` for a single size.
    pub exponent: Option<f64>,
}

fn median<T: Copy + Ord>(v: &mut [T]) -> T {
    v.sort_unstable();
    v[v.len() / 2]
}

/// Least-squares slope of `ln y` on `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// Times `runs` targeted samples of `class` at each size. `sizes` must be
/// strictly increasing and `runs` at least 1 (medians are taken over runs).
pub fn bench_scaling(
    sizes: &[u64],
    mode: BenchMode,
    class: &Class,
    runs: usize,
    rng: &mut RandomSource,
) -> Result<ScalingTable> {
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "sizes must be non-empty and strictly increasing".into(),
        ));
    }
    if runs == 0 {
        return Err(Error::InvalidArgument("runs must be at least 1".into()));
    }
    let opts = SamplerOptions::default();
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let spec = mode.spec(n)?;
        let mut times = Vec::with_capacity(runs);
        let mut rejections = Vec::with_capacity(runs);
        let mut max_hook = 0;
        for _ in 0..runs {
            let start = Instant::now();
            let (rej, stats) = match class {
                Class::Unconstrained => {
                    let r = sample_partitions(&spec, rng, &opts)?;
                    (r.rejections, r.transform)
                }
                Class::Boxed { a, b } => {
                    let r = sample_partitions_boxed(*a, *b, &spec, rng, &opts)?;
                    (r.rejections, r.transform)
                }
                Class::Skew(dom) => {
                    let r = sample_partitions_skew(dom, &spec, rng, &opts)?;
                    (r.rejections, r.transform)
                }
            };
            times.push(start.elapsed());
            rejections.push(rej);
            max_hook = max_hook.max(stats.map_or(0, |s| s.max_hook_length));
        }
        rows.push(ScalingRow {
            n,
            median_time: median(&mut times),
            median_rejections: median(&mut rejections),
            max_hook_length: max_hook,
            runs,
        });
    }
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r.n as f64, r.median_time.as_secs_f64().max(1e-9)))
        .collect();
    Ok(ScalingTable {
        exponent: log_log_slope(&points),
        rows,
    })
}
