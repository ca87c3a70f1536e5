//! Seedable randomness and the discrete laws the Boltzmann samplers draw from.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::oracle::{self, OracleConfig};
use crate::target::BoltzmannParam;

/// Rates above this are split into independent chunks, since `e^-lambda`
/// underflows near 745.
pub const POISSON_CHUNK: f64 = 500.0;

/// A deterministic generator keyed by `(seed, stream)`. Distinct streams of
/// one seed are independent.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: ChaCha8Rng,
    seed: u64,
    stream: u64,
}

impl RandomSource {
    pub fn new(seed: u64, stream: u64) -> RandomSource {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RandomSource { rng, seed, stream }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// A fresh source on another stream of the same seed.
    pub fn substream(&self, stream: u64) -> RandomSource {
        RandomSource::new(self.seed, stream)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on the open interval `(0, 1)`: 53-bit midpoints, never 0 or 1.
    #[inline]
    pub fn uniform01(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * SCALE
    }

    /// Uniform index in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        // Lemire's nearly-divisionless rejection
        let zone = n.wrapping_neg() % n;
        loop {
            let m = (self.rng.next_u64() as u128) * (n as u128);
            if (m as u64) >= zone {
                return (m >> 64) as u64;
            }
        }
    }
}

/// `floor(ln u / ln x)` given `ln x` (which is `-inf` for `x = 0`).
#[inline]
pub(crate) fn geometric_from_uniform(ln_x: f64, u: f64) -> u64 {
    if ln_x == f64::NEG_INFINITY {
        return 0;
    }
    // Saturating float-to-int cast.
    (u.ln() / ln_x).floor() as u64
}

#[inline]
pub(crate) fn geometric_ln(ln_x: f64, rng: &mut RandomSource) -> u64 {
    geometric_from_uniform(ln_x, rng.uniform01())
}

/// Geometric law `P(k) = x^k (1 - x)` on `k >= 0`.
pub fn geometric(x: f64, rng: &mut RandomSource) -> Result<u64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::InvalidArgument(format!(
            "geometric parameter must lie in [0, 1), got {x}"
        )));
    }
    Ok(geometric_ln(x.ln(), rng))
}

/// Sequential CDF inversion starting at `k = first` with mass `p_first`.
#[inline]
fn invert_sequential(lambda: f64, first: u64, p_first: f64, u: f64) -> u64 {
    let mut k = first;
    let mut p = p_first;
    let mut s = p;
    while s < u {
        k += 1;
        p *= lambda / k as f64;
        s += p;
        // Rounding can leave s just short of u; the remaining mass is then negligible.
        if p <= s * 1e-18 && k as f64 > lambda {
            break;
        }
    }
    k
}

fn check_rate(lambda: f64) -> Result<()> {
    if lambda >= 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "Poisson rate must be finite and non-negative, got {lambda}"
        )))
    }
}

#[inline]
pub(crate) fn poisson_unchecked(lambda: f64, rng: &mut RandomSource) -> u64 {
    if lambda == 0.0 {
        return 0;
    }
    if lambda <= POISSON_CHUNK {
        return invert_sequential(lambda, 0, (-lambda).exp(), rng.uniform01());
    }
    let chunks = (lambda / POISSON_CHUNK).ceil();
    let part = lambda / chunks;
    let p0 = (-part).exp();
    (0..chunks as u64)
        .map(|_| invert_sequential(part, 0, p0, rng.uniform01()))
        .sum()
}

/// Poisson law `P(k) = e^-lambda lambda^k / k!`.
pub fn poisson(lambda: f64, rng: &mut RandomSource) -> Result<u64> {
    check_rate(lambda)?;
    Ok(poisson_unchecked(lambda, rng))
}

#[inline]
pub(crate) fn poisson_positive_unchecked(lambda: f64, rng: &mut RandomSource) -> u64 {
    if lambda <= POISSON_CHUNK {
        // P(1) = lambda / (e^lambda - 1)
        return invert_sequential(lambda, 1, lambda / lambda.exp_m1(), rng.uniform01());
    }
    loop {
        let k = poisson_unchecked(lambda, rng);
        if k > 0 {
            return k;
        }
    }
}

/// Zero-truncated Poisson law `P(k) = lambda^k / (k! (e^lambda - 1))` on `k >= 1`.
pub fn poisson_positive(lambda: f64, rng: &mut RandomSource) -> Result<u64> {
    check_rate(lambda)?;
    if lambda == 0.0 {
        return Err(Error::InvalidArgument(
            "positive Poisson needs lambda > 0".into(),
        ));
    }
    Ok(poisson_positive_unchecked(lambda, rng))
}

/// The law of the largest block multiplicity in a Boltzmann multiset of
/// `Z x Seq(Z)^2`: `P(K <= k) = exp(-sum_{j > k} A(x^j) / j)`.
///
/// Rates and tail sums are tabulated once per parameter; sampling is then a
/// binary search over the cumulative distribution.
#[derive(Debug, Clone)]
pub struct MaxIndex {
    x: f64,
    ln_x: f64,
    // rates[k] = A(x^k) / k, index 0 unused
    rates: Vec<f64>,
    // tails[k] = sum_{k < j <= J} rates[j]
    tails: Vec<f64>,
}

impl MaxIndex {
    pub fn new(x: BoltzmannParam, cfg: &OracleConfig) -> Result<MaxIndex> {
        let x = x.get();
        let big_j = oracle::series_truncation(x, cfg)? as usize;
        let ln_x = x.ln();
        let mut rates = vec![0.0; big_j + 1];
        for (k, r) in rates.iter_mut().enumerate().skip(1) {
            *r = oracle::block_rate(ln_x, k as u64);
        }
        let mut tails = vec![0.0; big_j + 1];
        for k in (0..big_j).rev() {
            tails[k] = tails[k + 1] + rates[k + 1];
        }
        Ok(MaxIndex {
            x,
            ln_x,
            rates,
            tails,
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub(crate) fn ln_x(&self) -> f64 {
        self.ln_x
    }

    /// Truncation index: `P(K > J)` is below the oracle tolerance.
    pub fn truncation(&self) -> u64 {
        (self.tails.len() - 1) as u64
    }

    /// `A(x^k) / k`.
    #[inline]
    pub fn rate(&self, k: u64) -> f64 {
        match self.rates.get(k as usize) {
            Some(&r) if k > 0 => r,
            _ => oracle::block_rate(self.ln_x, k),
        }
    }

    /// `sum_{j > k} A(x^j) / j`.
    pub fn tail(&self, k: u64) -> f64 {
        self.tails.get(k as usize).copied().unwrap_or(0.0)
    }

    /// `P(K <= k)`.
    pub fn cdf(&self, k: u64) -> f64 {
        (-self.tail(k)).exp()
    }

    /// `ln M(x)`, equal to `tail(0)`.
    pub fn log_m(&self) -> f64 {
        self.tails[0]
    }

    /// Smallest `k` with `P(K <= k) >= U`.
    pub fn sample(&self, rng: &mut RandomSource) -> u64 {
        let u = rng.uniform01();
        self.tails.partition_point(|&t| (-t).exp() < u) as u64
    }
}

/// One draw from [`MaxIndex`] (builds the table; reuse a `MaxIndex` for repeated draws).
pub fn max_index(x: f64, rng: &mut RandomSource) -> Result<u64> {
    let table = MaxIndex::new(BoltzmannParam::new(x)?, &OracleConfig::default())?;
    Ok(table.sample(rng))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean_var(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let m = xs.iter().sum::<f64>() / n;
        let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
        (m, v)
    }

    #[test]
    fn uniform_golden_and_reproducible() {
        let mut a = RandomSource::new(42, 0);
        let mut b = RandomSource::new(42, 0);
        let first = a.uniform01();
        assert_eq!(first, b.uniform01());
        assert_eq!(first, GOLDEN_SEED42_STREAM0);
        let mut c = RandomSource::new(42, 1);
        assert_ne!(first, c.uniform01());
    }

    const GOLDEN_SEED42_STREAM0: f64 = 0.681_896_192_306_671_5;

    #[test]
    fn uniform_moments_and_open_interval() {
        let mut rng = RandomSource::new(1, 0);
        let mut sum = 0.0;
        let n = 1_000_000;
        for _ in 0..n {
            let u = rng.uniform01();
            assert!(u > 0.0 && u < 1.0);
            sum += u;
        }
        assert!((sum / n as f64 - 0.5).abs() < 0.002);
    }

    #[test]
    fn geometric_closed_form() {
        assert_eq!(geometric_from_uniform(0.5f64.ln(), 0.25), 2);
        for u in [0.5000001, 0.7, 0.999_999] {
            assert_eq!(geometric_from_uniform(0.5f64.ln(), u), 0);
        }
        let mut rng = RandomSource::new(3, 0);
        for _ in 0..100 {
            assert_eq!(geometric(0.0, &mut rng).unwrap(), 0);
        }
        assert!(geometric(1.0, &mut rng).is_err());
        assert!(geometric(-0.1, &mut rng).is_err());
    }

    #[test]
    fn geometric_mean() {
        let mut rng = RandomSource::new(5, 0);
        let n = 1_000_000;
        let xs: Vec<f64> = (0..n)
            .map(|_| geometric(0.9, &mut rng).unwrap() as f64)
            .collect();
        let (m, _) = mean_var(&xs);
        // mean x / (1 - x) = 9, variance x / (1 - x)^2 = 90
        let sigma = (90.0f64 / n as f64).sqrt();
        assert!((m - 9.0).abs() < 3.0 * sigma, "{m}");
    }

    #[test]
    fn poisson_moments() {
        let mut rng = RandomSource::new(11, 0);
        assert_eq!(poisson(0.0, &mut rng).unwrap(), 0);
        assert!(poisson(-1.0, &mut rng).is_err());
        assert!(poisson(f64::INFINITY, &mut rng).is_err());

        let n = 1_000_000;
        let xs: Vec<f64> = (0..n)
            .map(|_| poisson(2.0, &mut rng).unwrap() as f64)
            .collect();
        let (m, _) = mean_var(&xs);
        assert!((m - 2.0).abs() < 0.005, "{m}");

        let lambda = 5_400.0;
        let n = 20_000;
        let xs: Vec<f64> = (0..n)
            .map(|_| poisson(lambda, &mut rng).unwrap() as f64)
            .collect();
        let (m, v) = mean_var(&xs);
        let sd_mean = (lambda / n as f64).sqrt();
        // Var of the sample variance of a Poisson ~ (lambda + 2 lambda^2 (n/(n-1))) / n
        let sd_var = ((lambda + 2.0 * lambda * lambda) / n as f64).sqrt();
        assert!((m - lambda).abs() < 3.0 * sd_mean, "{m}");
        assert!((v - lambda).abs() < 3.0 * sd_var, "{v}");
    }

    #[test]
    fn positive_poisson() {
        let mut rng = RandomSource::new(13, 0);
        assert!(poisson_positive(0.0, &mut rng).is_err());
        let n = 1_000_000;
        let mut ones = 0u64;
        for _ in 0..n {
            let k = poisson_positive(0.1, &mut rng).unwrap();
            assert!(k >= 1);
            ones += (k == 1) as u64;
        }
        let p1 = 0.1 / 0.1f64.exp_m1();
        let sigma = (p1 * (1.0 - p1) / n as f64).sqrt();
        assert!(((ones as f64 / n as f64) - p1).abs() < 3.0 * sigma);

        for lambda in [30.0, 800.0] {
            let n = 20_000;
            let mean = (0..n)
                .map(|_| poisson_positive(lambda, &mut rng).unwrap() as f64)
                .sum::<f64>()
                / n as f64;
            let expected = lambda / (1.0 - (-lambda).exp());
            assert!((mean - expected).abs() < 3.0 * (lambda / n as f64).sqrt());
        }
    }

    #[test]
    fn max_index_cdf_matches_direct_tails() {
        let cfg = OracleConfig::default();
        for x in [0.3, 0.6, 0.9] {
            let t = MaxIndex::new(BoltzmannParam::new(x).unwrap(), &cfg).unwrap();
            let mut prev = 0.0;
            for k in 0..=100u64 {
                // direct forward summation of the tail
                let mut direct = 0.0;
                let mut j = k + 1;
                loop {
                    let r = oracle::block_rate(x.ln(), j);
                    direct += r;
                    if r < 1e-20 {
                        break;
                    }
                    j += 1;
                }
                let cdf = t.cdf(k);
                assert!((cdf - (-direct).exp()).abs() < 1e-12, "x={x} k={k}");
                assert!(cdf >= prev);
                prev = cdf;
            }
            assert!((t.cdf(t.truncation()) - 1.0).abs() < 1e-15);
            let lm = oracle::log_m(x, &cfg).unwrap();
            assert!((t.log_m() - lm).abs() < 1e-12 * lm);
        }
    }

    #[test]
    fn max_index_zero_frequency() {
        let t = MaxIndex::new(BoltzmannParam::new(0.5).unwrap(), &OracleConfig::default()).unwrap();
        let p0 = 1.0 / 10.032_129_775_337_715;
        assert!((t.cdf(0) - p0).abs() < 1e-12);
        let mut rng = RandomSource::new(17, 0);
        let n = 1_000_000;
        let zeros = (0..n).filter(|_| t.sample(&mut rng) == 0).count() as f64;
        let sigma = (p0 * (1.0 - p0) / n as f64).sqrt();
        assert!((zeros / n as f64 - p0).abs() < 3.0 * sigma);

        let tiny =
            MaxIndex::new(BoltzmannParam::new(1e-6).unwrap(), &OracleConfig::default()).unwrap();
        assert!(tiny.cdf(0) > 0.999_998);
    }

    #[test]
    fn below_is_uniform_and_bounded() {
        let mut rng = RandomSource::new(19, 0);
        let mut counts = [0u32; 7];
        for _ in 0..70_000 {
            counts[rng.below(7) as usize] += 1;
        }
        for c in counts {
            assert!((c as f64 - 10_000.0).abs() < 400.0);
        }
    }
}
