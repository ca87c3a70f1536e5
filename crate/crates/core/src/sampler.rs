//! Free Boltzmann samplers for multiset diagrams and the targeted
//! (rejection) samplers built on them.
//!
//! A targeted sampler draws free objects until the size lands in the target
//! window. Attempts that overshoot the window are abandoned as soon as their
//! running size exceeds it; this changes nothing about the accepted law since
//! such attempts would be rejected anyway.

use crate::dist::{self, MaxIndex, RandomSource};
use crate::domain::{IndexDomain, SkewFilling};
use crate::error::{Error, Result};
use crate::grid::{Diagram, PlanePartition, MAX_SIZE};
use crate::oracle::{self, OracleConfig};
use crate::pak::{pak_forward, pak_forward_skew, TransformStats};
use crate::target::{BoltzmannParam, TargetSpec};
use crate::verify::enumerate;

/// Unconstrained targets at or below this size are drawn by enumeration,
/// where `xi_n` is degenerate.
pub const SMALL_N: u64 = 3;

/// Which plane partitions to draw.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Class {
    Unconstrained,
    Boxed { a: usize, b: usize },
    Skew(IndexDomain),
}

impl Class {
    /// The index domain of a boxed or skew class.
    pub fn domain(&self) -> Option<IndexDomain> {
        match self {
            Class::Unconstrained => None,
            Class::Boxed { a, b } => IndexDomain::rectangle(*a, *b).ok(),
            Class::Skew(d) => Some(d.clone()),
        }
    }
}

/// How boxed and skew samplers pick `x` for a target size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Tuning {
    /// `1 - |D| / n`, accurate only when `n >> |D|`.
    ClosedForm,
    /// The root of the target-size equation.
    #[default]
    Solve,
}

#[derive(Debug, Clone, Default)]
pub struct SamplerOptions {
    /// Abort with [`Error::AttemptsExhausted`] after this many attempts.
    pub max_attempts: Option<u64>,
    /// Use this Boltzmann parameter instead of the tuned one.
    pub x_override: Option<f64>,
    pub tuning: Tuning,
    pub oracle: OracleConfig,
}

/// An accepted sample together with how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport<T> {
    pub result: T,
    pub size: u64,
    /// `None` when the sample came from direct enumeration.
    pub x_used: Option<f64>,
    pub rejections: u64,
    pub seed: u64,
    pub stream: u64,
    pub transform: Option<TransformStats>,
}

/// Boltzmann sampler for multisets of `Z x N^2` (unconstrained diagrams).
#[derive(Debug, Clone)]
pub struct MultisetSampler {
    table: MaxIndex,
}

impl MultisetSampler {
    pub fn new(x: BoltzmannParam, cfg: &OracleConfig) -> Result<MultisetSampler> {
        Ok(MultisetSampler {
            table: MaxIndex::new(x, cfg)?,
        })
    }

    pub fn x(&self) -> f64 {
        self.table.x()
    }

    pub fn max_index(&self) -> &MaxIndex {
        &self.table
    }

    /// Draws one multiset, reporting each block as `emit(i, j, k)` (add `k`
    /// at `(i, j)`). Returns the size, or `None` once it exceeds `ceiling`.
    pub(crate) fn draw(
        &self,
        rng: &mut RandomSource,
        ceiling: u64,
        mut emit: impl FnMut(usize, usize, u64),
    ) -> Option<u64> {
        let k0 = self.table.sample(rng);
        let ln_x = self.table.ln_x();
        let mut size = 0u64;
        for k in 1..=k0 {
            let rate = self.table.rate(k);
            let blocks = if k < k0 {
                dist::poisson_unchecked(rate, rng)
            } else {
                dist::poisson_positive_unchecked(rate, rng)
            };
            let ln_xk = k as f64 * ln_x;
            for _ in 0..blocks {
                let i = dist::geometric_ln(ln_xk, rng);
                let j = dist::geometric_ln(ln_xk, rng);
                let hook = i.saturating_add(j).saturating_add(1);
                size = size.saturating_add(k.saturating_mul(hook));
                if size > ceiling {
                    return None;
                }
                emit(i as usize, j as usize, k);
            }
        }
        Some(size)
    }

    /// One free draw.
    pub fn sample(&self, rng: &mut RandomSource) -> Result<Diagram> {
        let mut cells = Vec::new();
        self.draw(rng, MAX_SIZE, |i, j, k| cells.push((i, j, k)))
            .ok_or(Error::SizeOverflow { limit: MAX_SIZE })?;
        Diagram::from_cells(cells)
    }
}

/// Boltzmann sampler for diagrams supported on an index domain: one
/// independent geometric of parameter `x^h` per cell of hook length `h`.
#[derive(Debug, Clone)]
pub struct CellSampler {
    domain: IndexDomain,
    x: f64,
    // (row-major offset in the bounding rectangle, hook, ln x^hook)
    cells: Vec<(usize, u64, f64)>,
}

impl CellSampler {
    pub fn new(domain: IndexDomain, x: BoltzmannParam) -> CellSampler {
        let ln_x = x.get().ln();
        let b = domain.b();
        let cells = domain
            .cells()
            .map(|(i, j)| {
                let h = domain.hook_unchecked(i, j);
                (i * b + j, h, h as f64 * ln_x)
            })
            .collect();
        CellSampler {
            domain,
            x: x.get(),
            cells,
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn domain(&self) -> &IndexDomain {
        &self.domain
    }

    /// Draws all cells into `values` (row-major over the bounding rectangle,
    /// when given). Returns the weighted size or `None` past `ceiling`.
    pub(crate) fn draw(
        &self,
        rng: &mut RandomSource,
        ceiling: u64,
        mut values: Option<&mut [u64]>,
    ) -> Option<u64> {
        let mut size = 0u64;
        for &(offset, hook, ln_xh) in &self.cells {
            let m = dist::geometric_ln(ln_xh, rng);
            size = size.saturating_add(m.saturating_mul(hook));
            if size > ceiling {
                return None;
            }
            if let Some(v) = values.as_deref_mut() {
                v[offset] = m;
            }
        }
        Some(size)
    }

    fn fresh_values(&self) -> Vec<u64> {
        vec![0; self.domain.a() * self.domain.b()]
    }

    pub fn sample_filling(&self, rng: &mut RandomSource) -> Result<SkewFilling> {
        let mut values = self.fresh_values();
        self.draw(rng, MAX_SIZE, Some(&mut values))
            .ok_or(Error::SizeOverflow { limit: MAX_SIZE })?;
        Ok(SkewFilling::from_raw(self.domain.clone(), values))
    }

    pub fn sample_diagram(&self, rng: &mut RandomSource) -> Result<Diagram> {
        let mut values = self.fresh_values();
        self.draw(rng, MAX_SIZE, Some(&mut values))
            .ok_or(Error::SizeOverflow { limit: MAX_SIZE })?;
        Diagram::from_dense(self.domain.a(), self.domain.b(), values)
    }
}

/// Free sampler of either kind, used by probes that only need sizes.
#[derive(Debug, Clone)]
pub enum FreeSampler {
    Multiset(MultisetSampler),
    Cells(CellSampler),
}

impl FreeSampler {
    pub fn new(class: &Class, x: BoltzmannParam, cfg: &OracleConfig) -> Result<FreeSampler> {
        Ok(match class.domain() {
            None => FreeSampler::Multiset(MultisetSampler::new(x, cfg)?),
            Some(d) => FreeSampler::Cells(CellSampler::new(d, x)),
        })
    }

    /// Size of one free draw, or `None` once it exceeds `ceiling`.
    pub fn draw_size(&self, rng: &mut RandomSource, ceiling: u64) -> Option<u64> {
        match self {
            FreeSampler::Multiset(s) => s.draw(rng, ceiling, |_, _, _| {}),
            FreeSampler::Cells(s) => s.draw(rng, ceiling, None),
        }
    }
}

/// Free Boltzmann sampler for unconstrained diagrams.
pub fn gamma_m(x: f64, rng: &mut RandomSource) -> Result<Diagram> {
    MultisetSampler::new(BoltzmannParam::new(x)?, &OracleConfig::default())?.sample(rng)
}

/// Free Boltzmann sampler for diagrams inside `[0..a-1] x [0..b-1]`.
pub fn gamma_m_boxed(a: usize, b: usize, x: f64, rng: &mut RandomSource) -> Result<Diagram> {
    CellSampler::new(IndexDomain::rectangle(a, b)?, BoltzmannParam::new(x)?).sample_diagram(rng)
}

/// Free Boltzmann sampler for skew diagrams on `dom`.
pub fn gamma_m_skew(dom: &IndexDomain, x: f64, rng: &mut RandomSource) -> Result<SkewFilling> {
    CellSampler::new(dom.clone(), BoltzmannParam::new(x)?).sample_filling(rng)
}

struct Acceptance {
    size: u64,
    rejections: u64,
}

/// Calls `attempt(rng, hi)` until it returns a size inside the window.
/// `attempt` returns `None` for draws it abandoned above `hi`; its errors
/// end the loop.
fn reject_until(
    spec: &TargetSpec,
    max_attempts: Option<u64>,
    rng: &mut RandomSource,
    mut attempt: impl FnMut(&mut RandomSource, u64) -> Result<Option<u64>>,
) -> Result<Acceptance> {
    let (lo, hi) = spec.window();
    let mut attempts = 0u64;
    let (mut min_seen, mut max_seen) = (u64::MAX, 0u64);
    loop {
        if max_attempts.is_some_and(|cap| attempts >= cap) {
            return Err(Error::AttemptsExhausted {
                attempts,
                min_seen,
                max_seen,
            });
        }
        attempts += 1;
        match attempt(rng, hi)? {
            Some(size) if size >= lo => {
                return Ok(Acceptance {
                    size,
                    rejections: attempts - 1,
                })
            }
            Some(size) => {
                min_seen = min_seen.min(size);
                max_seen = max_seen.max(size);
            }
            None => max_seen = max_seen.max(hi.saturating_add(1)),
        }
    }
}

/// Generic rejection loop: calls `generator` until `size_of` lands in the
/// target window. Each size in the window is reached with its Boltzmann
/// weight, so the accepted object is uniform given its size.
pub fn sample_targeted<T>(
    mut generator: impl FnMut(&mut RandomSource) -> Result<T>,
    size_of: impl Fn(&T) -> u64,
    spec: &TargetSpec,
    x: f64,
    rng: &mut RandomSource,
    max_attempts: Option<u64>,
) -> Result<SampleReport<T>> {
    BoltzmannParam::new(x)?;
    let mut last = None;
    let acc = reject_until(spec, max_attempts, rng, |rng, hi| {
        let obj = generator(rng)?;
        let size = size_of(&obj);
        last = Some(obj);
        Ok((size <= hi).then_some(size))
    })?;
    Ok(SampleReport {
        result: last.expect("accepted attempt produced an object"),
        size: acc.size,
        x_used: Some(x),
        rejections: acc.rejections,
        seed: rng.seed(),
        stream: rng.stream(),
        transform: None,
    })
}

fn by_enumeration(
    spec: &TargetSpec,
    rng: &mut RandomSource,
) -> Result<SampleReport<PlanePartition>> {
    let (lo, hi) = spec.window();
    let mut pool = Vec::new();
    for n in lo..=hi {
        pool.extend(enumerate::enumerate_partitions(n)?);
    }
    let pick = pool.swap_remove(rng.below(pool.len() as u64) as usize);
    Ok(SampleReport {
        size: pick.size(),
        result: pick,
        x_used: None,
        rejections: 0,
        seed: rng.seed(),
        stream: rng.stream(),
        transform: None,
    })
}

/// Uniform plane partition of size `spec.n()` (exact mode) or uniform within
/// each size of the window (approximate mode).
pub fn sample_partitions(
    spec: &TargetSpec,
    rng: &mut RandomSource,
    opts: &SamplerOptions,
) -> Result<SampleReport<PlanePartition>> {
    let x = match opts.x_override {
        Some(x) => x,
        None if spec.n() <= SMALL_N => return by_enumeration(spec, rng),
        None => oracle::xi_unconstrained(spec.n())?,
    };
    let sampler = MultisetSampler::new(BoltzmannParam::new(x)?, &opts.oracle)?;
    let mut cells = Vec::new();
    let acc = reject_until(spec, opts.max_attempts, rng, |rng, hi| {
        cells.clear();
        Ok(sampler.draw(rng, hi, |i, j, k| cells.push((i, j, k))))
    })?;
    let diagram = Diagram::from_cells(cells)?;
    let (partition, stats) = pak_forward(&diagram);
    Ok(SampleReport {
        result: partition,
        size: acc.size,
        x_used: Some(x),
        rejections: acc.rejections,
        seed: rng.seed(),
        stream: rng.stream(),
        transform: Some(stats),
    })
}

fn domain_parameter(dom: &IndexDomain, spec: &TargetSpec, opts: &SamplerOptions) -> Result<f64> {
    match (opts.x_override, opts.tuning) {
        (Some(x), _) => Ok(x),
        (None, Tuning::ClosedForm) => oracle::xi_domain(dom, spec.n()),
        (None, Tuning::Solve) => oracle::solve_target_equation(dom, spec.n()),
    }
}

fn sample_on_domain(
    dom: IndexDomain,
    spec: &TargetSpec,
    rng: &mut RandomSource,
    opts: &SamplerOptions,
) -> Result<(CellSampler, Vec<u64>, Acceptance)> {
    let x = domain_parameter(&dom, spec, opts)?;
    let sampler = CellSampler::new(dom, BoltzmannParam::new(x)?);
    let mut values = sampler.fresh_values();
    let acc = reject_until(spec, opts.max_attempts, rng, |rng, hi| {
        Ok(sampler.draw(rng, hi, Some(&mut values)))
    })?;
    Ok((sampler, values, acc))
}

/// Uniform `(a x b)`-boxed plane partitions of the target size(s).
pub fn sample_partitions_boxed(
    a: usize,
    b: usize,
    spec: &TargetSpec,
    rng: &mut RandomSource,
    opts: &SamplerOptions,
) -> Result<SampleReport<PlanePartition>> {
    let (sampler, values, acc) = sample_on_domain(IndexDomain::rectangle(a, b)?, spec, rng, opts)?;
    let diagram = Diagram::from_dense(a, b, values)?;
    let (partition, stats) = pak_forward(&diagram);
    Ok(SampleReport {
        result: partition,
        size: acc.size,
        x_used: Some(sampler.x()),
        rejections: acc.rejections,
        seed: rng.seed(),
        stream: rng.stream(),
        transform: Some(stats),
    })
}

/// Uniform skew plane partitions on `dom` of the target size(s).
pub fn sample_partitions_skew(
    dom: &IndexDomain,
    spec: &TargetSpec,
    rng: &mut RandomSource,
    opts: &SamplerOptions,
) -> Result<SampleReport<SkewFilling>> {
    let (sampler, values, acc) = sample_on_domain(dom.clone(), spec, rng, opts)?;
    let diagram = SkewFilling::from_raw(dom.clone(), values);
    let (partition, stats) = pak_forward_skew(&diagram);
    Ok(SampleReport {
        result: partition,
        size: acc.size,
        x_used: Some(sampler.x()),
        rejections: acc.rejections,
        seed: rng.seed(),
        stream: rng.stream(),
        transform: Some(stats),
    })
}
