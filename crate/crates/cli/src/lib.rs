//! Library side of the `planepart` command: argument definitions, output
//! records, renderers and the command runner.

pub mod record;
pub mod render;

use std::collections::hash_map::RandomState;
use std::fs;
use std::hash::BuildHasher;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use planepart_core::oracle::{boxed_counts, exact_counts, skew_counts};
use planepart_core::sampler::{
    sample_partitions, sample_partitions_boxed, sample_partitions_skew, Tuning,
};
use planepart_core::verify::{bench_scaling, run_suite, BenchMode, Suite};
use planepart_core::{
    BoltzmannParam, Class, IndexDomain, RandomSource, SamplerOptions, TargetSpec,
};

use record::{OutputRecord, SCHEMA};

/// Largest `--upto` accepted by `count` for unconstrained partitions.
pub const COUNT_LIMIT: usize = 100_000;

#[derive(Debug, Parser)]
#[command(name = "planepart", version, about = "Uniform random plane partitions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample unconstrained plane partitions.
    Sample(SampleArgs),
    /// Sample plane partitions with base inside an a x b rectangle.
    SampleBoxed {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum, default_value = "solve")]
        tuning: TuningArg,
        #[command(flatten)]
        sample: SampleArgs,
    },
    /// Sample skew plane partitions on a staircase domain.
    SampleSkew {
        /// `AxB` followed by removed corner rectangles, e.g. `4x4-2x2-1x3`.
        #[arg(long, value_parser = parse_domain)]
        domain: IndexDomain,
        #[arg(long, value_enum, default_value = "solve")]
        tuning: TuningArg,
        #[command(flatten)]
        sample: SampleArgs,
    },
    /// Print exact counts for sizes 0..=upto, one per line.
    Count {
        #[arg(long)]
        upto: usize,
        #[arg(long, requires = "b", conflicts_with = "domain")]
        a: Option<usize>,
        #[arg(long, requires = "a")]
        b: Option<usize>,
        #[arg(long, value_parser = parse_domain)]
        domain: Option<IndexDomain>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "small")]
        suite: SuiteArg,
        #[arg(long, env = "PLANEPART_SEED")]
        seed: Option<u64>,
    },
    /// Time targeted sampling across sizes.
    Bench {
        /// Comma-separated sizes; scientific notation is accepted.
        #[arg(long, value_delimiter = ',', value_parser = parse_size, default_value = "1e4,1e5,1e6")]
        sizes: Vec<u64>,
        #[arg(long, value_enum, default_value = "approx")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        #[arg(long, default_value_t = 5)]
        runs: usize,
        #[arg(long, requires = "b")]
        a: Option<usize>,
        #[arg(long, requires = "a")]
        b: Option<usize>,
        #[arg(long, env = "PLANEPART_SEED")]
        seed: Option<u64>,
    },
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Target size.
    #[arg(long)]
    pub n: u64,
    /// Relative tolerance; without it the size is exactly n.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Override the tuned Boltzmann parameter.
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long, env = "PLANEPART_SEED")]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value = "matrix")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Number of independent samples (stream i for sample i).
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Give up after this many rejected attempts.
    #[arg(long)]
    pub max_attempts: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Matrix,
    Json,
    Cubes,
    Svg,
    Ppm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TuningArg {
    Solve,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Small,
    Stat,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Approx,
}

fn parse_domain(s: &str) -> Result<IndexDomain, String> {
    IndexDomain::parse(s).map_err(|e| e.to_string())
}

fn parse_size(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return if n > 0 {
            Ok(n)
        } else {
            Err("sizes must be positive".into())
        };
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 1.0 && v.fract() == 0.0 && v < 2f64.powi(63) => Ok(v as u64),
        _ => Err(format!("not a positive integer size: {s}")),
    }
}

/// Failure of a command, with its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments (exit 2).
    Usage(String),
    /// Runtime failure (exit 1).
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn failure(e: impl std::fmt::Display) -> CliError {
    CliError::Failure(e.to_string())
}

fn resolve_seed(seed: Option<u64>, err: &mut dyn Write) -> Result<u64, CliError> {
    match seed {
        Some(s) => Ok(s),
        None => {
            let s = RandomState::new().hash_one(std::process::id());
            writeln!(err, "seed: {s}").map_err(failure)?;
            Ok(s)
        }
    }
}

#[derive(Debug, Clone)]
enum Target {
    Unconstrained,
    Boxed(usize, usize),
    Skew(IndexDomain),
}

fn draw(
    target: &Target,
    spec: &TargetSpec,
    opts: &SamplerOptions,
    rng: &mut RandomSource,
) -> Result<OutputRecord, CliError> {
    let (rows, size, x_used, rejections) = match target {
        Target::Unconstrained => {
            let r = sample_partitions(spec, rng, opts).map_err(failure)?;
            (r.result.rows(), r.size, r.x_used, r.rejections)
        }
        Target::Boxed(a, b) => {
            let r = sample_partitions_boxed(*a, *b, spec, rng, opts).map_err(failure)?;
            (r.result.rows(), r.size, r.x_used, r.rejections)
        }
        Target::Skew(d) => {
            let r = sample_partitions_skew(d, spec, rng, opts).map_err(failure)?;
            (r.result.rows(), r.size, r.x_used, r.rejections)
        }
    };
    let rows = rows
        .into_iter()
        .map(|mut r| {
            while r.last() == Some(&0) {
                r.pop();
            }
            r
        })
        .collect();
    let (class, a, b, domain) = match target {
        Target::Unconstrained => ("unconstrained", None, None, None),
        Target::Boxed(a, b) => ("boxed", Some(*a), Some(*b), None),
        Target::Skew(d) => ("skew", None, None, Some(d.to_string())),
    };
    Ok(OutputRecord {
        schema: SCHEMA.into(),
        mode: if spec.epsilon().is_some() {
            "approximate"
        } else {
            "exact"
        }
        .into(),
        class: class.into(),
        n: spec.n(),
        epsilon: spec.epsilon(),
        a,
        b,
        domain,
        x_used,
        seed: rng.seed(),
        stream: rng.stream(),
        rejections,
        size,
        rows,
    })
}

fn draw_all(
    target: &Target,
    args: &SampleArgs,
    seed: u64,
    opts: &SamplerOptions,
) -> Result<Vec<OutputRecord>, CliError> {
    let spec = TargetSpec::new(args.n, args.epsilon).map_err(usage)?;
    let one = |i: u64| draw(target, &spec, opts, &mut RandomSource::new(seed, i));
    let jobs = args.jobs.max(1).min(args.count.max(1) as usize);
    if jobs == 1 {
        return (0..args.count).map(one).collect();
    }
    let mut parts: Vec<(u64, Result<OutputRecord, CliError>)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs as u64)
            .map(|t| {
                let one = &one;
                s.spawn(move || {
                    (t..args.count)
                        .step_by(jobs)
                        .map(|i| (i, one(i)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sampling thread panicked"))
            .collect()
    });
    parts.sort_by_key(|(i, _)| *i);
    parts.into_iter().map(|(_, r)| r).collect()
}

fn numbered(path: &Path, i: usize) -> PathBuf {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("sample");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}-{i}.{ext}"),
        None => format!("{stem}-{i}"),
    };
    path.with_file_name(name)
}

fn emit(records: &[OutputRecord], args: &SampleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let image = |r: &OutputRecord| -> Result<Vec<u8>, CliError> {
        match args.format {
            Format::Svg => render::render_svg(&r.rows)
                .map(String::into_bytes)
                .map_err(failure),
            _ => render::render_ppm(&r.rows).map_err(failure),
        }
    };
    let bytes: Vec<u8> = match args.format {
        Format::Svg | Format::Ppm if records.len() > 1 => {
            let path = args
                .out
                .as_ref()
                .ok_or_else(|| usage("--count above 1 with an image format needs --out"))?;
            for (i, r) in records.iter().enumerate() {
                fs::write(numbered(path, i), image(r)?).map_err(failure)?;
            }
            return Ok(());
        }
        Format::Svg | Format::Ppm => match records.first() {
            Some(r) => image(r)?,
            None => Vec::new(),
        },
        Format::Json => records
            .iter()
            .map(|r| serde_json::to_string(r).map(|s| s + "\n"))
            .collect::<Result<String, _>>()
            .map_err(failure)?
            .into_bytes(),
        Format::Matrix | Format::Cubes => {
            let texts: Vec<String> = records
                .iter()
                .map(|r| {
                    if args.format == Format::Matrix {
                        r.to_matrix()
                    } else {
                        r.to_cubes()
                    }
                })
                .collect();
            texts.join("\n").into_bytes()
        }
    };
    match &args.out {
        Some(path) => fs::write(path, bytes).map_err(failure),
        None => out.write_all(&bytes).map_err(failure),
    }
}

fn cmd_sample(
    target: Target,
    tuning: Tuning,
    args: &SampleArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    TargetSpec::new(args.n, args.epsilon).map_err(usage)?;
    if let Some(x) = args.x {
        BoltzmannParam::new(x).map_err(usage)?;
    }
    if args.count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let seed = resolve_seed(args.seed, err)?;
    let opts = SamplerOptions {
        max_attempts: args.max_attempts,
        x_override: args.x,
        tuning,
        ..Default::default()
    };
    let records = draw_all(&target, args, seed, &opts)?;
    emit(&records, args, out)
}

fn cmd_count(
    upto: usize,
    a: Option<usize>,
    b: Option<usize>,
    domain: Option<IndexDomain>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let table = match (a, b, domain) {
        (Some(a), Some(b), None) => {
            IndexDomain::rectangle(a, b).map_err(usage)?;
            boxed_counts(a, b, upto)
        }
        (None, None, Some(d)) => skew_counts(&d, upto),
        _ if upto > COUNT_LIMIT => {
            return Err(usage(format!(
                "--upto is limited to {COUNT_LIMIT} for unconstrained counts"
            )))
        }
        _ => exact_counts(upto),
    };
    let mut text = String::new();
    for n in 0..=upto {
        text.push_str(&table.get(n).expect("table covers upto").to_string());
        text.push('\n');
    }
    out.write_all(text.as_bytes()).map_err(failure)
}

fn cmd_verify(
    suite: SuiteArg,
    seed: Option<u64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let seed = resolve_seed(seed, err)?;
    let suite = match suite {
        SuiteArg::Small => Suite::Small,
        SuiteArg::Stat => Suite::Stat,
        SuiteArg::All => Suite::All,
    };
    let reports = run_suite(suite, seed).map_err(failure)?;
    let mut failed = 0;
    for r in &reports {
        writeln!(out, "{r}").map_err(failure)?;
        if !r.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(failure(format!(
            "{failed} of {} checks failed (seed {seed})",
            reports.len()
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    sizes: &[u64],
    mode: ModeArg,
    epsilon: f64,
    runs: usize,
    ab: Option<(usize, usize)>,
    seed: Option<u64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let mode = match mode {
        ModeArg::Exact => BenchMode::Exact,
        ModeArg::Approx => {
            TargetSpec::approximate(1, epsilon).map_err(usage)?;
            BenchMode::Approximate(epsilon)
        }
    };
    let class = match ab {
        Some((a, b)) => Class::Boxed { a, b },
        None => Class::Unconstrained,
    };
    let seed = resolve_seed(seed, err)?;
    let table =
        bench_scaling(sizes, mode, &class, runs, &mut RandomSource::new(seed, 0)).map_err(usage)?;
    let mut text = format!(
        "{:>10} {:>14} {:>12} {:>10}\n",
        "n", "median_ms", "rejections", "max_hook"
    );
    for r in &table.rows {
        text.push_str(&format!(
            "{:>10} {:>14.3} {:>12} {:>10}\n",
            r.n,
            r.median_time.as_secs_f64() * 1e3,
            r.median_rejections,
            r.max_hook_length
        ));
    }
    match table.exponent {
        Some(e) => text.push_str(&format!("fitted exponent: {e:.3}\n")),
        None => text.push_str("fitted exponent: n/a (single size)\n"),
    }
    out.write_all(text.as_bytes()).map_err(failure)
}

fn tuning(t: TuningArg) -> Tuning {
    match t {
        TuningArg::Solve => Tuning::Solve,
        TuningArg::ClosedForm => Tuning::ClosedForm,
    }
}

/// Runs a parsed command, writing results to `out` and notes to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Sample(args) => {
            cmd_sample(Target::Unconstrained, Tuning::default(), &args, out, err)
        }
        Command::SampleBoxed {
            a,
            b,
            tuning: t,
            sample,
        } => {
            IndexDomain::rectangle(a, b).map_err(usage)?;
            cmd_sample(Target::Boxed(a, b), tuning(t), &sample, out, err)
        }
        Command::SampleSkew {
            domain,
            tuning: t,
            sample,
        } => cmd_sample(Target::Skew(domain), tuning(t), &sample, out, err),
        Command::Count { upto, a, b, domain } => cmd_count(upto, a, b, domain, out),
        Command::Verify { suite, seed } => cmd_verify(suite, seed, out, err),
        Command::Bench {
            sizes,
            mode,
            epsilon,
            runs,
            a,
            b,
            seed,
        } => cmd_bench(&sizes, mode, epsilon, runs, a.zip(b), seed, out, err),
    }
}
