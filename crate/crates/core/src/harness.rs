//! Replicated coverage experiments for one-sided SNBS intervals.
//!
//! Replication `r` of a cell draws its series from stream `(master_seed, r)`
//! and contributes integer hit counts, so tables are bit-identical for any
//! worker count.

use std::fmt::Write as _;
use std::io;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::generators::{GeneratorConfig, GeneratorKind, RngStream, Sampler, Transform};
use crate::interval::{BlockSampling, Side};
use crate::series::{Neumaier, TimeSeries};
use crate::block_size;

/// Replications used by the Monte Carlo approximation of the true mean when
/// no closed form exists.
pub const DEFAULT_TRUE_MEAN_REPS: usize = 1000;
pub const DEFAULT_REPS: usize = 5000;
pub const DEFAULT_LEVEL: f64 = 0.9;

/// True-mean replications draw from streams above this index, disjoint from
/// coverage replications.
const TRUE_MEAN_STREAM_BASE: u64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrueMeanMode {
    Analytic(f64),
    /// Average of per-realization sample means.
    MonteCarlo { reps: usize },
}

/// Closed-form mean of the simulated (truncated) process, where one exists.
pub fn analytic_mean(config: &GeneratorConfig) -> Result<Option<f64>> {
    Ok(match config.kind {
        GeneratorKind::GaussLinear { transform, .. } => match transform {
            Transform::Identity | Transform::TInverse { .. } => Some(0.0),
            Transform::Square => Some(config.coefficients()?.expect("linear model").sum_sq),
        },
        GeneratorKind::Lmsd { alpha, .. } => {
            let sum_sq = config.coefficients()?.expect("linear model").sum_sq;
            Some(alpha / (alpha - 1.0) * (sum_sq / 2.0).exp())
        }
        GeneratorKind::Ma1Stable { .. } => Some(0.0),
        GeneratorKind::Tar { rho: 0.0, .. } => Some(0.0),
        GeneratorKind::Tar { .. } => None,
    })
}

/// Mean of `reps` independent sample means of length `config.n`.
pub fn monte_carlo_mean(config: &GeneratorConfig, reps: usize, seed: u64) -> Result<f64> {
    if reps == 0 {
        return Err(invalid("true-mean replication count must be positive"));
    }
    let sampler = Sampler::new(*config)?;
    let mut acc = Neumaier::default();
    for j in 0..reps as u64 {
        let mut rng = RngStream::new(seed, TRUE_MEAN_STREAM_BASE + j);
        let x = sampler.sample_values(&mut rng);
        let mut s = Neumaier::default();
        x.iter().for_each(|&v| s.add(v));
        acc.add(s.sum() / x.len() as f64);
    }
    Ok(acc.sum() / reps as f64)
}

/// Analytic mean when available, otherwise the Monte Carlo average over
/// [`DEFAULT_TRUE_MEAN_REPS`] realizations seeded by `config.seed`.
pub fn true_mean(config: &GeneratorConfig) -> Result<f64> {
    match analytic_mean(config)? {
        Some(mu) => Ok(mu),
        None => monte_carlo_mean(config, DEFAULT_TRUE_MEAN_REPS, config.seed),
    }
}

pub fn default_true_mean_mode(config: &GeneratorConfig) -> Result<TrueMeanMode> {
    Ok(match analytic_mean(config)? {
        Some(mu) => TrueMeanMode::Analytic(mu),
        None => TrueMeanMode::MonteCarlo {
            reps: DEFAULT_TRUE_MEAN_REPS,
        },
    })
}

/// One cell of a coverage table. The generator's own `seed` is ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub generator: GeneratorConfig,
    /// Block multiplier: `b = floor(c * sqrt(n))`.
    pub c: f64,
    pub level: f64,
    pub reps: usize,
    pub master_seed: u64,
    pub true_mean_mode: TrueMeanMode,
}

impl ExperimentConfig {
    /// 90% intervals over 5000 replications, with the default true-mean mode.
    pub fn new(generator: GeneratorConfig, c: f64, master_seed: u64) -> Result<Self> {
        Ok(Self {
            generator,
            c,
            level: DEFAULT_LEVEL,
            reps: DEFAULT_REPS,
            master_seed,
            true_mean_mode: default_true_mean_mode(&generator)?,
        })
    }

    pub fn n(&self) -> usize {
        self.generator.n
    }

    pub fn block_size(&self) -> usize {
        block_size(self.generator.n, self.c)
    }

    pub fn validate(&self) -> Result<()> {
        self.generator.validate()?;
        let b = self.block_size();
        if !(self.c > 0.0) || b < 2 || b > self.n() {
            return Err(Error::InvalidBlockSize { b, n: self.n() });
        }
        if self.reps == 0 {
            return Err(invalid("replication count must be positive"));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::InvalidProbability(self.level));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReplicationOutcome {
    Covered { lower: bool, upper: bool },
    /// The series had a zero normalizer, so no interval exists.
    Excluded,
}

/// A validated cell with its sampler built and true mean resolved.
#[derive(Debug)]
pub struct Experiment {
    config: ExperimentConfig,
    sampler: Sampler,
    b: usize,
    mu: f64,
}

impl Experiment {
    pub fn prepare(config: ExperimentConfig) -> Result<Self> {
        config.validate()?;
        let mu = match config.true_mean_mode {
            TrueMeanMode::Analytic(mu) => mu,
            TrueMeanMode::MonteCarlo { reps } => {
                monte_carlo_mean(&config.generator, reps, config.master_seed)?
            }
        };
        Ok(Self {
            sampler: Sampler::new(config.generator)?,
            b: config.block_size(),
            mu,
            config,
        })
    }

    pub fn true_mean(&self) -> f64 {
        self.mu
    }

    pub fn block_size(&self) -> usize {
        self.b
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn replicate(&self, rep_index: u64) -> Result<ReplicationOutcome> {
        self.replicate_at(rep_index, self.config.level)
    }

    /// Same series as [`Experiment::replicate`], evaluated at another level.
    pub fn replicate_at(&self, rep_index: u64, level: f64) -> Result<ReplicationOutcome> {
        let mut rng = RngStream::new(self.config.master_seed, rep_index);
        let series = self.sampler.sample(&mut rng)?;
        self.evaluate(&series, level)
    }

    pub(crate) fn evaluate(&self, series: &TimeSeries, level: f64) -> Result<ReplicationOutcome> {
        let sampling = match BlockSampling::new(series, self.b) {
            Ok(s) => s,
            Err(Error::DegenerateNormalizer | Error::AllBlocksDegenerate) => {
                return Ok(ReplicationOutcome::Excluded)
            }
            Err(e) => return Err(e),
        };
        let lower = sampling.interval(level, Side::LowerOneSided)?;
        let upper = sampling.interval(level, Side::UpperOneSided)?;
        Ok(ReplicationOutcome::Covered {
            lower: lower.contains(self.mu),
            upper: upper.contains(self.mu),
        })
    }

    /// Runs every replication on a pool of `workers` threads (0 = all cores).
    pub fn run(&self, workers: usize) -> Result<CoverageRow> {
        let pool = build_pool(workers)?;
        let counts = pool.install(|| {
            (0..self.config.reps as u64)
                .into_par_iter()
                .map(|r| self.replicate(r).map(HitCounts::from))
                .try_reduce(HitCounts::default, |a, b| Ok(a.merge(b)))
        })?;
        Ok(CoverageRow::from_counts(self, counts))
    }
}

fn build_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| invalid(format!("thread pool: {e}")))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct HitCounts {
    lower: u64,
    upper: u64,
    included: u64,
    excluded: u64,
}

impl HitCounts {
    fn merge(self, o: Self) -> Self {
        Self {
            lower: self.lower + o.lower,
            upper: self.upper + o.upper,
            included: self.included + o.included,
            excluded: self.excluded + o.excluded,
        }
    }
}

impl From<ReplicationOutcome> for HitCounts {
    fn from(o: ReplicationOutcome) -> Self {
        match o {
            ReplicationOutcome::Covered { lower, upper } => Self {
                lower: lower as u64,
                upper: upper as u64,
                included: 1,
                excluded: 0,
            },
            ReplicationOutcome::Excluded => Self {
                excluded: 1,
                ..Self::default()
            },
        }
    }
}

/// Builds the cell and runs one replication.
pub fn run_replication(config: &ExperimentConfig, rep_index: u64) -> Result<ReplicationOutcome> {
    Experiment::prepare(*config)?.replicate(rep_index)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageRow {
    pub model: String,
    pub d: Option<f64>,
    pub n: usize,
    pub c: f64,
    pub b: usize,
    pub level: f64,
    /// Replications requested.
    pub reps: usize,
    pub lower_hits: u64,
    pub upper_hits: u64,
    /// Replications that produced an interval; the coverage denominator.
    pub included: u64,
    pub excluded: u64,
    pub lower: f64,
    pub upper: f64,
    pub lower_stderr: f64,
    pub upper_stderr: f64,
    pub true_mean: f64,
}

fn proportion(hits: u64, total: u64) -> (f64, f64) {
    if total == 0 {
        return (f64::NAN, f64::NAN);
    }
    let p = hits as f64 / total as f64;
    (p, (p * (1.0 - p) / total as f64).sqrt())
}

impl CoverageRow {
    fn from_counts(exp: &Experiment, counts: HitCounts) -> Self {
        let cfg = &exp.config;
        let (lower, lower_stderr) = proportion(counts.lower, counts.included);
        let (upper, upper_stderr) = proportion(counts.upper, counts.included);
        Self {
            model: cfg.generator.kind.label(),
            d: cfg.generator.kind.memory(),
            n: cfg.n(),
            c: cfg.c,
            b: exp.b,
            level: cfg.level,
            reps: cfg.reps,
            lower_hits: counts.lower,
            upper_hits: counts.upper,
            included: counts.included,
            excluded: counts.excluded,
            lower,
            upper,
            lower_stderr,
            upper_stderr,
            true_mean: exp.mu,
        }
    }

    /// The larger of the two per-side Monte Carlo standard errors.
    pub fn stderr(&self) -> f64 {
        self.lower_stderr.max(self.upper_stderr)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    /// Position of the cell in the grid.
    pub index: usize,
    pub model: String,
    pub error: Error,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CoverageTable {
    pub rows: Vec<CoverageRow>,
    pub failures: Vec<CellFailure>,
}

pub const CSV_HEADER: &str = "model,d,n,c,level,reps,lower,upper,stderr,excluded";

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

impl CoverageTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.model,
                r.d.map(real).unwrap_or_default(),
                r.n,
                real(r.c),
                real(r.level),
                r.reps,
                real(r.lower),
                real(r.upper),
                real(r.stderr()),
                r.excluded
            );
        }
        out
    }

    pub fn write_csv<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(self.to_csv().as_bytes())
    }
}

/// Runs every cell; a cell that fails validation is recorded and skipped.
pub fn run_experiment(grid: &[ExperimentConfig], workers: usize) -> Result<CoverageTable> {
    if grid.is_empty() {
        return Err(invalid("experiment grid is empty"));
    }
    let mut table = CoverageTable::default();
    for (index, cfg) in grid.iter().enumerate() {
        match Experiment::prepare(*cfg).and_then(|e| e.run(workers)) {
            Ok(row) => table.rows.push(row),
            Err(error) => table.failures.push(CellFailure {
                index,
                model: cfg.generator.kind.label(),
                error,
            }),
        }
    }
    Ok(table)
}
