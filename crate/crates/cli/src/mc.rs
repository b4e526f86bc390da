//! Coverage experiments over a grid of cells, configured by flags and an
//! optional `key=value` file.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use snbs::generators::GeneratorConfig;
use snbs::harness::{
    analytic_mean, run_experiment, ExperimentConfig, TrueMeanMode, DEFAULT_LEVEL, DEFAULT_REPS,
    DEFAULT_TRUE_MEAN_REPS,
};

use crate::error::{CliError, CliResult};
use crate::io::output;
use crate::model::{axis, kind, Axis, ModelParams};

#[derive(clap::Args, Debug, Default)]
pub struct Args {
    /// `key=value` file supplying defaults for any flag below (keys use
    /// underscores, e.g. `alpha_stable`; `master_seed` sets --seed)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated models: a, b, c, a*, b*, c*, tar, lmsd, lmsd*, ma1stable
    #[arg(long, value_delimiter = ',')]
    pub model: Vec<String>,
    /// Comma-separated memory parameters
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub d: Vec<f64>,
    /// Comma-separated TAR coefficients
    #[arg(long, value_delimiter = ',')]
    pub rho: Vec<f64>,
    /// Comma-separated series lengths
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Comma-separated block multipliers: b = floor(c * sqrt(n))
    #[arg(long, value_delimiter = ',')]
    pub c: Vec<f64>,
    /// Stable index of MA(1) innovations, or Pareto tail index for lmsd [default: 1.5]
    #[arg(long)]
    pub alpha_stable: Option<f64>,
    /// MA(1) coefficient [default: 1]
    #[arg(long)]
    pub ma_a: Option<f64>,
    /// Degrees of freedom for models c and c* [default: 1.5]
    #[arg(long)]
    pub df: Option<f64>,
    /// Number of moving-average weights [default: floor(n^1.5)]
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// TAR burn-in [default: 1000]
    #[arg(long)]
    pub burn_in: Option<usize>,
    /// One-sided confidence level [default: 0.9]
    #[arg(long)]
    pub level: Option<f64>,
    /// Replications per cell [default: 5000]
    #[arg(long)]
    pub reps: Option<usize>,
    /// Master seed [default: 0]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Realizations averaged for the true mean when there is no closed form [default: 1000]
    #[arg(long)]
    pub true_mean_reps: Option<usize>,
    /// Worker threads; 0 uses every core [default: 0]
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write the coverage CSV here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

const KEYS: [&str; 17] = [
    "model", "d", "rho", "n", "c", "alpha_stable", "ma_a", "df", "cutoff", "burn_in", "level",
    "reps", "master_seed", "seed", "true_mean_reps", "workers", "out",
];

/// `key=value` lines; `#` starts a comment.
fn parse_config(text: &str) -> CliResult<BTreeMap<String, (usize, String)>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("config line {line_no}: expected key=value")))?;
        let key = key.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Input(format!("config line {line_no}: unknown key `{key}`")));
        }
        map.insert(key, (line_no, value.trim().to_string()));
    }
    Ok(map)
}

fn parse_list<T: FromStr>(key: &str, line: usize, value: &str) -> CliResult<Vec<T>> {
    value
        .split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| CliError::Input(format!("config line {line}: bad value `{}` for `{key}`", v.trim())))
        })
        .collect()
}

fn parse_one<T: FromStr>(key: &str, line: usize, value: &str) -> CliResult<T> {
    let mut v = parse_list(key, line, value)?;
    if v.len() != 1 {
        return Err(CliError::Input(format!("config line {line}: `{key}` takes a single value")));
    }
    Ok(v.remove(0))
}

/// Fills every flag left unset on the command line from the config file.
fn merge(mut args: Args, config: &BTreeMap<String, (usize, String)>) -> CliResult<Args> {
    macro_rules! list {
        ($field:ident) => {
            if args.$field.is_empty() {
                if let Some((line, v)) = config.get(stringify!($field)) {
                    args.$field = parse_list(stringify!($field), *line, v)?;
                }
            }
        };
    }
    macro_rules! one {
        ($field:ident, $key:expr) => {
            if args.$field.is_none() {
                if let Some((line, v)) = config.get($key) {
                    args.$field = Some(parse_one($key, *line, v)?);
                }
            }
        };
    }
    list!(model);
    list!(d);
    list!(rho);
    list!(n);
    list!(c);
    one!(alpha_stable, "alpha_stable");
    one!(ma_a, "ma_a");
    one!(df, "df");
    one!(cutoff, "cutoff");
    one!(burn_in, "burn_in");
    one!(level, "level");
    one!(reps, "reps");
    one!(seed, "master_seed");
    one!(seed, "seed");
    one!(true_mean_reps, "true_mean_reps");
    one!(workers, "workers");
    one!(out, "out");
    Ok(args)
}

fn required<T: Clone>(v: &[T], flag: &str) -> CliResult<Vec<T>> {
    if v.is_empty() {
        Err(CliError::Input(format!("--{flag} is required (flag or config key)")))
    } else {
        Ok(v.to_vec())
    }
}

/// Cells in the order model, d or rho, n, c.
pub fn grid(args: &Args) -> CliResult<Vec<ExperimentConfig>> {
    let defaults = ModelParams::default();
    let params = ModelParams {
        alpha: args.alpha_stable.unwrap_or(defaults.alpha),
        ma_a: args.ma_a.unwrap_or(defaults.ma_a),
        df: args.df.unwrap_or(defaults.df),
        burn_in: args.burn_in.unwrap_or(defaults.burn_in),
    };
    let models = required(&args.model, "model")?;
    let ns = required(&args.n, "n")?;
    let cs = required(&args.c, "c")?;
    let level = args.level.unwrap_or(DEFAULT_LEVEL);
    let reps = args.reps.unwrap_or(DEFAULT_REPS);
    let seed = args.seed.unwrap_or(0);
    let true_mean_reps = args.true_mean_reps.unwrap_or(DEFAULT_TRUE_MEAN_REPS);

    let mut cells = Vec::new();
    for label in &models {
        let variants: Vec<(Option<f64>, Option<f64>)> = match axis(label)? {
            Axis::Memory => required(&args.d, "d")?.into_iter().map(|d| (Some(d), None)).collect(),
            Axis::Rho => required(&args.rho, "rho")?.into_iter().map(|r| (None, Some(r))).collect(),
            Axis::None => vec![(None, None)],
        };
        for &(d, rho) in &variants {
            let kind = kind(label, d, rho, &params)?;
            for &n in &ns {
                for &c in &cs {
                    let mut generator = GeneratorConfig::new(kind, n, seed);
                    generator.cutoff = args.cutoff;
                    // invalid cells are reported by the harness rather than here
                    let true_mean_mode = match generator.validate().and_then(|_| analytic_mean(&generator)) {
                        Ok(Some(mu)) => TrueMeanMode::Analytic(mu),
                        _ => TrueMeanMode::MonteCarlo { reps: true_mean_reps },
                    };
                    cells.push(ExperimentConfig {
                        generator,
                        c,
                        level,
                        reps,
                        master_seed: seed,
                        true_mean_mode,
                    });
                }
            }
        }
    }
    Ok(cells)
}

pub fn run(args: Args) -> CliResult<()> {
    let args = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let config = parse_config(&text)?;
            merge(args, &config)?
        }
        None => args,
    };
    let cells = grid(&args)?;
    let table = run_experiment(&cells, args.workers.unwrap_or(0))?;
    let mut w = output(args.out.as_ref())?;
    table.write_csv(&mut w)?;
    w.flush()?;
    for f in &table.failures {
        eprintln!("cell {} ({}): {}", f.index + 1, f.model, f.error);
    }
    match table.failures.first() {
        Some(f) => Err(CliError::from(f.error.clone())),
        None => Ok(()),
    }
}
