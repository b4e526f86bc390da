//! Model selection flags shared by `simulate`, `ecdf` and `mc`.

use snbs::generators::{
    CoefficientFamily, GeneratorKind, Transform, DEFAULT_TAR_BURN_IN, DEFAULT_T_DF,
};

use crate::error::{CliError, CliResult};

pub const MODEL_HELP: &str = "a, b, c, a*, b*, c*, tar, lmsd, lmsd*, ma1stable";

/// Parameters that are fixed across the cells of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Stable index of the MA(1) innovations, or Pareto tail index for LMSD.
    pub alpha: f64,
    pub ma_a: f64,
    pub df: f64,
    pub burn_in: usize,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            alpha: 1.5,
            ma_a: 1.0,
            df: DEFAULT_T_DF,
            burn_in: DEFAULT_TAR_BURN_IN,
        }
    }
}

/// Whether the model is indexed by the memory parameter `d`, by the TAR
/// coefficient `rho`, or by neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Memory,
    Rho,
    None,
}

pub fn axis(label: &str) -> CliResult<Axis> {
    match label {
        "a" | "b" | "c" | "a*" | "b*" | "c*" | "lmsd" | "lmsd*" => Ok(Axis::Memory),
        "tar" => Ok(Axis::Rho),
        "ma1stable" => Ok(Axis::None),
        _ => Err(CliError::Input(format!("unknown model `{label}` (expected one of {MODEL_HELP})"))),
    }
}

/// `d` is required for the memory-indexed models and `rho` for `tar`.
pub fn kind(label: &str, d: Option<f64>, rho: Option<f64>, p: &ModelParams) -> CliResult<GeneratorKind> {
    let need_d = || d.ok_or_else(|| CliError::Input(format!("--d is required for model `{label}`")));
    Ok(match label {
        "tar" => GeneratorKind::Tar {
            rho: rho.ok_or_else(|| CliError::Input("--rho is required for model `tar`".into()))?,
            burn_in: p.burn_in,
        },
        "ma1stable" => GeneratorKind::Ma1Stable {
            a: p.ma_a,
            alpha: p.alpha,
        },
        "lmsd" | "lmsd*" => GeneratorKind::Lmsd {
            alpha: p.alpha,
            d: need_d()?,
            family: if label.ends_with('*') {
                CoefficientFamily::LogWeighted
            } else {
                CoefficientFamily::Plain
            },
        },
        _ => {
            axis(label)?;
            match GeneratorKind::from_label(label, need_d()?)? {
                GeneratorKind::GaussLinear {
                    transform: Transform::TInverse { .. },
                    family,
                    d,
                } => GeneratorKind::GaussLinear {
                    transform: Transform::TInverse { df: p.df },
                    family,
                    d,
                },
                other => other,
            }
        }
    })
}

/// Coefficient family of the Gaussian component of a memory-indexed model.
pub fn family(label: &str) -> CliResult<CoefficientFamily> {
    match axis(label)? {
        Axis::Memory if label.ends_with('*') => Ok(CoefficientFamily::LogWeighted),
        Axis::Memory => Ok(CoefficientFamily::Plain),
        _ => Err(CliError::Input(format!(
            "model `{label}` has no Gaussian linear component"
        ))),
    }
}

/// Flags selecting one generator.
#[derive(clap::Args, Debug, Clone)]
pub struct ModelArgs {
    /// Model: a, b, c, a*, b*, c*, tar, lmsd, lmsd*, ma1stable
    #[arg(long)]
    pub model: String,
    /// Memory parameter of the Gaussian component (models a..c*, lmsd)
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<f64>,
    /// TAR coefficient in [0, 1)
    #[arg(long, default_value_t = 0.5)]
    pub rho: f64,
    /// Stable index of MA(1) innovations, or Pareto tail index for lmsd
    #[arg(long, default_value_t = 1.5)]
    pub alpha_stable: f64,
    /// MA(1) coefficient
    #[arg(long, default_value_t = 1.0)]
    pub ma_a: f64,
    /// Degrees of freedom of the t marginals of models c and c*
    #[arg(long, default_value_t = DEFAULT_T_DF)]
    pub df: f64,
    /// Number of moving-average weights (default floor(n^1.5))
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// TAR burn-in length
    #[arg(long, default_value_t = DEFAULT_TAR_BURN_IN)]
    pub burn_in: usize,
}

impl ModelArgs {
    pub fn params(&self) -> ModelParams {
        ModelParams {
            alpha: self.alpha_stable,
            ma_a: self.ma_a,
            df: self.df,
            burn_in: self.burn_in,
        }
    }

    pub fn generator(&self, n: usize, seed: u64) -> CliResult<snbs::generators::GeneratorConfig> {
        let kind = kind(&self.model, self.d, Some(self.rho), &self.params())?;
        let mut cfg = snbs::generators::GeneratorConfig::new(kind, n, seed);
        cfg.cutoff = self.cutoff;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// `--b` or `--c`, exactly one.
#[derive(clap::Args, Debug, Clone, Copy)]
#[group(required = true, multiple = false)]
pub struct BlockArgs {
    /// Block length
    #[arg(long)]
    pub b: Option<usize>,
    /// Block multiplier: b = floor(c * sqrt(n))
    #[arg(long)]
    pub c: Option<f64>,
}

impl BlockArgs {
    pub fn resolve(&self, n: usize) -> CliResult<usize> {
        match (self.b, self.c) {
            (Some(b), _) => Ok(b),
            (None, Some(c)) if c > 0.0 && c.is_finite() => Ok(snbs::block_size(n, c)),
            (None, Some(c)) => Err(CliError::Input(format!("block multiplier c = {c} must be positive"))),
            (None, None) => Err(CliError::Input("one of --b or --c is required".into())),
        }
    }
}
