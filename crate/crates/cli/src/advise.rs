use std::path::PathBuf;

use clap::ValueEnum;
use snbs::advisor::{
    a3_diagnostic, acf_from_coefficients, recommend_block, rho_bounds,
    AutocovarianceSequence, Regime,
};
use snbs::generators::coefficients;

use crate::error::{CliError, CliResult};
use crate::io::{csv_writer, read_acf, real};
use crate::model::family;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    /// Summable autocovariances
    Srd,
    /// Power-law long memory; needs --hurst
    Lrd,
    /// Anti-persistent
    Anti,
    /// Spectral density vanishing at zero; needs --beta and --nu
    Zero,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Autocovariance file of `lag,value` lines starting at lag 0
    #[arg(long, conflicts_with = "model", required_unless_present = "model")]
    pub acf: Option<PathBuf>,
    /// Use the autocovariances of this model's Gaussian component
    /// (a, b, c, a*, b*, c*, lmsd, lmsd*)
    #[arg(long, requires = "d")]
    pub model: Option<String>,
    /// Memory parameter of the model
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<f64>,
    /// Number of moving-average weights (default floor(n^1.5))
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Largest lag computed from the model (default n + b + l)
    #[arg(long)]
    pub maxlag: Option<usize>,
    /// Sample size
    #[arg(long)]
    pub n: usize,
    /// Block length (default: the recommendation)
    #[arg(long)]
    pub b: Option<usize>,
    /// Multiplier of the recommended block length
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Extra gap between blocks
    #[arg(long, default_value_t = 0)]
    pub l: usize,
    /// Largest block separation in the bound table (default n)
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Dependence regime (default: srd, or lrd with H = d + 1/2 for a model
    /// with d > 0)
    #[arg(long, value_enum)]
    pub regime: Option<RegimeArg>,
    /// Hurst index in (1/2, 1) for --regime lrd
    #[arg(long)]
    pub hurst: Option<f64>,
    /// Order at which the spectral density vanishes, for --regime zero
    #[arg(long)]
    pub beta: Option<f64>,
    /// Eigenvalue decay order of the autocovariance matrix, for --regime zero
    #[arg(long)]
    pub nu: Option<f64>,
    /// Write the bound table here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn missing(flag: &str, regime: &str) -> CliError {
    CliError::Input(format!("--{flag} is required for regime {regime}"))
}

fn regime(args: &Args) -> CliResult<Regime> {
    Ok(match args.regime {
        Some(RegimeArg::Srd) => Regime::SrdSummable,
        Some(RegimeArg::Lrd) => Regime::LrdPower {
            hurst: args.hurst.ok_or_else(|| missing("hurst", "lrd"))?,
        },
        Some(RegimeArg::Anti) => Regime::AntiPersistent,
        Some(RegimeArg::Zero) => Regime::ZeroSpectrum {
            beta: args.beta.ok_or_else(|| missing("beta", "zero"))?,
            nu: args.nu.ok_or_else(|| missing("nu", "zero"))?,
        },
        None => match (&args.model, args.d) {
            (Some(_), Some(d)) if d > 0.0 => Regime::LrdPower { hurst: d + 0.5 },
            _ => Regime::SrdSummable,
        },
    })
}

fn autocovariances(args: &Args, span: usize) -> CliResult<AutocovarianceSequence> {
    if let Some(path) = &args.acf {
        return Ok(AutocovarianceSequence::new(read_acf(path)?)?);
    }
    let label = args.model.as_deref().expect("clap requires --acf or --model");
    let d = args.d.expect("clap requires --d with --model");
    let cutoff = args
        .cutoff
        .unwrap_or_else(|| (args.n as f64).powf(1.5).floor() as usize)
        .max(2);
    let maxlag = args.maxlag.unwrap_or(args.n + span).min(cutoff - 1);
    let coeffs = coefficients(family(label)?, d, cutoff)?;
    Ok(acf_from_coefficients(&coeffs, maxlag)?)
}

/// Writes the `k,m,bound` table; the eigenvalue, diagnostic and block sizes go
/// to standard error as `key,value` lines.
pub fn run(args: Args) -> CliResult<()> {
    let regime = regime(&args)?;
    let recommended = recommend_block(regime, args.n, args.c)?;
    let b = args.b.unwrap_or(recommended);
    let span = b + args.l;
    if b == 0 || span > args.n {
        return Err(CliError::Input(format!(
            "need 1 <= b and b + l <= n, got b = {b}, l = {}, n = {}",
            args.l, args.n
        )));
    }
    let gamma = autocovariances(&args, span)?;
    let kmax = args.kmax.unwrap_or(args.n);
    let table = rho_bounds(&gamma, span, 0..=kmax)?;
    let diagnostic = a3_diagnostic(&gamma, args.n, b, args.l)?;

    let mut w = csv_writer(args.out.as_ref())?;
    w.write_record(["k", "m", "bound"])?;
    for r in &table {
        w.write_record([r.k.to_string(), r.m.to_string(), real(r.bound)])?;
    }
    w.flush()?;

    let extrapolated = table.iter().any(|r| r.extrapolated);
    eprintln!("lambda_m,{}", real(table[0].lambda_m));
    eprintln!("a3_diagnostic,{}", real(diagnostic));
    eprintln!("b,{b}");
    eprintln!("recommended_b,{recommended}");
    eprintln!("exponent,{}", real(regime.exponent()?));
    eprintln!("extrapolated,{extrapolated}");
    Ok(())
}
