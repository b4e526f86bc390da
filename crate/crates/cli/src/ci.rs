use std::path::PathBuf;

use clap::ValueEnum;
use snbs::{confidence_interval, Side, TimeSeries};

use crate::error::CliResult;
use crate::io::{csv_writer, read_series, real};
use crate::model::BlockArgs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    /// (-inf, hi]
    Lower,
    /// [lo, +inf)
    Upper,
    Two,
}

impl SideArg {
    fn side(self) -> Side {
        match self {
            SideArg::Lower => Side::LowerOneSided,
            SideArg::Upper => Side::UpperOneSided,
            SideArg::Two => Side::TwoSided,
        }
    }
}

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Series file, one value per line (`-` for standard input)
    pub input: PathBuf,
    #[command(flatten)]
    pub block: BlockArgs,
    /// Confidence level in (0, 1)
    #[arg(long, default_value_t = 0.9)]
    pub level: f64,
    #[arg(long, value_enum, default_value_t = SideArg::Lower)]
    pub side: SideArg,
    /// Write the CSV here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub const HEADER: [&str; 11] = [
    "side", "level", "lo", "hi", "n", "b", "mean", "normalizer", "q_lo", "q_hi", "degenerate_blocks",
];

pub fn run(args: Args) -> CliResult<()> {
    let series = TimeSeries::new(read_series(&args.input)?)?;
    let b = args.block.resolve(series.len())?;
    let ci = confidence_interval(&series, b, args.level, args.side.side())?;
    let mut w = csv_writer(args.out.as_ref())?;
    w.write_record(HEADER)?;
    let side = match args.side {
        SideArg::Lower => "lower",
        SideArg::Upper => "upper",
        SideArg::Two => "two",
    };
    w.write_record([
        side.to_string(),
        real(ci.level),
        real(ci.lo),
        real(ci.hi),
        ci.n.to_string(),
        ci.b.to_string(),
        real(ci.mean),
        real(ci.normalizer),
        ci.lo_quantile.map(real).unwrap_or_default(),
        ci.hi_quantile.map(real).unwrap_or_default(),
        ci.degenerate_blocks.to_string(),
    ])?;
    w.flush()?;
    Ok(())
}
