use std::path::PathBuf;

use snbs::generators::generate;
use snbs::BlockSampling;

use crate::error::{CliError, CliResult};
use crate::io::{csv_writer, real};
use crate::model::{BlockArgs, ModelArgs};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Series length
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub block: BlockArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Subtract the mean and divide by the standard deviation of the block
    /// statistics before output
    #[arg(long)]
    pub standardize: bool,
    /// Write the CSV here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Mean and sample standard deviation.
fn moments(v: &[f64]) -> (f64, f64) {
    let m = v.len() as f64;
    let mean = v.iter().sum::<f64>() / m;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0).max(1.0);
    (mean, var.sqrt())
}

/// One row per block statistic, in increasing order; at tied values every
/// row carries the step height after the tie.
pub fn run(args: Args) -> CliResult<()> {
    let series = generate(&args.model.generator(args.n, args.seed)?)?;
    let b = args.block.resolve(series.len())?;
    let sampling = BlockSampling::new(&series, b)?;
    let cdf = sampling.cdf();
    let (shift, scale) = if args.standardize {
        let (mean, sd) = moments(cdf.sorted_values());
        if !(sd > 0.0) {
            return Err(CliError::Degenerate("block statistics have zero spread".into()));
        }
        (mean, sd)
    } else {
        (0.0, 1.0)
    };
    let mut w = csv_writer(args.out.as_ref())?;
    w.write_record(["x", "F"])?;
    for &x in cdf.sorted_values() {
        w.write_record([real((x - shift) / scale), real(cdf.eval(x))])?;
    }
    w.flush()?;
    Ok(())
}
