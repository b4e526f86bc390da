use std::io::Write;
use std::path::PathBuf;

use snbs::generators::generate;

use crate::error::CliResult;
use crate::io::{output, real};
use crate::model::ModelArgs;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Series length
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the series here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: Args) -> CliResult<()> {
    let series = generate(&args.model.generator(args.n, args.seed)?)?;
    let mut w = output(args.out.as_ref())?;
    for &v in series.values() {
        writeln!(w, "{}", real(v))?;
    }
    w.flush()?;
    Ok(())
}
