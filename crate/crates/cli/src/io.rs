//! Reading series and autocovariance files, and writing CSV output.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{CliError, CliResult};

/// Reals are written in scientific notation with 17 significant digits, which
/// round-trips every `f64`.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn read_text(path: &Path) -> CliResult<String> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut text)?;
    } else {
        File::open(path)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn parse_real(field: &str, line: usize) -> CliResult<f64> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("line {line}: cannot parse `{}` as a number", field.trim())))?;
    if !v.is_finite() {
        return Err(CliError::Input(format!("line {line}: value `{}` is not finite", field.trim())));
    }
    Ok(v)
}

/// Non-blank lines with their 1-based line numbers; `\r\n` endings are accepted.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// One decimal per line. `-` reads standard input.
pub fn read_series(path: &Path) -> CliResult<Vec<f64>> {
    parse_series(&read_text(path)?)
}

pub fn parse_series(text: &str) -> CliResult<Vec<f64>> {
    content_lines(text).map(|(line, l)| parse_real(l, line)).collect()
}

/// `lag,value` lines with lags `0, 1, 2, ...` in order. A leading
/// `lag,value` header line is skipped.
pub fn read_acf(path: &Path) -> CliResult<Vec<f64>> {
    parse_acf(&read_text(path)?)
}

pub fn parse_acf(text: &str) -> CliResult<Vec<f64>> {
    let mut gamma = Vec::new();
    for (idx, (line, l)) in content_lines(text).enumerate() {
        if idx == 0 && l.replace(' ', "").eq_ignore_ascii_case("lag,value") {
            continue;
        }
        let (lag, value) = l
            .split_once(',')
            .ok_or_else(|| CliError::Input(format!("line {line}: expected `lag,value`")))?;
        let lag: usize = lag
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("line {line}: cannot parse lag `{}`", lag.trim())))?;
        if lag != gamma.len() {
            return Err(CliError::Input(format!(
                "line {line}: expected lag {}, found {lag}",
                gamma.len()
            )));
        }
        gamma.push(parse_real(value, line)?);
    }
    Ok(gamma)
}

/// A buffered writer to `path`, or to standard output when `None`.
pub fn output(path: Option<&PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn csv_writer(path: Option<&PathBuf>) -> CliResult<csv::Writer<Box<dyn Write>>> {
    Ok(csv::Writer::from_writer(output(path)?))
}
