//! The `snbs` binary end to end.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use snbs::generators::{generate, GeneratorConfig, GeneratorKind};
use snbs::{confidence_interval, Side, TimeSeries};
use tempfile::TempDir;

fn snbs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_snbs")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn records(text: &str) -> (csv::StringRecord, Vec<csv::StringRecord>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().clone();
    let rows = r.records().map(|row| row.unwrap()).collect();
    (header, rows)
}

fn field(header: &csv::StringRecord, row: &csv::StringRecord, name: &str) -> f64 {
    let i = header.iter().position(|h| h == name).unwrap();
    row[i].parse().unwrap()
}

#[test]
fn ci_hand_example() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "x.txt", "1\n2\n3\n");
    let (header, rows) = records(&stdout(&snbs(&["ci", &input, "--b", "2", "--level", "0.5"])));
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][0], "lower");
    assert!((field(&header, &rows[0], "hi") - 2.769_800_358_919_501).abs() < 1e-12);
    assert_eq!(field(&header, &rows[0], "lo"), f64::NEG_INFINITY);
}

#[test]
fn ci_matches_the_library_on_a_simulated_series() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("x.txt");
    let p = path.to_str().unwrap();
    stdout(&snbs(&["simulate", "--model", "a", "--d", "0.25", "--n", "200", "--seed", "3", "--out", p]));
    let x = TimeSeries::new(
        fs::read_to_string(&path).unwrap().lines().map(|l| l.parse().unwrap()).collect(),
    )
    .unwrap();
    let direct = generate(&GeneratorConfig::new(GeneratorKind::from_label("a", 0.25).unwrap(), 200, 3)).unwrap();
    assert_eq!(x.values(), direct.values());
    let lib = confidence_interval(&x, 14, 0.9, Side::TwoSided).unwrap();
    let (header, rows) = records(&stdout(&snbs(&["ci", p, "--c", "1", "--side", "two"])));
    assert_eq!(field(&header, &rows[0], "b"), 14.0);
    assert_eq!(field(&header, &rows[0], "lo"), lib.lo);
    assert_eq!(field(&header, &rows[0], "hi"), lib.hi);
}

#[test]
fn constant_series_exits_3() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "x.txt", "4\n4\n4\n4\n");
    let out = snbs(&["ci", &input, "--b", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn bad_input_exits_2_with_the_line_number() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "x.txt", "1\n2\nx\n4\n");
    let out = snbs(&["ci", &input, "--b", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(snbs(&["ci", &input, "--bogus"]).status.code(), Some(2));
    assert_eq!(snbs(&["ci", "/nonexistent/x.txt", "--b", "2"]).status.code(), Some(2));
}

#[test]
fn simulate_is_reproducible() {
    let args = ["simulate", "--model", "tar", "--rho", "0.5", "--n", "100", "--seed", "7"];
    let a = stdout(&snbs(&args));
    assert_eq!(a, stdout(&snbs(&args)));
    assert_eq!(a.lines().count(), 100);
    let other = stdout(&snbs(&["simulate", "--model", "tar", "--rho", "0.5", "--n", "100", "--seed", "8"]));
    assert_ne!(a, other);
}

#[test]
fn advise_white_noise() {
    let dir = TempDir::new().unwrap();
    let acf = write(&dir, "acf.csv", "lag,value\n0,1\n1,0\n2,0\n3,0\n");
    let out = snbs(&["advise", "--acf", &acf, "--n", "1000", "--b", "31", "--kmax", "40"]);
    let (header, rows) = records(&stdout(&out));
    assert_eq!(rows.len(), 41);
    for row in &rows {
        let k = field(&header, row, "k");
        let bound = field(&header, row, "bound");
        assert_eq!(bound, if k < 31.0 { 1.0 } else { 0.0 }, "k={k}");
    }
    let summary = String::from_utf8(out.stderr).unwrap();
    let a3 = summary.lines().find(|l| l.starts_with("a3_diagnostic")).unwrap();
    let v: f64 = a3.split([',', '=', ' ']).filter(|s| !s.is_empty()).nth(1).unwrap().parse().unwrap();
    assert!((v - 0.032).abs() < 1e-15, "{a3}");
}

#[test]
fn ecdf_has_one_knot_per_block() {
    let out = snbs(&["ecdf", "--model", "a", "--d", "0.2", "--n", "500", "--c", "1", "--seed", "5"]);
    let (header, rows) = records(&stdout(&out));
    // b = 22 gives n - b + 1 blocks
    assert_eq!(rows.len(), 479);
    let x: Vec<f64> = rows.iter().map(|r| field(&header, r, "x")).collect();
    assert!(x.windows(2).all(|w| w[0] <= w[1]));
    let f: Vec<f64> = rows.iter().map(|r| field(&header, r, "F")).collect();
    assert!(f.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(*f.last().unwrap(), 1.0);
}

#[test]
fn mc_from_flags_and_config_agree() {
    let dir = TempDir::new().unwrap();
    let flags = stdout(&snbs(&[
        "mc", "--model", "a,tar", "--d", "0.25", "--rho", "0.5", "--n", "100", "--c", "0.5,1", "--reps", "60",
        "--seed", "9", "--true-mean-reps", "50",
    ]));
    let (header, rows) = records(&flags);
    assert_eq!(rows.len(), 4);
    for row in &rows {
        let lower = field(&header, row, "lower");
        assert!((0.0..=1.0).contains(&lower));
    }
    let config = write(
        &dir,
        "grid.cfg",
        "# same grid\nmodel = a,tar\nd = 0.25\nrho = 0.5\nn = 100\nc = 0.5,1\nreps = 60\nmaster_seed = 9\ntrue_mean_reps = 50\n",
    );
    let out = dir.path().join("table.csv");
    stdout(&snbs(&["mc", "--config", &config, "--out", out.to_str().unwrap()]));
    assert_eq!(fs::read_to_string(Path::new(&out)).unwrap(), flags);
    let bad = write(&dir, "bad.cfg", "model = a\nnope = 1\n");
    let err = snbs(&["mc", "--config", &bad]);
    assert_eq!(err.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&err.stderr).contains("line 2"));
}
