//! Coverage experiments end to end.

use snbs::generators::{GeneratorConfig, GeneratorKind};
use snbs::harness::{run_experiment, Experiment, ExperimentConfig, ReplicationOutcome, CSV_HEADER};

fn cell(kind: GeneratorKind, n: usize, c: f64, reps: usize, seed: u64) -> ExperimentConfig {
    ExperimentConfig {
        reps,
        ..ExperimentConfig::new(GeneratorConfig::new(kind, n, 0), c, seed).unwrap()
    }
}

#[test]
fn iid_normal_lower_coverage_is_nominal() {
    let exp = Experiment::prepare(cell(GeneratorKind::tar(0.0), 500, 1.0, 5000, 1)).unwrap();
    let row = exp.run(0).unwrap();
    assert_eq!(row.included, 5000);
    assert!((row.lower - 0.90).abs() <= 0.015, "lower coverage {}", row.lower);
    assert!((row.stderr() - 0.0042).abs() < 0.0004, "stderr {}", row.stderr());
}

#[test]
fn wider_level_never_loses_coverage() {
    for (kind, seed) in [
        (GeneratorKind::from_label("a", 0.25).unwrap(), 3),
        (GeneratorKind::from_label("c", -1.0).unwrap(), 4),
        (GeneratorKind::tar(0.5), 5),
    ] {
        let exp = Experiment::prepare(cell(kind, 100, 1.0, 300, seed)).unwrap();
        for r in 0..300 {
            let narrow = exp.replicate_at(r, 0.90).unwrap();
            let wide = exp.replicate_at(r, 0.95).unwrap();
            if let (
                ReplicationOutcome::Covered { lower: l0, upper: u0 },
                ReplicationOutcome::Covered { lower: l1, upper: u1 },
            ) = (narrow, wide)
            {
                assert!(l1 >= l0 && u1 >= u0, "rep {r}");
            }
        }
    }
}

#[test]
fn output_is_independent_of_worker_count() {
    let grid = [
        cell(GeneratorKind::from_label("b", 0.4).unwrap(), 100, 1.0, 400, 11),
        cell(GeneratorKind::tar(0.5), 100, 0.5, 400, 11),
    ];
    let one = run_experiment(&grid, 1).unwrap();
    for workers in [4, 16] {
        let many = run_experiment(&grid, workers).unwrap();
        assert_eq!(one, many);
        assert_eq!(one.to_csv(), many.to_csv());
    }
}

#[test]
fn replications_are_deterministic() {
    let cfg = cell(GeneratorKind::from_label("c*", 0.2).unwrap(), 100, 1.0, 10, 21);
    let exp = Experiment::prepare(cfg).unwrap();
    let again = Experiment::prepare(cfg).unwrap();
    for r in 0..10 {
        assert_eq!(exp.replicate(r).unwrap(), again.replicate(r).unwrap());
    }
}

#[test]
fn csv_has_one_row_per_cell() {
    let grid = [
        cell(GeneratorKind::from_label("a", -1.0).unwrap(), 100, 1.0, 50, 2),
        cell(GeneratorKind::Ma1Stable { a: 1.0, alpha: 1.5 }, 100, 1.0, 50, 2),
    ];
    let csv = run_experiment(&grid, 0).unwrap().to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 3);
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 10);
        let lower: f64 = fields[6].parse().unwrap();
        let upper: f64 = fields[7].parse().unwrap();
        assert!((0.0..=1.0).contains(&lower) && (0.0..=1.0).contains(&upper));
    }
    assert!(lines[2].starts_with("ma1stable,,100,"));
}
