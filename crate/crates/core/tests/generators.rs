//! Distributional checks on the simulators.

use snbs::generators::{
    coefficients, direct_convolve, fft_convolve, generate, student_t_cdf, student_t_quantile,
    CoefficientFamily, GeneratorConfig, GeneratorKind, RngStream, Sampler,
};
use snbs::harness::true_mean;

/// Riemann zeta at 3/2.
const ZETA_3_2: f64 = 2.612_375_348_685_488;

/// Draws the first coordinate of `count` independent realizations.
fn first_coordinates(config: GeneratorConfig, count: u64) -> Vec<f64> {
    let sampler = Sampler::new(config).unwrap();
    (0..count)
        .map(|r| sampler.sample_values(&mut RngStream::new(config.seed, r))[0])
        .collect()
}

fn ks_distance(mut x: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    x.sort_by(f64::total_cmp);
    let m = x.len() as f64;
    x.iter()
        .enumerate()
        .map(|(i, &v)| {
            let f = cdf(v);
            (f - i as f64 / m).abs().max((f - (i + 1) as f64 / m).abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn model_c_has_t_marginals() {
    for (label, d) in [("c", 0.2), ("c*", -1.0)] {
        let cfg = GeneratorConfig::new(GeneratorKind::from_label(label, d).unwrap(), 2, 31).with_cutoff(64);
        let x = first_coordinates(cfg, 100_000);
        let ks = ks_distance(x, |v| student_t_cdf(v, 1.5));
        assert!(ks < 0.01, "{label}: KS = {ks}");
    }
}

#[test]
fn gaussian_linear_variance_matches_sum_of_squares() {
    for (family, d) in [(CoefficientFamily::Plain, 0.25), (CoefficientFamily::LogWeighted, -1.0)] {
        let kind = GeneratorKind::GaussLinear {
            transform: snbs::generators::Transform::Identity,
            family,
            d,
        };
        let cfg = GeneratorConfig::new(kind, 2, 8).with_cutoff(1000);
        let sum_sq = cfg.coefficients().unwrap().unwrap().sum_sq;
        let z = first_coordinates(cfg, 100_000);
        let mean = z.iter().sum::<f64>() / z.len() as f64;
        let var = z.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (z.len() - 1) as f64;
        assert!((var / sum_sq - 1.0).abs() < 0.02, "{family:?}: {var} vs {sum_sq}");
    }
}

#[test]
fn square_model_mean_approaches_zeta() {
    // sum_{j < M} (1 + j)^{-3/2} = zeta(3/2) - tail, with
    // 2 (M + 1)^{-1/2} <= tail <= 2 M^{-1/2}
    let m = 1_000_000usize;
    let cfg = GeneratorConfig::new(GeneratorKind::from_label("b", 0.25).unwrap(), 100, 0).with_cutoff(m);
    let mu = true_mean(&cfg).unwrap();
    let mf = m as f64;
    assert!(mu + 2.0 / (mf + 1.0).sqrt() <= ZETA_3_2 + 1e-9);
    assert!(mu + 2.0 / mf.sqrt() >= ZETA_3_2 - 1e-9);
    assert!((mu - 2.6103753).abs() < 1e-6, "{mu}");
}

#[test]
fn fft_and_direct_convolution_agree() {
    for seed in 0..12u64 {
        let d = [-1.0, -0.3, 0.1, 0.25, 0.4, 0.45][seed as usize % 6];
        let family = if seed % 2 == 0 { CoefficientFamily::Plain } else { CoefficientFamily::LogWeighted };
        let n = 50 + 37 * seed as usize;
        let coeffs = coefficients(family, d, (n as f64).powf(1.5) as usize).unwrap();
        let eps = RngStream::new(seed, 0).normals(n + coeffs.len() - 1);
        let fast = fft_convolve(&coeffs, &eps, n).unwrap();
        let slow = direct_convolve(&coeffs, &eps, n).unwrap();
        let worst = fast.iter().zip(&slow).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(worst <= 1e-8, "seed {seed}: {worst}");
    }
}

#[test]
fn t_quantile_round_trip() {
    for df in [0.8, 1.5, 2.0, 5.0, 30.0] {
        for k in 1..1000 {
            let p = k as f64 / 1000.0;
            let x = student_t_quantile(p, df).unwrap();
            assert!((student_t_cdf(x, df) - p).abs() <= 1e-9, "df={df} p={p}");
        }
    }
}

#[test]
fn generation_is_deterministic() {
    let kinds = [
        GeneratorKind::from_label("a", 0.25).unwrap(),
        GeneratorKind::from_label("c*", 0.4).unwrap(),
        GeneratorKind::tar(0.5),
        GeneratorKind::Lmsd { alpha: 1.5, d: 0.2, family: CoefficientFamily::Plain },
        GeneratorKind::Ma1Stable { a: 0.7, alpha: 1.3 },
    ];
    for kind in kinds {
        let cfg = GeneratorConfig::new(kind, 200, 99);
        let a = generate(&cfg).unwrap();
        let b = generate(&cfg).unwrap();
        assert_eq!(a.values(), b.values());
        assert_eq!(a.provenance().unwrap().seed, 99);
        let other = generate(&GeneratorConfig { seed: 100, ..cfg }).unwrap();
        assert_ne!(a.values(), other.values());
    }
}

#[test]
fn lmsd_values_are_positive_with_pareto_tail() {
    let kind = GeneratorKind::Lmsd { alpha: 1.5, d: -1.0, family: CoefficientFamily::Plain };
    let cfg = GeneratorConfig::new(kind, 2, 4).with_cutoff(2);
    let x = first_coordinates(cfg, 50_000);
    assert!(x.iter().all(|&v| v > 0.0));
}

#[test]
fn stable_ma_median_is_zero() {
    let kind = GeneratorKind::Ma1Stable { a: 0.0, alpha: 1.5 };
    let mut v = generate(&GeneratorConfig::new(kind, 100_000, 12)).unwrap().into_values();
    v.sort_by(f64::total_cmp);
    let median = 0.5 * (v[49_999] + v[50_000]);
    assert!(median.abs() < 0.05, "{median}");
}
