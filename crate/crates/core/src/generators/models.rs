use std::f64::consts::PI;

use super::coefficients::{coefficients, CoefficientFamily, CoefficientVector};
use super::convolve::LinearFilter;
use super::rng::RngStream;
use super::special::gaussian_to_t;
use crate::error::{invalid, Result};
use crate::series::{Provenance, TimeSeries};

/// Pointwise map applied to the Gaussian linear process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    Identity,
    Square,
    /// `Phi_t^{-1}(Phi_N(z / sqrt(sum_sq)))`: t marginals with `df` degrees of freedom.
    TInverse { df: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorKind {
    GaussLinear {
        transform: Transform,
        family: CoefficientFamily,
        d: f64,
    },
    /// `X_i = rho |X_{i-1}| + eps_i`
    Tar { rho: f64, burn_in: usize },
    /// `X_i = xi_i exp(Z_i)` with Pareto(`alpha`) `xi` and Gaussian linear `Z`.
    Lmsd {
        alpha: f64,
        d: f64,
        family: CoefficientFamily,
    },
    /// `X_i = eps_i + a eps_{i-1}` with symmetric `alpha`-stable `eps`.
    Ma1Stable { a: f64, alpha: f64 },
}

pub const DEFAULT_TAR_BURN_IN: usize = 1000;
pub const DEFAULT_T_DF: f64 = 1.5;

impl GeneratorKind {
    /// Gaussian-subordinated models by their short labels:
    /// `a`, `b`, `c` (plain weights) and `a*`, `b*`, `c*` (log weights).
    pub fn from_label(label: &str, d: f64) -> Result<Self> {
        let (base, family) = match label.strip_suffix('*') {
            Some(base) => (base, CoefficientFamily::LogWeighted),
            None => (label, CoefficientFamily::Plain),
        };
        let transform = match base {
            "a" => Transform::Identity,
            "b" => Transform::Square,
            "c" => Transform::TInverse { df: DEFAULT_T_DF },
            _ => return Err(invalid(format!("unknown model label `{label}`"))),
        };
        Ok(Self::GaussLinear {
            transform,
            family,
            d,
        })
    }

    pub fn tar(rho: f64) -> Self {
        Self::Tar {
            rho,
            burn_in: DEFAULT_TAR_BURN_IN,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::GaussLinear {
                transform, family, ..
            } => {
                let base = match transform {
                    Transform::Identity => "a",
                    Transform::Square => "b",
                    Transform::TInverse { .. } => "c",
                };
                match family {
                    CoefficientFamily::Plain => base.to_string(),
                    CoefficientFamily::LogWeighted => format!("{base}*"),
                }
            }
            Self::Tar { .. } => "tar".into(),
            Self::Lmsd { .. } => "lmsd".into(),
            Self::Ma1Stable { .. } => "ma1stable".into(),
        }
    }

    /// Memory parameter of the underlying Gaussian process, where there is one.
    pub fn memory(&self) -> Option<f64> {
        match *self {
            Self::GaussLinear { d, .. } | Self::Lmsd { d, .. } => Some(d),
            _ => None,
        }
    }

    fn linear_part(&self) -> Option<(CoefficientFamily, f64)> {
        match *self {
            Self::GaussLinear { family, d, .. } | Self::Lmsd { family, d, .. } => Some((family, d)),
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some((_, d)) = self.linear_part() {
            if !(d < 0.5) {
                return Err(invalid(format!("d = {d} must be below 1/2")));
            }
        }
        match *self {
            Self::GaussLinear {
                transform: Transform::TInverse { df },
                ..
            } if !(df > 0.0 && df.is_finite()) => {
                Err(invalid(format!("degrees of freedom {df} must be positive")))
            }
            Self::Tar { rho, .. } if !(0.0..1.0).contains(&rho) => {
                Err(invalid(format!("TAR coefficient rho = {rho} must lie in [0, 1)")))
            }
            Self::Lmsd { alpha, .. } if !(alpha > 1.0 && alpha < 2.0) => {
                Err(invalid(format!("LMSD tail index {alpha} must lie in (1, 2)")))
            }
            Self::Ma1Stable { a, alpha } if !(a >= 0.0 && a.is_finite()) || !(alpha > 1.0 && alpha < 2.0) => {
                Err(invalid(format!("MA(1) needs a >= 0 and alpha in (1, 2), got a = {a}, alpha = {alpha}")))
            }
            _ => Ok(()),
        }
    }
}

/// Full description of one simulated series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    pub kind: GeneratorKind,
    pub n: usize,
    pub seed: u64,
    /// Number of moving-average weights; `None` means `floor(n^1.5)`.
    pub cutoff: Option<usize>,
}

impl GeneratorConfig {
    pub fn new(kind: GeneratorKind, n: usize, seed: u64) -> Self {
        Self {
            kind,
            n,
            seed,
            cutoff: None,
        }
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Self {
        self.cutoff = Some(cutoff);
        self
    }

    pub fn effective_cutoff(&self) -> usize {
        self.cutoff
            .unwrap_or_else(|| (self.n as f64).powf(1.5).floor() as usize)
    }

    /// Moving-average weights of the Gaussian component, if the model has one.
    pub fn coefficients(&self) -> Result<Option<CoefficientVector>> {
        self.kind
            .linear_part()
            .map(|(family, d)| coefficients(family, d, self.effective_cutoff()))
            .transpose()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(invalid(format!("series length {} must be at least 2", self.n)));
        }
        if self.kind.linear_part().is_some() && self.effective_cutoff() < self.n {
            return Err(invalid(format!(
                "cutoff {} must be at least n = {}",
                self.effective_cutoff(),
                self.n
            )));
        }
        self.kind.validate()
    }
}

/// A validated generator with its filter prepared, for drawing many series
/// from independent streams.
#[derive(Debug)]
pub struct Sampler {
    config: GeneratorConfig,
    coeffs: Option<CoefficientVector>,
    filter: Option<LinearFilter>,
}

impl Sampler {
    pub fn new(config: GeneratorConfig) -> Result<Self> {
        config.validate()?;
        let coeffs = config.coefficients()?;
        let filter = coeffs.as_ref().map(|c| LinearFilter::new(c, config.n));
        Ok(Self {
            config,
            coeffs,
            filter,
        })
    }

    pub fn config(&self) -> &GeneratorConfig {
        &self.config
    }

    pub fn coefficients(&self) -> Option<&CoefficientVector> {
        self.coeffs.as_ref()
    }

    fn gaussian_linear(&self, rng: &mut RngStream) -> Vec<f64> {
        let filter = self.filter.as_ref().expect("linear model has a filter");
        let innovations = rng.normals(filter.innovations_needed());
        filter
            .apply(&innovations)
            .expect("innovation count matches filter")
    }

    pub fn sample_values(&self, rng: &mut RngStream) -> Vec<f64> {
        let n = self.config.n;
        match self.config.kind {
            GeneratorKind::GaussLinear { transform, .. } => {
                let mut z = self.gaussian_linear(rng);
                match transform {
                    Transform::Identity => {}
                    Transform::Square => z.iter_mut().for_each(|v| *v *= *v),
                    Transform::TInverse { df } => {
                        let scale = 1.0 / self.coeffs.as_ref().unwrap().sum_sq.sqrt();
                        z.iter_mut().for_each(|v| *v = gaussian_to_t(*v * scale, df));
                    }
                }
                z
            }
            GeneratorKind::Tar { rho, burn_in } => {
                let mut x = 0.0f64;
                for _ in 0..burn_in {
                    x = rho * x.abs() + rng.normal();
                }
                (0..n)
                    .map(|_| {
                        x = rho * x.abs() + rng.normal();
                        x
                    })
                    .collect()
            }
            GeneratorKind::Lmsd { alpha, .. } => {
                let z = self.gaussian_linear(rng);
                z.into_iter()
                    .map(|zi| rng.uniform().powf(-1.0 / alpha) * zi.exp())
                    .collect()
            }
            GeneratorKind::Ma1Stable { a, alpha } => {
                let eps: Vec<f64> = (0..=n).map(|_| symmetric_stable(rng, alpha)).collect();
                eps.windows(2).map(|w| w[1] + a * w[0]).collect()
            }
        }
    }

    pub fn sample(&self, rng: &mut RngStream) -> Result<TimeSeries> {
        TimeSeries::new(self.sample_values(rng))
    }
}

/// Standard symmetric alpha-stable draw (Chambers–Mallows–Stuck, beta = 0).
pub fn symmetric_stable(rng: &mut RngStream, alpha: f64) -> f64 {
    let v = PI * (rng.uniform() - 0.5);
    let w = rng.exponential();
    let av = alpha * v;
    av.sin() / v.cos().powf(1.0 / alpha) * ((v - av).cos() / w).powf((1.0 - alpha) / alpha)
}

/// Simulates one series from stream 0 of `config.seed`.
pub fn generate(config: &GeneratorConfig) -> Result<TimeSeries> {
    let sampler = Sampler::new(*config)?;
    let mut rng = RngStream::new(config.seed, 0);
    Ok(sampler.sample(&mut rng)?.with_provenance(Provenance {
        model: config.kind.label(),
        seed: config.seed,
    }))
}
