//! Continuous step laws and their `kind:param,param` spec strings.

use std::fmt;
use std::str::FromStr;

use rand::distr::Distribution;
use rand::Rng;
use rand_distr::{Cauchy, Exp, LogNormal, Normal, Uniform};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The law of a single step. Every variant is continuous, so ties between
/// walk positions have probability zero.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
#[serde(
    tag = "kind",
    rename_all = "kebab-case",
    deny_unknown_fields,
    try_from = "RawDistribution"
)]
pub enum StepDistribution {
    Uniform {
        lo: f64,
        hi: f64,
    },
    Gaussian {
        mean: f64,
        sd: f64,
    },
    Exponential {
        rate: f64,
    },
    Cauchy {
        loc: f64,
        scale: f64,
    },
    Lognormal {
        mu: f64,
        sigma: f64,
    },
    /// Uniform on `[lo, hi]` with `lo > 0`: every step goes up.
    ShiftedUniform {
        lo: f64,
        hi: f64,
    },
}

// Deserialization goes through the same validation as parsing.
#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RawDistribution {
    Uniform { lo: f64, hi: f64 },
    Gaussian { mean: f64, sd: f64 },
    Exponential { rate: f64 },
    Cauchy { loc: f64, scale: f64 },
    Lognormal { mu: f64, sigma: f64 },
    ShiftedUniform { lo: f64, hi: f64 },
}

impl TryFrom<RawDistribution> for StepDistribution {
    type Error = Error;

    fn try_from(raw: RawDistribution) -> Result<Self> {
        let d = match raw {
            RawDistribution::Uniform { lo, hi } => StepDistribution::Uniform { lo, hi },
            RawDistribution::Gaussian { mean, sd } => StepDistribution::Gaussian { mean, sd },
            RawDistribution::Exponential { rate } => StepDistribution::Exponential { rate },
            RawDistribution::Cauchy { loc, scale } => StepDistribution::Cauchy { loc, scale },
            RawDistribution::Lognormal { mu, sigma } => StepDistribution::Lognormal { mu, sigma },
            RawDistribution::ShiftedUniform { lo, hi } => {
                StepDistribution::ShiftedUniform { lo, hi }
            }
        };
        d.validate()?;
        Ok(d)
    }
}

impl StepDistribution {
    pub const KINDS: [&'static str; 6] = [
        "uniform",
        "gaussian",
        "exponential",
        "cauchy",
        "lognormal",
        "shifted-uniform",
    ];

    pub fn kind(&self) -> &'static str {
        match self {
            StepDistribution::Uniform { .. } => "uniform",
            StepDistribution::Gaussian { .. } => "gaussian",
            StepDistribution::Exponential { .. } => "exponential",
            StepDistribution::Cauchy { .. } => "cauchy",
            StepDistribution::Lognormal { .. } => "lognormal",
            StepDistribution::ShiftedUniform { .. } => "shifted-uniform",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            StepDistribution::Uniform { lo, hi } | StepDistribution::ShiftedUniform { lo, hi } => {
                vec![lo, hi]
            }
            StepDistribution::Gaussian { mean, sd } => vec![mean, sd],
            StepDistribution::Exponential { rate } => vec![rate],
            StepDistribution::Cauchy { loc, scale } => vec![loc, scale],
            StepDistribution::Lognormal { mu, sigma } => vec![mu, sigma],
        }
    }

    /// Whether the law is symmetric about zero, so that a walk and its
    /// negation are equally likely.
    pub fn is_symmetric(&self) -> bool {
        match *self {
            StepDistribution::Uniform { lo, hi } => lo == -hi,
            StepDistribution::Gaussian { mean, .. } => mean == 0.0,
            StepDistribution::Cauchy { loc, .. } => loc == 0.0,
            _ => false,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidDistribution(format!("{self}: {why}")));
        if self.params().iter().any(|x| !x.is_finite()) {
            return bad("parameters must be finite");
        }
        match *self {
            StepDistribution::Uniform { lo, hi } if lo >= hi => bad("need lo < hi"),
            StepDistribution::ShiftedUniform { lo, hi } if lo >= hi => bad("need lo < hi"),
            StepDistribution::ShiftedUniform { lo, .. } if lo <= 0.0 => bad("need lo > 0"),
            StepDistribution::Gaussian { sd, .. } if sd <= 0.0 => bad("need sd > 0"),
            StepDistribution::Exponential { rate } if rate <= 0.0 => bad("need rate > 0"),
            StepDistribution::Cauchy { scale, .. } if scale <= 0.0 => bad("need scale > 0"),
            StepDistribution::Lognormal { sigma, .. } if sigma <= 0.0 => bad("need sigma > 0"),
            _ => Ok(()),
        }
    }

    /// A sampler for this law; parameters were checked on construction.
    pub fn sampler(&self) -> StepSampler {
        let inner = match *self {
            StepDistribution::Uniform { lo, hi } | StepDistribution::ShiftedUniform { lo, hi } => {
                Inner::Uniform(Uniform::new(lo, hi).expect("validated"))
            }
            StepDistribution::Gaussian { mean, sd } => {
                Inner::Normal(Normal::new(mean, sd).expect("validated"))
            }
            StepDistribution::Exponential { rate } => {
                Inner::Exp(Exp::new(rate).expect("validated"))
            }
            StepDistribution::Cauchy { loc, scale } => {
                Inner::Cauchy(Cauchy::new(loc, scale).expect("validated"))
            }
            StepDistribution::Lognormal { mu, sigma } => {
                Inner::LogNormal(LogNormal::new(mu, sigma).expect("validated"))
            }
        };
        StepSampler(inner)
    }
}

#[derive(Clone, Copy, Debug)]
enum Inner {
    Uniform(Uniform<f64>),
    Normal(Normal<f64>),
    Exp(Exp<f64>),
    Cauchy(Cauchy<f64>),
    LogNormal(LogNormal<f64>),
}

#[derive(Clone, Copy, Debug)]
pub struct StepSampler(Inner);

impl Distribution<f64> for StepSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match &self.0 {
            Inner::Uniform(d) => d.sample(rng),
            Inner::Normal(d) => d.sample(rng),
            Inner::Exp(d) => d.sample(rng),
            Inner::Cauchy(d) => d.sample(rng),
            Inner::LogNormal(d) => d.sample(rng),
        }
    }
}

impl fmt::Display for StepDistribution {
    /// The spec string, e.g. `gaussian:0,1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(f64::to_string).collect();
        write!(f, "{}:{}", self.kind(), params.join(","))
    }
}

impl FromStr for StepDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: String| Error::InvalidDistribution(format!("`{s}`: {why}"));
        let (kind, rest) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| bad("expected kind:param,...".into()))?;
        let params: Vec<f64> = rest
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| bad(format!("`{t}` is not a number")))
            })
            .collect::<Result<_>>()?;
        let want = match kind {
            "exponential" => 1,
            "uniform" | "gaussian" | "normal" | "cauchy" | "lognormal" | "shifted-uniform" => 2,
            other => {
                return Err(bad(format!(
                    "unknown kind `{other}`, expected one of {}",
                    Self::KINDS.join(", ")
                )))
            }
        };
        if params.len() != want {
            return Err(bad(format!("{kind} takes {want} parameter(s)")));
        }
        let (a, b) = (params[0], params.get(1).copied().unwrap_or(f64::NAN));
        let d = match kind {
            "uniform" => StepDistribution::Uniform { lo: a, hi: b },
            "gaussian" | "normal" => StepDistribution::Gaussian { mean: a, sd: b },
            "exponential" => StepDistribution::Exponential { rate: a },
            "cauchy" => StepDistribution::Cauchy { loc: a, scale: b },
            "lognormal" => StepDistribution::Lognormal { mu: a, sigma: b },
            _ => StepDistribution::ShiftedUniform { lo: a, hi: b },
        };
        d.validate()?;
        Ok(d)
    }
}
