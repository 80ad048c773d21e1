//! JSON seed specification.
//!
//! ```json
//! { "domain": "position", "kind": "piecewise_constant",
//!   "segments": [{ "start_a": "0", "end_a": "1/2", "re": 1.0, "im": 0.0, "mu": 0.0 }] }
//! ```
//!
//! Endpoints are rational strings in units of `a`. A segment may carry
//! `mu_half_a` (a rational multiple of `a/2` added to `mu`) or, instead of a
//! single amplitude, a list of `terms`. Gaussian seeds use the optional
//! `gaussian` object, sampled seeds `x0`, `dx` and `samples` (`[re, im]` pairs).

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Domain, Gaussian, Rational, SeedFunction, SeedKind, Segment, Term};
use crate::{Error, Result, C64};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindTag {
    PiecewiseConstant,
    PiecewiseModulated,
    Gaussian,
    Sampled,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    #[serde(default)]
    pub re: f64,
    #[serde(default)]
    pub im: f64,
    #[serde(default)]
    pub mu: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_half_a: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentSpec {
    pub start_a: String,
    pub end_a: String,
    #[serde(default)]
    pub re: f64,
    #[serde(default)]
    pub im: f64,
    #[serde(default)]
    pub mu: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_half_a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermSpec>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianSpec {
    #[serde(default = "one")]
    pub re: f64,
    #[serde(default)]
    pub im: f64,
    #[serde(default)]
    pub center: f64,
    #[serde(default = "one")]
    pub width: f64,
    #[serde(default)]
    pub mu: f64,
    #[serde(default)]
    pub order: u8,
}

fn one() -> f64 {
    1.0
}

impl Default for GaussianSpec {
    fn default() -> Self {
        Self { re: 1.0, im: 0.0, center: 0.0, width: 1.0, mu: 0.0, order: 0 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedSpec {
    pub domain: Domain,
    pub kind: KindTag,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub segments: Vec<SegmentSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gaussian: Option<GaussianSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dx: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<[f64; 2]>,
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidSeed(format!("'{s}' is not a rational number"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().map_err(|_| bad())?, d.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.parse::<i64>().map_err(|_| bad())?, 1),
    };
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn term(re: f64, im: f64, mu: f64, mu_half_a: &Option<String>) -> Result<Term> {
    let mu_half_a = match mu_half_a {
        Some(q) => parse_rational(q)?,
        None => Rational::from_integer(0),
    };
    Ok(Term { amplitude: C64::new(re, im), mu_half_a, mu })
}

impl SeedSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSeed(format!("malformed seed JSON: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn build(&self) -> Result<SeedFunction> {
        match self.kind {
            KindTag::PiecewiseConstant | KindTag::PiecewiseModulated => {
                let constant = matches!(self.kind, KindTag::PiecewiseConstant);
                let mut segs = Vec::with_capacity(self.segments.len());
                for s in &self.segments {
                    let terms = match &s.terms {
                        Some(ts) => {
                            ts.iter().map(|t| term(t.re, t.im, t.mu, &t.mu_half_a)).collect::<Result<Vec<_>>>()?
                        }
                        None => vec![term(s.re, s.im, s.mu, &s.mu_half_a)?],
                    };
                    if constant && terms.iter().any(|t| t.mu != 0.0 || t.mu_half_a != Rational::from_integer(0)) {
                        return Err(Error::InvalidSeed("piecewise_constant segment with nonzero modulation".into()));
                    }
                    segs.push(Segment { start: parse_rational(&s.start_a)?, end: parse_rational(&s.end_a)?, terms });
                }
                SeedFunction::new(self.domain, SeedKind::Piecewise(segs))
            }
            KindTag::Gaussian => {
                let g = self.gaussian.clone().unwrap_or_default();
                SeedFunction::gaussian(
                    self.domain,
                    Gaussian {
                        amplitude: C64::new(g.re, g.im),
                        center: g.center,
                        width: g.width,
                        mu: g.mu,
                        order: g.order,
                    },
                )
            }
            KindTag::Sampled => {
                let (x0, dx) = match (self.x0, self.dx) {
                    (Some(x0), Some(dx)) => (x0, dx),
                    _ => return Err(Error::InvalidSeed("sampled seed needs x0 and dx".into())),
                };
                SeedFunction::sampled(
                    self.domain,
                    x0,
                    dx,
                    self.samples.iter().map(|&[re, im]| C64::new(re, im)).collect(),
                )
            }
        }
    }
}

/// Accepts either a path to a seed JSON file or `preset:NAME`.
pub fn load(source: &str) -> Result<SeedFunction> {
    match source.strip_prefix("preset:") {
        Some(name) => super::presets::by_name(name),
        None => SeedSpec::from_path(Path::new(source))?.build(),
    }
}
