//! Problem files: JSON with complex numbers as `[re, im]` pairs and 1-based
//! vector indices.

use std::fmt;

use serde::{Deserialize, Serialize};

pub type Pair = [f64; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Bases,
    Reduce,
    Eval,
    Verify,
    Lattice,
    Integral,
    Resonance,
    Distribution,
    Family,
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).map_err(|_| fmt::Error)?;
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

/// Sign convention of the `omega` array. With `ell` the rows are shift
/// vectors `ℓ = -ω`, as in the `β + mℓ` form of the distributional series.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Omega,
    Ell,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Reduced,
    #[default]
    Full,
    Mixed,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivativeKind {
    #[default]
    FiniteDifference,
    Cauchy,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSpec {
    pub count: usize,
    /// Bound on `|x_j|` for generated arguments.
    #[serde(default = "default_radius")]
    pub radius: f64,
}

fn default_radius() -> f64 {
    0.3
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContourName {
    Hankel,
    ShiftedPlane,
    Euler,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralConfig {
    pub contour: ContourName,
    #[serde(default = "default_nodes")]
    pub nodes: usize,
    #[serde(default)]
    pub cutoff: Option<f64>,
    #[serde(default = "default_quad_tolerance")]
    pub quadrature_tolerance: f64,
}

fn default_nodes() -> usize {
    64
}

fn default_quad_tolerance() -> f64 {
    1e-13
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyConfig {
    /// 1-based bases of the candidate family.
    pub bases: Vec<Vec<usize>>,
    #[serde(default = "default_family_samples")]
    pub samples: usize,
}

fn default_family_samples() -> usize {
    6
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PhiConfig {
    /// `φ(z) = exp(<θ, z>)`, whose pairing has a closed form.
    Exponential { theta: Vec<Pair> },
    /// Fourier transform of a windowed bump on `[-half_width, half_width]`
    /// (`n = 1` only).
    Bump { half_width: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionConfig {
    pub phi: PhiConfig,
    #[serde(default = "default_outer")]
    pub outer: u32,
    #[serde(default = "default_inner")]
    pub inner: u32,
}

fn default_outer() -> u32 {
    gg_core::distributions::DEFAULT_OUTER
}

fn default_inner() -> u32 {
    gg_core::distributions::DEFAULT_INNER
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub task: Task,
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub omega: Vec<Vec<Pair>>,
    #[serde(default)]
    pub convention: Convention,
    /// 1-based indices of the base `I`.
    #[serde(default)]
    pub base: Option<Vec<usize>>,
    #[serde(default)]
    pub k: Option<Vec<i64>>,
    #[serde(default)]
    pub beta: Option<Vec<Vec<Pair>>>,
    #[serde(default)]
    pub a: Option<Vec<Vec<Pair>>>,
    #[serde(default)]
    pub x: Option<Vec<Vec<Pair>>>,
    #[serde(default)]
    pub samples: Option<SampleSpec>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default = "default_truncation")]
    pub truncation: u32,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub series: SeriesKind,
    /// 1-based indices of `I₁` for the mixed form.
    #[serde(default)]
    pub mixed_first: Option<Vec<usize>>,
    #[serde(default)]
    pub derivative: DerivativeKind,
    /// Adds `perturb * a_1` to the evaluator: a negative control that must
    /// fail verification.
    #[serde(default)]
    pub perturb: Option<f64>,
    #[serde(default)]
    pub integral: Option<IntegralConfig>,
    #[serde(default)]
    pub family: Option<FamilyConfig>,
    #[serde(default)]
    pub distribution: Option<DistributionConfig>,
}

fn default_truncation() -> u32 {
    30
}

fn default_tolerance() -> f64 {
    gg_core::verify::DEFAULT_TOLERANCE
}

/// Command-line overrides, applied after parsing.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
    pub truncation: Option<u32>,
    pub convention: Option<Convention>,
}

/// A parse or validation failure, located by line/column or field path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for ConfigError {}

fn field(location: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError {
        location: location.into(),
        message: message.into(),
    }
}

impl ProblemConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(s) = o.seed {
            self.seed = Some(s);
        }
        if let Some(t) = o.tolerance {
            self.tolerance = t;
        }
        if let Some(m) = o.truncation {
            self.truncation = m;
        }
        if let Some(c) = o.convention {
            self.convention = c;
        }
    }

    /// Dimension and index checks that do not need any numerics.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n == 0 {
            return Err(field("n", "must be at least 1"));
        }
        if self.omega.len() != self.big_n {
            return Err(field("omega", format!("has {} rows, N is {}", self.omega.len(), self.big_n)));
        }
        if self.big_n < self.n {
            return Err(field("N", format!("must be at least n = {}", self.n)));
        }
        for (j, row) in self.omega.iter().enumerate() {
            if row.len() != self.n {
                return Err(field(format!("omega[{j}]"), format!("has {} entries, n is {}", row.len(), self.n)));
            }
            check_finite(&format!("omega[{j}]"), row)?;
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(field("tolerance", "must be a positive number"));
        }
        if let Some(b) = &self.base {
            self.check_indices("base", b)?;
            if b.len() != self.n {
                return Err(field("base", format!("has {} indices, n is {}", b.len(), self.n)));
            }
        }
        if let Some(k) = &self.k {
            if k.len() != self.n {
                return Err(field("k", format!("has {} entries, n is {}", k.len(), self.n)));
            }
        }
        if let Some(first) = &self.mixed_first {
            self.check_indices("mixed_first", first)?;
        }
        if self.series == SeriesKind::Mixed && self.mixed_first.is_none() {
            return Err(field("mixed_first", "required for the mixed series"));
        }
        let r = self.big_n - self.n;
        self.check_points("beta", self.beta.as_deref(), self.n)?;
        self.check_points("a", self.a.as_deref(), self.big_n)?;
        self.check_points("x", self.x.as_deref(), r)?;
        if let (Some(b), Some(a)) = (&self.beta, &self.a) {
            if a.len() != b.len() {
                return Err(field("a", format!("has {} points, beta has {}", a.len(), b.len())));
            }
        }
        if let (Some(b), Some(x)) = (&self.beta, &self.x) {
            if x.len() != b.len() {
                return Err(field("x", format!("has {} points, beta has {}", x.len(), b.len())));
            }
        }
        if self.samples.is_some() && self.seed.is_none() {
            return Err(field("seed", "required when random samples are requested"));
        }
        if let Some(s) = &self.samples {
            if !(s.radius > 0.0 && s.radius.is_finite()) {
                return Err(field("samples.radius", "must be a positive number"));
            }
        }
        if let Some(p) = self.perturb {
            if !p.is_finite() {
                return Err(field("perturb", "must be finite"));
            }
        }
        if let Some(f) = &self.family {
            for (q, b) in f.bases.iter().enumerate() {
                self.check_indices(&format!("family.bases[{q}]"), b)?;
                if b.len() != self.n {
                    return Err(field(format!("family.bases[{q}]"), format!("has {} indices, n is {}", b.len(), self.n)));
                }
            }
        }
        if let Some(d) = &self.distribution {
            if let PhiConfig::Exponential { theta } = &d.phi {
                if theta.len() != self.n {
                    return Err(field("distribution.phi.theta", format!("has {} entries, n is {}", theta.len(), self.n)));
                }
                check_finite("distribution.phi.theta", theta)?;
            }
        }
        match self.task {
            Task::Integral if self.integral.is_none() => Err(field("integral", "required for task integral")),
            Task::Family if self.family.is_none() => Err(field("family", "required for task family")),
            Task::Distribution if self.distribution.is_none() => {
                Err(field("distribution", "required for task distribution"))
            }
            Task::Integral if self.beta.is_none() || self.x.is_none() => {
                Err(field("beta", "integrals need explicit beta and x lists"))
            }
            Task::Distribution if self.x.is_none() => Err(field("x", "required for task distribution")),
            _ => Ok(()),
        }
    }

    fn check_indices(&self, name: &str, idx: &[usize]) -> Result<(), ConfigError> {
        for (p, &i) in idx.iter().enumerate() {
            if i == 0 || i > self.big_n {
                return Err(field(format!("{name}[{p}]"), format!("index {i} outside 1..={}", self.big_n)));
            }
            if idx[..p].contains(&i) {
                return Err(field(format!("{name}[{p}]"), format!("index {i} repeated")));
            }
        }
        Ok(())
    }

    fn check_points(&self, name: &str, pts: Option<&[Vec<Pair>]>, len: usize) -> Result<(), ConfigError> {
        for (s, p) in pts.unwrap_or_default().iter().enumerate() {
            if p.len() != len {
                return Err(field(format!("{name}[{s}]"), format!("has {} entries, expected {len}", p.len())));
            }
            check_finite(&format!("{name}[{s}]"), p)?;
        }
        Ok(())
    }
}

fn check_finite(name: &str, v: &[Pair]) -> Result<(), ConfigError> {
    match v.iter().position(|p| !(p[0].is_finite() && p[1].is_finite())) {
        Some(i) => Err(field(format!("{name}[{i}]"), "not a finite number")),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAUSS: &str = r#"{"task": "verify", "n": 3, "N": 4,
        "omega": [[[1,0],[0,0],[0,0]], [[0,0],[1,0],[0,0]], [[0,0],[0,0],[1,0]], [[1,0],[1,0],[-1,0]]]}"#;

    #[test]
    fn parses_with_defaults() {
        let c = ProblemConfig::parse(GAUSS).unwrap();
        assert_eq!(c.task, Task::Verify);
        assert_eq!(c.convention, Convention::Omega);
        assert_eq!(c.series, SeriesKind::Full);
        assert_eq!(c.truncation, 30);
        c.validate().unwrap();
        assert_eq!(c.task.to_string(), "verify");
    }

    #[test]
    fn diagnostics_name_the_field() {
        let mut c = ProblemConfig::parse(GAUSS).unwrap();
        c.base = Some(vec![1, 2, 5]);
        assert_eq!(c.validate().unwrap_err().location, "base[2]");
        c.base = None;
        c.samples = Some(SampleSpec { count: 3, radius: 0.3 });
        assert_eq!(c.validate().unwrap_err().location, "seed");
        c.seed = Some(1);
        c.omega[1].pop();
        assert_eq!(c.validate().unwrap_err().location, "omega[1]");
    }

    #[test]
    fn parse_errors_carry_a_position() {
        let bad = GAUSS.replace("[[1,0],[0,0],[0,0]]", "[[1,0,3],[0,0],[0,0]]");
        let e = ProblemConfig::parse(&bad).unwrap_err();
        assert!(e.location.starts_with("line 2"), "{e}");
        let e = ProblemConfig::parse(r#"{"task": "verify", "n": 1, "N": 1, "omega": [[[1,0]]], "bogus": 1}"#).unwrap_err();
        assert!(e.message.contains("bogus"), "{e}");
    }
}
