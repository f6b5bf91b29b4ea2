use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// Invalid user input; maps to exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn config_error(e: impl std::fmt::Display) -> anyhow::Error {
    anyhow::Error::new(ConfigError(e.to_string()))
}

/// Library errors caused by the inputs become configuration errors.
pub fn domain(e: rsk_painleve::Error) -> anyhow::Error {
    use rsk_painleve::Error as E;
    match e {
        E::ParameterOrder(_)
        | E::InvalidParameter(_)
        | E::InvalidPartition { .. }
        | E::LetterOutOfRange { .. }
        | E::OrderTooSmall { .. }
        | E::EmptyGrid
        | E::DivergentIntegral(_) => config_error(e),
        other => anyhow::Error::new(other),
    }
}

pub const SCHEMA_VERSION: u32 = 1;

/// Every input of a run; reports embed it after defaults are filled in so a
/// run can be replayed from its report.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub target: String,
    pub digits: u32,
    pub out: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub params: Params,
}

/// Parameters shared by all commands; each command reads the ones it needs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize, clap::Args)]
pub struct Params {
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    /// n value or grid start:stop:step
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    /// N grid for the word-event study
    #[arg(long = "N", id = "big_n")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub big_n: Option<String>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<u64>,
    /// partition as comma-separated parts
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    /// x value or grid
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    /// s value or grid
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    /// weight as JSON, e.g. {"family":"jacobi-exp","a":0,"b":1,"alpha":0,"beta":0,"gamma":0}
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
    /// exponent a (h, k) or the lower interval end
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    /// integration interval for h (below-s, above-s, whole) or k (zero-to-s, above-s, positive-half-line)
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<String>,
    /// test function for the ensemble comparison: one, indicator, strip
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    /// series order or derivative order
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    /// Monte Carlo sample count (used with --seed)
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
}

/// "v", "v1,v2,..." or "start:stop:step" (inclusive).
pub fn parse_grid_u32(spec: &str) -> anyhow::Result<Vec<u32>> {
    grid_u32(spec).map_err(config_error)
}

fn grid_u32(spec: &str) -> anyhow::Result<Vec<u32>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let out = match parts.as_slice() {
        [one] => one.split(',').map(|v| v.trim().parse::<u32>()).collect::<Result<Vec<_>, _>>()?,
        [a, b, c] => {
            let (a, b, c): (u32, u32, u32) = (a.parse()?, b.parse()?, c.parse()?);
            if c == 0 {
                bail!("grid step must be positive in {spec:?}");
            }
            (a..=b).step_by(c as usize).collect()
        }
        _ => bail!("grid {spec:?} is not v, v1,v2,... or start:stop:step"),
    };
    check_increasing(&out.iter().map(|&v| f64::from(v)).collect::<Vec<_>>(), spec)?;
    Ok(out)
}

pub fn parse_grid_f64(spec: &str) -> anyhow::Result<Vec<f64>> {
    grid_f64(spec).map_err(config_error)
}

fn grid_f64(spec: &str) -> anyhow::Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let out = match parts.as_slice() {
        [one] => one.split(',').map(|v| v.trim().parse::<f64>()).collect::<Result<Vec<_>, _>>()?,
        [a, b, c] => {
            let (a, b, c): (f64, f64, f64) = (a.parse()?, b.parse()?, c.parse()?);
            if !(c > 0.0) {
                bail!("grid step must be positive in {spec:?}");
            }
            let count = ((b - a) / c + 1e-9).floor() as i64;
            (0..=count.max(-1)).map(|i| a + c * i as f64).collect()
        }
        _ => bail!("grid {spec:?} is not v, v1,v2,... or start:stop:step"),
    };
    check_increasing(&out, spec)?;
    Ok(out)
}

fn check_increasing(v: &[f64], spec: &str) -> anyhow::Result<()> {
    if v.is_empty() {
        bail!("grid {spec:?} is empty");
    }
    if v.windows(2).any(|w| w[0] >= w[1]) {
        bail!("grid {spec:?} must be strictly increasing");
    }
    Ok(())
}

pub fn parse_parts(spec: &str) -> anyhow::Result<Vec<i64>> {
    if spec.trim().is_empty() {
        return Ok(Vec::new());
    }
    spec.split(',')
        .map(|v| v.trim().parse::<i64>().with_context(|| format!("bad part {v:?}")))
        .collect::<anyhow::Result<_>>()
        .map_err(config_error)
}

impl Params {
    pub fn p_q(&self, p: u32, q: u32) -> anyhow::Result<(u32, u32)> {
        let (p, q) = (self.p.unwrap_or(p), self.q.unwrap_or(q));
        if p == 0 {
            return Err(config_error(format!("constraint violated: p >= 1 (got p={p})")));
        }
        if q < p {
            return Err(config_error(format!("constraint violated: q >= p (got p={p}, q={q})")));
        }
        Ok((p, q))
    }
}

/// `.domain()?` on library results: input errors exit with code 2.
pub trait OrDomain<T> {
    fn domain(self) -> anyhow::Result<T>;
}

impl<T> OrDomain<T> for rsk_painleve::Result<T> {
    fn domain(self) -> anyhow::Result<T> {
        self.map_err(domain)
    }
}
