use super::study::{ConvergenceStudy, StudyPoint};
use crate::combinatorics::enumerate_partitions;
use crate::error::{Error, Result};
use crate::hp::Precision;
use crate::measures::{ln_factorial, ln_poissonized_measure, ln_rational, strip_expectation, StripFunctionalParams};
use crate::quadrature::tanh_sinh_rule_f64;
use crate::tau::hermitian_ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use statrs::distribution::{DiscreteCDF, Poisson};

/// x > 0 solving n - p = x + s sqrt(2x), if any.
pub fn rescaled_intensity(n: u32, p: u32, s: f64) -> Option<f64> {
    if n < p {
        return None;
    }
    let m = f64::from(n - p);
    let y = (-s * 2f64.sqrt() + (2.0 * s * s + 4.0 * m).sqrt()) / 2.0;
    (y > 0.0).then_some(y * y)
}

/// The integer n closest to p + x + s sqrt(2x).
pub fn nearest_integral_n(x: f64, p: u32, s: f64) -> u32 {
    (f64::from(p) + x + s * (2.0 * x).sqrt()).round().max(0.0) as u32
}

/// Poisson(mean) indices kept in a truncated sum: 12 standard deviations
/// plus a margin on each side, never below `floor`.
fn poisson_window(mean: f64, floor: u64) -> (u64, u64) {
    let sd = mean.sqrt();
    let lo = (mean - 12.0 * sd - 10.0).floor().max(floor as f64) as u64;
    let hi = (mean + 12.0 * sd + 20.0).ceil() as u64;
    (lo.max(floor), hi.max(floor))
}

fn discarded_mass(mean: f64, floor: u64, lo: u64, hi: u64) -> f64 {
    let Ok(d) = Poisson::new(mean) else { return 0.0 };
    let lower = if lo > floor { d.cdf(lo - 1) - if floor > 0 { d.cdf(floor - 1) } else { 0.0 } } else { 0.0 };
    lower.max(0.0) + d.sf(hi)
}

/// ln E^{l,p}(strip) for l in a window, shared by every intensity in
/// [x_min, x_max].
#[derive(Clone, Debug)]
pub struct StripPoissonTable {
    pub params: StripFunctionalParams,
    pub lo: u64,
    pub ln_values: Vec<f64>,
    pub discarded: f64,
}

impl StripPoissonTable {
    pub fn new(params: StripFunctionalParams, x_min: f64, x_max: f64) -> Result<Self> {
        if !(x_min > 0.0 && x_max >= x_min) {
            return Err(Error::InvalidParameter(format!("bad intensity range [{x_min}, {x_max}]")));
        }
        let p = f64::from(params.p);
        let floor = params.rectangle_weight();
        let (lo, _) = poisson_window(p * x_min, floor);
        let (_, hi) = poisson_window(p * x_max, floor);
        let ln_values = (lo..=hi)
            .into_par_iter()
            .map(|l| {
                let e = strip_expectation(l, params);
                if e == 0 { f64::NEG_INFINITY } else { ln_rational(&e) }
            })
            .collect();
        let discarded = discarded_mass(p * x_min, floor, lo, hi).max(discarded_mass(p * x_max, floor, lo, hi));
        Ok(StripPoissonTable { params, lo, ln_values, discarded })
    }

    fn weights(&self, x: f64) -> Vec<f64> {
        let mean = f64::from(self.params.p) * x;
        self.ln_values
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let l = self.lo + i as u64;
                -mean + l as f64 * mean.ln() - ln_factorial(l) + e
            })
            .collect()
    }

    /// E_{x,p}(strip) = sum_l Poisson(px)(l) E^{l,p}(strip).
    pub fn expectation(&self, x: f64) -> f64 {
        self.weights(x).iter().map(|w| w.exp()).sum()
    }

    /// u(x) = x d/dx log E_{x,p}(strip) = <l> - p x under weights Poisson * E.
    pub fn log_derivative(&self, x: f64) -> f64 {
        let w = self.weights(x);
        let top = w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (mut z, mut m) = (0.0, 0.0);
        for (i, wi) in w.iter().enumerate() {
            let e = (wi - top).exp();
            z += e;
            m += e * (self.lo + i as u64) as f64;
        }
        m / z - f64::from(self.params.p) * x
    }
}

/// How the intensities of a Poissonized study are chosen.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntensityGrid {
    /// integer n values; x solves n - p = x + s sqrt(2x)
    Integers(Vec<u32>),
    /// target x values; n is rounded to the nearest integer and x re-solved
    Targets(Vec<f64>),
}

/// (2x)^{-p(q-p)/2} E_{x,p}(strip) against the normalized Hermitian integral
/// ratio over spectra in [s, inf).
pub fn poissonized_limit_study(p: u32, q: u32, s: f64, grid: &IntensityGrid, precision: Precision) -> Result<ConvergenceStudy> {
    if p == 0 || q < p {
        return Err(Error::ParameterOrder(format!("need q >= p >= 1, got p={p} q={q}")));
    }
    let ns: Vec<u32> = match grid {
        IntensityGrid::Integers(ns) => ns.clone(),
        IntensityGrid::Targets(xs) => xs.iter().map(|&x| nearest_integral_n(x, p, s)).collect(),
    };
    let factorial: f64 = (1..=p).map(f64::from).product();
    let rhs = hermitian_ratio(p as usize, q as usize, s, precision)?.to_f64() / factorial;
    let mut notes = Vec::new();
    let points = ns
        .par_iter()
        .map(|&n| -> Result<(StudyPoint, f64)> {
            let x = rescaled_intensity(n, p, s)
                .ok_or_else(|| Error::InvalidParameter(format!("no positive intensity for n={n}, s={s}")))?;
            let params = StripFunctionalParams::new(n, p, q)?;
            let table = StripPoissonTable::new(params, x, x)?;
            let scale = -(f64::from(p * (q - p)) / 2.0) * (2.0 * x).ln();
            let lhs = table.expectation(x) * scale.exp();
            Ok((StudyPoint::absolute(x, lhs, rhs).with_detail(format!("n={n}")), table.discarded))
        })
        .collect::<Result<Vec<_>>>()?;
    for (pt, discarded) in &points {
        if *discarded > pt.gap / 10.0 && pt.gap > 0.0 {
            log::warn!("Poisson truncation mass {discarded:e} is not small against gap {:e}", pt.gap);
            notes.push(format!("truncation mass {discarded:e} at x={}", pt.parameter));
        }
    }
    let mut study = ConvergenceStudy::new(
        "poissonized-limit",
        json!({"p": p, "q": q, "s": s, "grid": grid, "digits": precision.digits}),
        points.into_iter().map(|(pt, _)| pt).collect(),
    )?;
    study.notes = notes;
    Ok(study)
}

/// Test functions of the rescaled row lengths.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TestFunction {
    One,
    /// all coordinates >= s
    Indicator { s: f64 },
    /// prod_i (e_i - s)^power on all coordinates >= s
    StripPolynomial { s: f64, power: u32 },
}

impl TestFunction {
    pub fn eval(&self, e: &[f64]) -> f64 {
        match *self {
            TestFunction::One => 1.0,
            TestFunction::Indicator { s } => f64::from(u8::from(e.iter().all(|&v| v >= s))),
            TestFunction::StripPolynomial { s, power } => {
                if e.iter().all(|&v| v >= s) { e.iter().map(|v| (v - s).powi(power as i32)).product() } else { 0.0 }
            }
        }
    }

    fn lower(&self) -> Option<f64> {
        match *self {
            TestFunction::One => None,
            TestFunction::Indicator { s } | TestFunction::StripPolynomial { s, .. } => Some(s),
        }
    }
}

/// Integral of g against the Gaussian unitary eigenvalue density on R^p
/// (equivalently p! times the integral over ordered coordinates), p <= 2.
pub fn gaussian_ensemble_expectation(p: u32, g: TestFunction) -> Result<f64> {
    // nodes mapped from (-1, 1) to the half-line [s, inf) or to the line
    let rule = tanh_sinh_rule_f64(1.0 / 64.0, 4.0);
    let nodes: Vec<(f64, f64)> = rule
        .iter()
        .map(|&(t, w, opx, omx)| match g.lower() {
            Some(s) => (s + opx / omx, w * 2.0 / (omx * omx)),
            None => (t / (opx * omx), w * (1.0 + t * t) / (opx * omx).powi(2)),
        })
        .filter(|(x, w)| x.is_finite() && w.is_finite())
        .collect();
    let pi = std::f64::consts::PI;
    match p {
        1 => Ok(nodes.iter().map(|&(x, w)| w * g.eval(&[x]) * (-x * x).exp()).sum::<f64>() / pi.sqrt()),
        2 => {
            let mut total = 0.0;
            for &(x, wx) in &nodes {
                for &(y, wy) in &nodes {
                    total += wx * wy * g.eval(&[x, y]) * (x - y).powi(2) * (-x * x - y * y).exp();
                }
            }
            // normalization (2 pi) 2^{-2} 1! 2! = pi
            Ok(total / pi)
        }
        _ => Err(Error::InvalidParameter(format!("ensemble quadrature implemented for p <= 2, got {p}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub p: u32,
    pub x: f64,
    pub function: TestFunction,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub discarded_mass: f64,
}

/// E_{x,p}(g((lambda_i - x)/sqrt(2x))) by partition sums against the
/// Gaussian unitary ensemble expectation of g.
pub fn poissonized_sanity(p: u32, x: f64, g: TestFunction) -> Result<ComparisonReport> {
    if !(1..=2).contains(&p) {
        return Err(Error::InvalidParameter(format!("sanity check supports p in 1..=2, got {p}")));
    }
    if !(x > 0.0) {
        return Err(Error::InvalidParameter("Poisson intensity must be positive".into()));
    }
    let mean = f64::from(p) * x;
    let (lo, hi) = poisson_window(mean, 0);
    let scale = (2.0 * x).sqrt();
    let lhs: f64 = (lo..=hi)
        .into_par_iter()
        .map(|ell| {
            enumerate_partitions(ell, p as usize, None)
                .map(|lam| {
                    let e: Vec<f64> = (0..p as usize).map(|i| (f64::from(lam.part(i)) - x) / scale).collect();
                    let v = g.eval(&e);
                    if v == 0.0 { 0.0 } else { v * ln_poissonized_measure(&lam, p, x).exp() }
                })
                .sum::<f64>()
        })
        .sum();
    let rhs = gaussian_ensemble_expectation(p, g)?;
    Ok(ComparisonReport { p, x, function: g, lhs, rhs, gap: (lhs - rhs).abs(), discarded_mass: discarded_mass(mean, 0, lo, hi) })
}
