use super::poissonized::StripPoissonTable;
use super::study::{ConvergenceStudy, StudyPoint};
use crate::error::{Error, Result};
use crate::hp::Precision;
use crate::measures::StripFunctionalParams;
use crate::painleve::{residual, OdeResidualSpec, PvSeriesReport, ResidualReport, SampledFunction};
use crate::tau::{HInterval, PainleveH};
use rayon::prelude::*;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::BTreeMap;

/// Sum of the truncated u-series at x.  Fails when the last retained term
/// is not negligible against the sum.
pub fn strip_u_series(report: &PvSeriesReport, x: f64) -> Result<f64> {
    let c = &report.u.coefficients;
    let value = report.u.eval_f64(x);
    let last = c.last().map_or(0.0, |v| v.to_f64() * x.powi(c.len() as i32 - 1));
    if !(last.abs() <= 1e-10 * value.abs().max(1.0)) {
        // crude radius estimate from the last two coefficients
        let radius = match (c.len() >= 2).then(|| (c[c.len() - 2].to_f64(), c[c.len() - 1].to_f64())) {
            Some((a, b)) if b != 0.0 => (a / b).abs(),
            _ => f64::INFINITY,
        };
        return Err(Error::SeriesDivergence { x, radius });
    }
    Ok(value)
}

/// Polynomial in (x, n) with rational coefficients: `coeffs[i][e]` multiplies x^i n^e.
pub type Bivariate = Vec<Vec<Rational>>;

/// 4Q and 2R of the u-equation as polynomials in (x, n).
pub fn pv_u_bivariate(p: u32, q: u32) -> (Bivariate, Bivariate) {
    let (p, q) = (i64::from(p), i64::from(q));
    let r = |v: i64| Rational::from(v);
    // 4Q = -x^2 + 2(n + 2(p-q)) x - (n - 2p)^2
    let q4 = vec![vec![r(-4 * p * p), r(4 * p), r(-1)], vec![r(4 * (p - q)), r(2)], vec![r(-1)]];
    // 2R = p(p-q)(x + n - 2p)
    let c = p * (p - q);
    let r2 = vec![vec![r(-2 * p * c), r(c)], vec![r(c)]];
    (q4, r2)
}

/// Coefficient a + b sqrt(2) of s^j n^{m/2}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RescaledTerm {
    pub sqrt_n_power: u32,
    pub s_power: u32,
    #[serde(with = "crate::measures::rational_string")]
    pub rational: Rational,
    #[serde(with = "crate::measures::rational_string")]
    pub sqrt2: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RescaledPolynomial {
    pub terms: Vec<RescaledTerm>,
}

impl RescaledPolynomial {
    pub fn leading_power(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.sqrt_n_power).max()
    }

    /// Coefficients (rational, sqrt2) by power of s at the leading order in n.
    pub fn leading(&self) -> Vec<(Rational, Rational)> {
        let Some(top) = self.leading_power() else { return Vec::new() };
        let deg = self.terms.iter().filter(|t| t.sqrt_n_power == top).map(|t| t.s_power).max().unwrap_or(0);
        let mut out = vec![(Rational::new(), Rational::new()); deg as usize + 1];
        for t in self.terms.iter().filter(|t| t.sqrt_n_power == top) {
            out[t.s_power as usize] = (t.rational.clone(), t.sqrt2.clone());
        }
        out
    }
}

/// Substitutes x = n - s sqrt(2n) exactly.
pub fn rescale_in_n(poly: &Bivariate) -> RescaledPolynomial {
    let mut acc: BTreeMap<(u32, u32), (Rational, Rational)> = BTreeMap::new();
    for (i, row) in poly.iter().enumerate() {
        for (e, c) in row.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            // (m^2 - sqrt2 s m)^i n^e with m = sqrt(n)
            for k in 0..=i as u32 {
                let binom = Integer::from(i as u32).binomial(k);
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let two = Integer::from(1) << (k / 2);
                let coeff = c * Rational::from(binom * two * sign) ;
                let key = (2 * (i as u32 + e as u32) - k, k);
                let entry = acc.entry(key).or_insert((Rational::new(), Rational::new()));
                if k % 2 == 0 {
                    entry.0 += coeff;
                } else {
                    entry.1 += coeff;
                }
            }
        }
    }
    let terms = acc
        .into_iter()
        .filter(|(_, (a, b))| *a != 0 || *b != 0)
        .map(|((m, j), (rational, sqrt2))| RescaledTerm { sqrt_n_power: m, s_power: j, rational, sqrt2 })
        .collect();
    RescaledPolynomial { terms }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingStudy {
    #[serde(flatten)]
    pub study: ConvergenceStudy,
    /// the limiting log-derivative checked against its fourth Painleve form
    pub limit_residual: ResidualReport,
    pub rescaled_q: RescaledPolynomial,
    pub rescaled_r: RescaledPolynomial,
}

/// sup over s of | -sqrt(2/n) u(n - s sqrt(2n)) - h(s) |, per n, where u is
/// x d/dx log of the Poissonized strip expectation and h the log-derivative
/// of the Hermitian integral over spectra in [s, inf).
pub fn scaling_limit_check(p: u32, q: u32, n_list: &[u32], s_grid: &[f64], precision: Precision) -> Result<ScalingStudy> {
    if s_grid.is_empty() || n_list.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let limit = PainleveH::new(p as usize, f64::from(q) - f64::from(p), HInterval::AboveS, precision)?;
    let bits = precision.bits();
    let h: Vec<f64> = s_grid
        .iter()
        .map(|&s| limit.value(&rug::Float::with_val(bits, s)).map(|v| v.to_f64()))
        .collect::<Result<_>>()?;
    let (s_min, s_max) = s_grid.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &s| (a.min(s), b.max(s)));
    let points = n_list
        .par_iter()
        .map(|&n| -> Result<StudyPoint> {
            let params = StripFunctionalParams::new(n, p, q)?;
            let nf = f64::from(n);
            let x_of = |s: f64| nf - s * (2.0 * nf).sqrt();
            if x_of(s_max) <= 0.0 {
                return Err(Error::InvalidParameter(format!("n={n} too small for s={s_max}")));
            }
            let table = StripPoissonTable::new(params, x_of(s_max), x_of(s_min))?;
            let mut worst = (0.0f64, 0.0, 0.0, s_grid[0]);
            for (&s, &hs) in s_grid.iter().zip(&h) {
                let lhs = -(2.0 / nf).sqrt() * table.log_derivative(x_of(s));
                let gap = (lhs - hs).abs();
                if gap >= worst.0 {
                    worst = (gap, lhs, hs, s);
                }
            }
            let (gap, lhs, rhs, s) = worst;
            Ok(StudyPoint { parameter: nf, lhs, rhs, ratio: lhs / rhs, gap, detail: Some(format!("sup at s={s}")) })
        })
        .collect::<Result<Vec<_>>>()?;
    let study = ConvergenceStudy::new("scaling-limit", json!({"p": p, "q": q, "s_grid": s_grid, "digits": precision.digits}), points)?;
    let grid: Vec<rug::Float> = s_grid.iter().map(|&s| rug::Float::with_val(bits, s)).collect();
    let sampled = SampledFunction::from_jets(grid, |s| Ok(limit.derivatives(s)?.to_vec()), "limiting Hermitian log-derivative")?;
    let limit_residual = residual(&OdeResidualSpec::PivHLimit { p, q }, &sampled)?;
    let (q4, r2) = pv_u_bivariate(p, q);
    Ok(ScalingStudy { study, limit_residual, rescaled_q: rescale_in_n(&q4), rescaled_r: rescale_in_n(&r2) })
}
