use super::{strip_expectation, StripFunctionalParams};
use crate::combinatorics::{enumerate_partitions, pochhammer_symbol, schur_at_ones};
use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::{Complete, Integer, Rational};
use serde::{Deserialize, Serialize};

/// Truncated power series with exact coefficients; index = power.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalSeries {
    #[serde(with = "super::rational_string::vec")]
    pub coefficients: Vec<Rational>,
}

impl RationalSeries {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        RationalSeries { coefficients }
    }

    /// Number of known coefficients.
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coefficients.get(k).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        let mut out = vec![Rational::new(); len];
        for (i, a) in self.coefficients.iter().enumerate().take(len) {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate().take(len - i) {
                out[i + j] += Rational::from(a * b);
            }
        }
        RationalSeries::new(out)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = self.coeff(0);
        if a0 == 0 {
            return Err(Error::InvalidParameter("series has zero constant term".into()));
        }
        let mut out: Vec<Rational> = Vec::with_capacity(self.len());
        out.push(Rational::from(1) / &a0);
        for k in 1..self.len() {
            let mut s = Rational::new();
            for j in 1..=k {
                s += Rational::from(&self.coefficients[j] * &out[k - j]);
            }
            out.push(-s / &a0);
        }
        Ok(RationalSeries::new(out))
    }

    /// Formal derivative (one coefficient shorter).
    pub fn derivative(&self) -> Self {
        RationalSeries::new(
            self.coefficients.iter().enumerate().skip(1).map(|(i, c)| Rational::from(c * i as u32)).collect(),
        )
    }

    /// x * f'(x), same length.
    pub fn euler(&self) -> Self {
        RationalSeries::new(
            self.coefficients.iter().enumerate().map(|(i, c)| Rational::from(c * i as u32)).collect(),
        )
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }
}

/// Coefficients of sum_k u^k sum_{kappa |- k} (p)_kappa (q)_kappa / ((h^kappa)^2 (n)_kappa),
/// for k = 0..=order. Partitions with more than min(p, q) rows vanish.
pub fn hypergeom_2f1_restricted(p: u32, q: u32, n: u32, order: usize) -> Result<RationalSeries> {
    if !(n >= q && q >= p) {
        return Err(Error::ParameterOrder(format!("need n >= q >= p, got p={p} q={q} n={n}")));
    }
    let rows = p.min(q) as usize;
    let mut out = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut c = Rational::new();
        for kappa in enumerate_partitions(k as u64, rows, None) {
            let num = pochhammer_symbol(p as i64, &kappa) * pochhammer_symbol(q as i64, &kappa);
            if num == 0 {
                continue;
            }
            let den = pochhammer_symbol(n as i64, &kappa);
            if den == 0 {
                return Err(Error::HypergeometricPole { order: k });
            }
            let h: Integer = kappa.hooks().into_iter().map(Integer::from).product();
            c += Rational::from((num, den * h.square()));
        }
        out.push(c);
    }
    Ok(RationalSeries::new(out))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CauchyReport {
    pub max_order_verified: usize,
    pub holds: bool,
    pub first_mismatch: Option<usize>,
}

/// Coefficientwise check of sum_kappa s_kappa(1^p) s_kappa(1^q) u^|kappa|
/// against the binomial series of (1-u)^{-pq}.
pub fn cauchy_truncated(p: u32, q: u32, order: usize) -> CauchyReport {
    let rows = p.min(q) as usize;
    for k in 0..=order {
        let lhs: Integer = enumerate_partitions(k as u64, rows, None)
            .map(|kappa| schur_at_ones(&kappa, p) * schur_at_ones(&kappa, q))
            .sum();
        let rhs = if p * q == 0 {
            Integer::from((k == 0) as u32)
        } else {
            Integer::from(p * q - 1 + k as u32).binomial(k as u32)
        };
        if lhs != rhs {
            return CauchyReport { max_order_verified: k.saturating_sub(1), holds: false, first_mismatch: Some(k) };
        }
    }
    CauchyReport { max_order_verified: order, holds: true, first_mismatch: None }
}

/// a_k = p^{L+k} / (L+k)! * E^{L+k,p}(strip functional), k = 0..=order, with
/// L the rectangle weight: the coefficients of x^{L+k} in
/// sum_l (px)^l / l! E^{l,p}(...).
pub fn strip_generating_series(params: StripFunctionalParams, order: usize) -> RationalSeries {
    let l0 = params.rectangle_weight();
    let coeffs = (0..=order as u64)
        .map(|k| {
            let ell = l0 + k;
            let scale = Rational::from((
                Integer::from(params.p).pow(ell as u32),
                Integer::factorial(ell as u32).complete(),
            ));
            scale * strip_expectation(ell, params)
        })
        .collect();
    RationalSeries::new(coeffs)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripSeriesReport {
    pub params: StripFunctionalParams,
    pub order: usize,
    pub generating: RationalSeries,
    pub hypergeometric: RationalSeries,
    #[serde(with = "super::rational_string")]
    pub fitted_constant: Rational,
    #[serde(with = "super::rational_string")]
    pub footnote_constant: Rational,
    pub constant_matches_footnote: bool,
    pub identity_holds: bool,
    pub first_mismatch: Option<usize>,
}

/// Exact comparison of the strip generating function with
/// (constant) * x^{p(n-p)} * restricted 2F1 series in x.
pub fn strip_series_check(params: StripFunctionalParams, order: usize) -> Result<StripSeriesReport> {
    let generating = strip_generating_series(params, order);
    let hypergeometric = hypergeom_2f1_restricted(params.p, params.q, params.n, order)?;
    let fitted_constant = Rational::from(&generating.coefficients[0] / &hypergeometric.coefficients[0]);
    let first_mismatch = (0..=order).find(|&k| {
        generating.coefficients[k] != Rational::from(&fitted_constant * &hypergeometric.coefficients[k])
    });
    let footnote_constant = params.footnote_constant();
    Ok(StripSeriesReport {
        params,
        order,
        constant_matches_footnote: fitted_constant == footnote_constant,
        identity_holds: first_mismatch.is_none(),
        first_mismatch,
        generating,
        hypergeometric,
        fitted_constant,
        footnote_constant,
    })
}
