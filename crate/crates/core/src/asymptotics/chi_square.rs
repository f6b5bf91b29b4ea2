use super::study::{ConvergenceStudy, StudyPoint};
use crate::error::{Error, Result};
use crate::measures::{limit_constant, ln_rational, strip_expectation, StripFunctionalParams};
use rayon::prelude::*;
use rug::Rational;
use serde::{Deserialize, Serialize};
use serde_json::json;

/// E^{p(n-p)+k, p}(1{lambda contains (n-p)^p} * strip hook product).
pub fn strip_moment(p: u32, q: u32, n: u32, k: u32) -> Result<Rational> {
    let params = StripFunctionalParams::new(n, p, q)?;
    Ok(strip_expectation(params.rectangle_weight() + u64::from(k), params))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareStudy {
    #[serde(flatten)]
    pub study: ConvergenceStudy,
    /// exact expectations, one per n
    #[serde(with = "crate::measures::rational_string::vec")]
    pub expectations: Vec<Rational>,
    /// rational part of the limit; the full limit multiplies it by `limit_algebraic`
    #[serde(with = "crate::measures::rational_string")]
    pub limit_rational: Rational,
    pub limit_algebraic: f64,
}

impl ChiSquareStudy {
    /// For p = 1 the prefactor is n^0 and the limit is rational: whether
    /// every expectation equals it exactly.
    pub fn exact_limit_attained(&self) -> Option<bool> {
        (self.limit_algebraic == 1.0).then(|| self.expectations.iter().all(|e| *e == self.limit_rational))
    }
}

/// n^{(p^2-1)/2} E^{p(n-p)+k,p}(strip) against the chi-square limit constant.
pub fn chi_square_moment_study(p: u32, q: u32, k: u32, n_list: &[u32]) -> Result<ChiSquareStudy> {
    if let Some(&bad) = n_list.iter().find(|&&n| n < q + 1) {
        return Err(Error::ParameterOrder(format!("need n >= q + 1 = {}, got n={bad}", q + 1)));
    }
    let limit = limit_constant(p, q, k)?;
    let expectations = n_list.par_iter().map(|&n| strip_moment(p, q, n, k)).collect::<Result<Vec<_>>>()?;
    let exponent = (f64::from(p * p) - 1.0) / 2.0;
    let points = n_list
        .iter()
        .zip(&expectations)
        .map(|(&n, e)| {
            let lhs = if *e == 0 { 0.0 } else { (exponent * f64::from(n).ln() + ln_rational(e)).exp() };
            StudyPoint::relative(f64::from(n), lhs, limit.value)
        })
        .collect();
    let study = ConvergenceStudy::new("chi-square-moments", json!({"p": p, "q": q, "k": k}), points)?;
    Ok(ChiSquareStudy { study, expectations, limit_rational: limit.rational, limit_algebraic: limit.algebraic })
}
