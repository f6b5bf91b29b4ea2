use super::study::{ConvergenceStudy, StudyPoint};
use crate::combinatorics::{d1, enumerate_partitions, i_k, rsk_shape, IkMethod, Word};
use crate::error::{Error, Result};
use crate::measures::{limit_constant, ln_rational, word_measure, WordMeasureParams};
use rayon::prelude::*;
use rug::Rational;
use serde::{Deserialize, Serialize};
use serde_json::json;

/// P^{Np+k,p}(lambda_p >= N), exactly.
pub fn word_event_probability(p: u32, big_n: u32, k: u32) -> Result<Rational> {
    let ell = u64::from(big_n) * u64::from(p) + u64::from(k);
    let params = WordMeasureParams::new(p, ell)?;
    let min_part = (big_n > 0).then_some(big_n);
    let mut total = Rational::new();
    for lam in enumerate_partitions(ell, p as usize, min_part) {
        if lam.len() == p as usize {
            total += word_measure(&lam, params)?;
        }
    }
    Ok(total)
}

/// Word-by-word comparison of {shape contains N^p} with
/// {d1 = p and i_{p-1} <= N(p-1) + k} over all p^{Np+k} words.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordEventCheck {
    pub p: u32,
    pub big_n: u32,
    pub k: u32,
    pub words: u64,
    pub containing: u64,
    pub event: u64,
    pub mismatches: u64,
    #[serde(with = "crate::measures::rational_string")]
    pub frequency: Rational,
}

pub fn word_event_check(p: u32, big_n: u32, k: u32, bound: usize) -> Result<WordEventCheck> {
    if p == 0 {
        return Err(Error::InvalidParameter("alphabet must be nonempty".into()));
    }
    let len = (big_n * p + k) as usize;
    if len > bound {
        return Err(Error::BruteForceBoundExceeded { length: len, bound });
    }
    let words = u64::from(p).pow(len as u32);
    let cap = big_n * (p - 1) + k;
    let method = IkMethod::Exhaustive { bound };
    let (containing, event, mismatches) = (0..words)
        .into_par_iter()
        .map(|index| -> Result<(u64, u64, u64)> {
            let w = Word::from_index(index, len, p);
            let shape = rsk_shape(&w);
            let contains = shape.len() == p as usize && shape.part(p as usize - 1) >= big_n;
            let holds = d1(&w) == p as usize && i_k(&w, p as usize - 1, method)? <= cap as usize;
            Ok((u64::from(contains), u64::from(holds), u64::from(contains != holds)))
        })
        .try_reduce(|| (0, 0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1, a.2 + b.2)))?;
    Ok(WordEventCheck { p, big_n, k, words, containing, event, mismatches, frequency: Rational::from((containing, words)) })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordEventStudy {
    #[serde(flatten)]
    pub study: ConvergenceStudy,
    #[serde(with = "crate::measures::rational_string::vec")]
    pub probabilities: Vec<Rational>,
    /// exhaustive checks for the N with Np + k within the bound
    pub word_checks: Vec<WordEventCheck>,
}

/// N^{(p^2-1)/2} P^{Np+k,p}(lambda_p >= N) against c_{p,p,k}.
pub fn word_event_study(p: u32, k: u32, n_list: &[u32], word_bound: usize) -> Result<WordEventStudy> {
    if p < 2 {
        return Err(Error::InvalidParameter("the word event needs an alphabet of size at least 2".into()));
    }
    let limit = limit_constant(p, p, k)?;
    let probabilities = n_list.par_iter().map(|&n| word_event_probability(p, n, k)).collect::<Result<Vec<_>>>()?;
    let exponent = (f64::from(p * p) - 1.0) / 2.0;
    let points = n_list
        .iter()
        .zip(&probabilities)
        .map(|(&n, pr)| {
            let lhs = if *pr == 0 { 0.0 } else { (exponent * f64::from(n).ln() + ln_rational(pr)).exp() };
            StudyPoint::relative(f64::from(n), lhs, limit.value).with_detail(crate::measures::rational_string::format_rational(pr))
        })
        .collect();
    let word_checks = n_list
        .iter()
        .filter(|&&n| (n * p + k) as usize <= word_bound)
        .map(|&n| word_event_check(p, n, k, word_bound))
        .collect::<Result<Vec<_>>>()?;
    let study = ConvergenceStudy::new("word-event", json!({"p": p, "k": k}), points)?;
    Ok(WordEventStudy { study, probabilities, word_checks })
}

/// The event identity for every word of one length and every split
/// length = Np + k with N >= 1, k >= 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordIdentityReport {
    pub p: u32,
    pub length: usize,
    pub words: u64,
    pub pairs_checked: u64,
    pub mismatches: u64,
}

pub fn word_event_identity(p: u32, length: usize, bound: usize) -> Result<WordIdentityReport> {
    if p < 2 {
        return Err(Error::InvalidParameter("the word event needs an alphabet of size at least 2".into()));
    }
    if length > bound {
        return Err(Error::BruteForceBoundExceeded { length, bound });
    }
    let splits: Vec<(u32, u32)> =
        (1..=length as u32 / p).map(|n| (n, length as u32 - n * p)).collect();
    let words = u64::from(p).pow(length as u32);
    let method = IkMethod::Exhaustive { bound };
    let mismatches = (0..words)
        .into_par_iter()
        .map(|index| -> Result<u64> {
            let w = Word::from_index(index, length, p);
            let shape = rsk_shape(&w);
            let full = shape.len() == p as usize;
            let last = shape.part(p as usize - 1);
            let d_ok = d1(&w) == p as usize;
            let ik = i_k(&w, p as usize - 1, method)?;
            Ok(splits
                .iter()
                .filter(|&&(n, k)| (full && last >= n) != (d_ok && ik <= (n * (p - 1) + k) as usize))
                .count() as u64)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(WordIdentityReport { p, length, words, pairs_checked: words * splits.len() as u64, mismatches })
}
