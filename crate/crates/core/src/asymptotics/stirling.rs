use crate::error::{Error, Result};
use crate::measures::ln_factorial;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Exact factorial expressions against their Stirling forms:
///
/// * (pn + k - p^2)!  ~  (n! p^n)^p (pn)^{k-p^2} sqrt(p) / (2 pi n)^{(p-1)/2}
/// * prod_{j=1}^p (n-j)!  ~  (n!)^p n^{-p(p+1)/2}
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StirlingReport {
    pub n: u32,
    pub p: u32,
    pub k: u32,
    pub ln_shifted_exact: f64,
    pub ln_shifted_approx: f64,
    pub shifted_ratio: f64,
    pub ln_product_exact: f64,
    pub ln_product_approx: f64,
    pub product_ratio: f64,
}

pub fn stirling_helpers(n: u32, p: u32, k: u32) -> Result<StirlingReport> {
    if p == 0 || n < p + 1 {
        return Err(Error::ParameterOrder(format!("need n >= p + 1 >= 2, got n={n} p={p}")));
    }
    let (nf, pf, kf) = (f64::from(n), f64::from(p), f64::from(k));
    let ln_shifted_exact = ln_factorial(u64::from(p * n + k - p * p));
    let ln_shifted_approx = pf * (ln_factorial(u64::from(n)) + nf * pf.ln()) - (pf - 1.0) / 2.0 * (2.0 * PI * nf).ln()
        + 0.5 * pf.ln()
        + (kf - pf * pf) * (pf * nf).ln();
    let ln_product_exact: f64 = (1..=p).map(|j| ln_factorial(u64::from(n - j))).sum();
    let ln_product_approx = pf * ln_factorial(u64::from(n)) - pf * (pf + 1.0) / 2.0 * nf.ln();
    Ok(StirlingReport {
        n,
        p,
        k,
        shifted_ratio: (ln_shifted_exact - ln_shifted_approx).exp(),
        product_ratio: (ln_product_exact - ln_product_approx).exp(),
        ln_shifted_exact,
        ln_shifted_approx,
        ln_product_exact,
        ln_product_approx,
    })
}

/// Smallest n0 >= p + 1 such that |shifted_ratio - 1| is non-increasing on
/// n0..=n_max.
pub fn stirling_monotone_threshold(p: u32, k: u32, n_max: u32) -> Result<Option<u32>> {
    let gaps = (p + 1..=n_max)
        .map(|n| stirling_helpers(n, p, k).map(|r| (n, (r.shifted_ratio - 1.0).abs())))
        .collect::<Result<Vec<_>>>()?;
    let mut threshold = gaps.last().map(|g| g.0);
    for w in gaps.windows(2).rev() {
        if w[1].1 <= w[0].1 {
            threshold = Some(w[0].0);
        } else {
            break;
        }
    }
    Ok(threshold)
}
