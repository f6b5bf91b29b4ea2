use crate::error::{Error, Result};
use crate::measures::{strip_generating_series, RationalSeries, StripFunctionalParams};
use rug::Rational;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PvSeriesReport {
    pub p: u32,
    pub q: u32,
    pub n: u32,
    pub order: usize,
    /// u_0..u_K
    pub u: RationalSeries,
    /// residual coefficients 0..=K-1 (the ones fixed by u_0..u_K)
    pub residual: RationalSeries,
    /// largest m with residual coefficients 0..=m all zero
    pub exact_through: Option<usize>,
    pub constant_term_matches: bool,
    pub linear_term_matches: bool,
    /// coefficient of x^{n+1}, when within the order
    #[serde(with = "crate::measures::rational_string::option")]
    pub coefficient_n_plus_1: Option<Rational>,
}

impl PvSeriesReport {
    /// Residual vanishes through order K - 3.
    pub fn residual_vanishes(&self) -> bool {
        self.exact_through.is_some_and(|m| m + 3 >= self.order)
    }
}

/// u(x) = p(n-p) - p x + x d/dx log S(x), S the strip generating series with
/// the x^{p(n-p)} prefactor and constant removed, truncated at order K.
pub fn pv_series_u(p: u32, q: u32, n: u32, order: usize) -> Result<PvSeriesReport> {
    if order < 4 {
        return Err(Error::OrderTooSmall { order, minimum: 4 });
    }
    let params = StripFunctionalParams::new(n, p, q)?;
    let s = strip_generating_series(params, order);
    let s0 = s.coeff(0);
    let s = RationalSeries::new(s.coefficients.iter().map(|c| Rational::from(c / &s0)).collect());
    let mut u = s.euler().mul(&s.inverse()?).coefficients;
    u[0] += p * (n - p);
    u[1] -= p;
    let u = RationalSeries::new(u);
    let residual = pv_u_residual(&u, p, q, n);
    let exact_through = residual.coefficients.iter().position(|c| *c != 0).map_or(
        Some(residual.len().saturating_sub(1)),
        |first| first.checked_sub(1),
    );
    let expected_linear = -Rational::from((p * (n - q), n));
    let next = ((n as usize) < order).then(|| u.coeff(n as usize + 1));
    Ok(PvSeriesReport {
        p,
        q,
        n,
        order,
        constant_term_matches: u.coeff(0) == p * (n - p),
        linear_term_matches: u.coeff(1) == expected_linear,
        coefficient_n_plus_1: next,
        residual,
        exact_through,
        u,
    })
}

/// Coefficients 0..=K-1 of x^2 u''' + x u'' + 6x u'^2 - 4u u' + 4Q u' - 2Q' u + 2R.
fn pv_u_residual(u: &RationalSeries, p: u32, q: u32, n: u32) -> RationalSeries {
    let len = u.len();
    let pad = |s: RationalSeries| {
        let mut c = s.coefficients;
        c.resize(len, Rational::new());
        c
    };
    let d1 = pad(u.derivative());
    let d2 = pad(u.derivative().derivative());
    let d3 = pad(u.derivative().derivative().derivative());
    let shift = |c: &[Rational], by: usize| -> Vec<Rational> {
        (0..len).map(|k| if k >= by { c[k - by].clone() } else { Rational::new() }).collect()
    };
    let mul = |a: &[Rational], b: &[Rational]| RationalSeries::new(a.to_vec()).mul(&RationalSeries::new(b.to_vec())).coefficients;
    let (p, q, n) = (i64::from(p), i64::from(q), i64::from(n));
    // 4Q = q4[0] + q4[1] x + q4[2] x^2, 2R = r2[0] + r2[1] x
    let q4 = [-(n - 2 * p).pow(2), 2 * (n + 2 * (p - q)), -1];
    let r2 = [p * (p - q) * (n - 2 * p), p * (p - q)];
    let mut out = vec![Rational::new(); len];
    let x2u3 = shift(&d3, 2);
    let xu2 = shift(&d2, 1);
    let xu1sq = shift(&mul(&d1, &d1), 1);
    let uu1 = mul(&u.coefficients, &d1);
    for k in 0..len {
        let mut c = Rational::from(&x2u3[k] + &xu2[k]);
        c += Rational::from(&xu1sq[k] * 6);
        c -= Rational::from(&uu1[k] * 4);
        for (j, qj) in q4.iter().enumerate() {
            if k >= j {
                c += Rational::from(&d1[k - j] * *qj);
            }
        }
        // 2Q' = (q4[1] + 2 q4[2] x) / 2
        c -= Rational::from(&u.coefficients[k] * q4[1]) / 2;
        if k >= 1 {
            c -= Rational::from(&u.coefficients[k - 1] * q4[2]);
        }
        if k < 2 {
            c += r2[k];
        }
        out[k] = c;
    }
    out.truncate(len - 1);
    RationalSeries::new(out)
}
