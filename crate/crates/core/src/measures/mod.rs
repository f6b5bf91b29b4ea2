//! Exact measures on partitions induced by RSK, strip expectations and the
//! constants of their chi-square asymptotics.

mod series;

pub use series::{
    cauchy_truncated, hypergeom_2f1_restricted, strip_generating_series, strip_series_check,
    RationalSeries, StripSeriesReport,
};

use crate::combinatorics::{
    count_standard, enumerate_partitions, schur_at_ones, strip_hook_product, Partition,
};
use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::{Complete, Integer, Rational};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordMeasureParams {
    pub p: u32,
    pub ell: u64,
}

impl WordMeasureParams {
    pub fn new(p: u32, ell: u64) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidParameter("alphabet size must be >= 1".into()));
        }
        Ok(WordMeasureParams { p, ell })
    }
}

/// (n, p, q) with n >= q >= p >= 1; the rectangle is (n-p)^p and the strip
/// covers columns n-q+1 ..= n-p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StripFunctionalParams {
    pub n: u32,
    pub p: u32,
    pub q: u32,
}

impl StripFunctionalParams {
    pub fn new(n: u32, p: u32, q: u32) -> Result<Self> {
        if p == 0 || q < p || n < q {
            return Err(Error::ParameterOrder(format!(
                "need n >= q >= p >= 1, got n={n} q={q} p={p}"
            )));
        }
        Ok(StripFunctionalParams { n, p, q })
    }

    /// Weight of the rectangle (n-p)^p.
    pub fn rectangle_weight(&self) -> u64 {
        (self.p as u64) * (self.n - self.p) as u64
    }

    /// Fitted-constant candidate prod_{i=1}^p (q-i)!/(n-i)!.
    pub fn footnote_constant(&self) -> Rational {
        let mut c = Rational::from(1);
        for i in 1..=self.p {
            c *= Rational::from((
                Integer::factorial(self.q - i).complete(),
                Integer::factorial(self.n - i).complete(),
            ));
        }
        c
    }
}

/// Probability of shape `lambda` under RSK of a uniform word of length ell
/// over p letters: f^lambda s_lambda(1^p) / p^ell.
pub fn word_measure(lambda: &Partition, params: WordMeasureParams) -> Result<Rational> {
    if lambda.weight() != params.ell {
        return Err(Error::InvalidParameter(format!(
            "partition weight {} differs from word length {}",
            lambda.weight(),
            params.ell
        )));
    }
    if lambda.len() > params.p as usize {
        return Ok(Rational::new());
    }
    let num = count_standard(lambda) * schur_at_ones(lambda, params.p);
    let den = Integer::from(params.p).pow(params.ell as u32);
    Ok(Rational::from((num, den)))
}

/// Poissonized measure e^{-px} (px)^l / l! times the word measure.
pub fn poissonized_measure(lambda: &Partition, p: u32, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidParameter("Poisson intensity must be positive".into()));
    }
    let ell = lambda.weight();
    let w = word_measure(lambda, WordMeasureParams::new(p, ell)?)?;
    if w == 0 {
        return Ok(0.0);
    }
    Ok((log_poisson(ell, p as f64 * x) + ln_rational(&w)).exp())
}

/// Log-space Poissonized measure from hooks and contents only, for long sums.
pub fn ln_poissonized_measure(lambda: &Partition, p: u32, x: f64) -> f64 {
    if lambda.len() > p as usize {
        return f64::NEG_INFINITY;
    }
    let ell = lambda.weight() as f64;
    let contents: f64 = lambda.contents().map(|c| ((c + p as i64) as f64).ln()).sum();
    let hooks: f64 = lambda.hooks().iter().map(|&h| (h as f64).ln()).sum();
    -(p as f64) * x + ell * x.ln() + contents - 2.0 * hooks
}

/// ln of the Poisson(mean) mass at l.
pub fn log_poisson(l: u64, mean: f64) -> f64 {
    -mean + l as f64 * mean.ln() - ln_factorial(l)
}

pub fn ln_factorial(n: u64) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// ln of a positive rational without overflow.
pub fn ln_rational(r: &Rational) -> f64 {
    ln_integer(r.numer()) - ln_integer(r.denom())
}

pub fn ln_integer(z: &Integer) -> f64 {
    let bits = z.significant_bits();
    if bits < 1000 {
        return z.to_f64().ln();
    }
    let shift = bits - 64;
    let top = Integer::from(z >> shift).to_f64();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// E^{ell,p}( 1{lambda contains (n-p)^p} * strip hook product ).
pub fn strip_expectation(ell: u64, params: StripFunctionalParams) -> Rational {
    let StripFunctionalParams { n, p, q } = params;
    if ell < params.rectangle_weight() {
        return Rational::new();
    }
    let min_part = if n > p { Some(n - p) } else { None };
    let wp = WordMeasureParams { p, ell };
    let mut total = Rational::new();
    for lam in enumerate_partitions(ell, p as usize, min_part) {
        let w = word_measure(&lam, wp).expect("weight matches by construction");
        let h = strip_hook_product(&lam, n, p, q).expect("validated parameters");
        total += w * h;
    }
    total
}

/// E((Z_m/2)^k) = k! C(m/2 - 1 + k, k) for a chi-square variable with m
/// (even) degrees of freedom.
pub fn chi2_moment(m: u32, k: u32) -> Result<Rational> {
    if m == 0 || m % 2 == 1 {
        return Err(Error::InvalidParameter(format!("degrees of freedom must be positive and even, got {m}")));
    }
    let b = Integer::from(m / 2 - 1 + k).binomial(k);
    Ok(Rational::from(Integer::factorial(k).complete() * b))
}

/// c_{p,q,k} split into an exact rational part and the algebraic factor
/// sqrt(p) / sqrt(2 pi)^{p-1}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitConstant {
    #[serde(with = "crate::measures::rational_string")]
    pub rational: Rational,
    pub algebraic: f64,
    pub value: f64,
}

pub fn limit_constant(p: u32, q: u32, k: u32) -> Result<LimitConstant> {
    if p == 0 || q < p {
        return Err(Error::ParameterOrder(format!("need q >= p >= 1, got p={p} q={q}")));
    }
    let mut rational = Rational::from(Integer::from(p * q - 1 + k).binomial(k));
    for j in 1..=p {
        rational *= Integer::factorial(q - j).complete();
    }
    let algebraic =
        (p as f64).sqrt() / (2.0 * std::f64::consts::PI).sqrt().powi(p as i32 - 1);
    Ok(LimitConstant { value: rational.to_f64() * algebraic, rational, algebraic })
}

/// Serde helpers: rationals as "num/den" strings.
pub mod rational_string {
    use rug::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        Rational::parse(&s).map(Rational::from).map_err(serde::de::Error::custom)
    }

    pub fn format_rational(r: &Rational) -> String {
        format!("{}/{}", r.numer(), r.denom())
    }

    pub mod vec {
        use rug::Rational;
        use serde::{Deserialize, Deserializer, Serializer, ser::SerializeSeq};

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&super::format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| Rational::parse(s).map(Rational::from).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod option {
        use rug::Rational;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(r) => s.serialize_some(&super::format_rational(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| Rational::parse(&s).map(Rational::from).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}
