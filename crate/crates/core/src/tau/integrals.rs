use super::evaluator::{DerivativeRoute, TauEvaluator};
use super::moments::MomentMethod;
use super::weight::{GaussianSupport, UnitSupport, WeightSpec};
use crate::error::{Error, Result};
use crate::hp::{factorial, pi, Precision};
use rug::ops::Pow;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

/// Integration domain of the eigenvalues for the Gaussian-type integral
/// int det(M - s)^a e^{-tr M^2} dM.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HInterval {
    /// (-inf, s]
    BelowS,
    /// [s, inf)
    AboveS,
    Whole,
}

/// Integration domain for the Laguerre-type integral
/// int det(s - M)^b det(M)^a e^{-tr M} dM.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KInterval {
    /// [0, s]
    ZeroToS,
    /// [s, inf)
    AboveS,
    /// [0, inf)
    PositiveHalfLine,
}

/// h(s) = d/ds log of the Gaussian-type integral, computed as
/// -2 n s - 2 g(-2s) for the shifted weight |y|^a e^{-y^2}.
#[derive(Clone, Debug)]
pub struct PainleveH {
    pub n: usize,
    pub a_exp: f64,
    pub interval: HInterval,
    tau: TauEvaluator,
}

impl PainleveH {
    pub fn new(n: usize, a_exp: f64, interval: HInterval, precision: Precision) -> Result<Self> {
        let support = match interval {
            HInterval::BelowS => GaussianSupport::NegativeHalfLine,
            HInterval::AboveS => GaussianSupport::PositiveHalfLine,
            HInterval::Whole => GaussianSupport::RealLine,
        };
        let tau = TauEvaluator::new(WeightSpec::GaussianPower { a_exp, support }, n, precision)?;
        Ok(PainleveH { n, a_exp, interval, tau })
    }

    pub fn evaluator(&self) -> &TauEvaluator {
        &self.tau
    }

    pub fn value(&self, s: &Float) -> Result<Float> {
        let bits = self.tau.bits();
        let x = Float::with_val(bits, s * -2i32);
        let g = self.tau.log_deriv_g(&x, 0, DerivativeRoute::Exact)?;
        Ok(Float::with_val(bits, s * (-2 * self.n as i64)) - g * 2u32)
    }

    /// [h, h', h'', h'''] from the exact derivative route.
    pub fn derivatives(&self, s: &Float) -> Result<[Float; 4]> {
        let bits = self.tau.bits();
        let x = Float::with_val(bits, s * -2i32);
        let [g0, g1, g2, g3] = self.tau.log_derivatives_exact(&x)?;
        let h0 = Float::with_val(bits, s * (-2 * self.n as i64)) - g0 * 2u32;
        let h1 = g1 * 4u32 - 2 * self.n as i64;
        Ok([h0, h1, g2 * -8i32, g3 * 16u32])
    }
}

/// k(s) = s d/ds log of the Laguerre-type integral, computed as
/// n(n+a+b) - s g(-s) for the weight |y|^a |1-y|^b.
#[derive(Clone, Debug)]
pub struct PainleveK {
    pub n: usize,
    pub a_exp: f64,
    pub b_exp: f64,
    pub interval: KInterval,
    tau: TauEvaluator,
}

impl PainleveK {
    pub fn new(n: usize, a_exp: f64, b_exp: f64, interval: KInterval, precision: Precision) -> Result<Self> {
        let support = match interval {
            KInterval::ZeroToS => UnitSupport::UnitInterval,
            KInterval::AboveS => UnitSupport::AboveOne,
            KInterval::PositiveHalfLine => UnitSupport::PositiveHalfLine,
        };
        let tau = TauEvaluator::new(WeightSpec::LaguerreJacobi { a_exp, b_exp, support }, n, precision)?;
        Ok(PainleveK { n, a_exp, b_exp, interval, tau })
    }

    pub fn evaluator(&self) -> &TauEvaluator {
        &self.tau
    }

    fn constant(&self) -> f64 {
        let n = self.n as f64;
        n * (n + self.a_exp + self.b_exp)
    }

    fn check(&self, s: &Float) -> Result<()> {
        if !(*s > 0) {
            return Err(Error::InvalidParameter(format!("k(s) needs s > 0, got {}", s.to_f64())));
        }
        Ok(())
    }

    pub fn value(&self, s: &Float) -> Result<Float> {
        self.check(s)?;
        if self.n == 0 {
            return Ok(Float::with_val(self.tau.bits(), 0));
        }
        let bits = self.tau.bits();
        let g = self.tau.log_deriv_g(&Float::with_val(bits, -s), 0, DerivativeRoute::Exact)?;
        Ok(Float::with_val(bits, self.constant()) - g * s)
    }

    /// [k, k', k'', k'''].
    pub fn derivatives(&self, s: &Float) -> Result<[Float; 4]> {
        self.check(s)?;
        let bits = self.tau.bits();
        let [g0, g1, g2, g3] = self.tau.log_derivatives_exact(&Float::with_val(bits, -s))?;
        let k0 = Float::with_val(bits, self.constant()) - Float::with_val(bits, &g0 * s);
        let k1 = Float::with_val(bits, &g1 * s) - &g0;
        let k2 = Float::with_val(bits, &g1 * 2u32) - Float::with_val(bits, &g2 * s);
        let k3 = Float::with_val(bits, &g3 * s) - g2 * 3u32;
        Ok([k0, k1, k2, k3])
    }
}

/// h(s) at a single point.
pub fn painleve_input_h(n: usize, a_exp: f64, interval: HInterval, s: f64, precision: Precision) -> Result<Float> {
    PainleveH::new(n, a_exp, interval, precision)?.value(&Float::with_val(precision.bits(), s))
}

/// k(s) at a single point.
pub fn painleve_input_k(
    n: usize,
    a_exp: f64,
    b_exp: f64,
    interval: KInterval,
    s: f64,
    precision: Precision,
) -> Result<Float> {
    PainleveK::new(n, a_exp, b_exp, interval, precision)?.value(&Float::with_val(precision.bits(), s))
}

/// (2 pi)^{p/2} 2^{-p^2/2} prod_{j<=p} j!, the value of
/// int_{R^p} Delta(x)^2 prod e^{-x_j^2} dx.
fn gaussian_partition_function(p: usize, bits: u32) -> Float {
    let two_pi = Float::with_val(bits, pi(bits) * 2u32);
    let mut z = two_pi.sqrt().pow(p as u32) / Float::with_val(bits, 2u32).sqrt().pow((p * p) as u32);
    for j in 1..=p {
        z *= factorial(bits, j as u32);
    }
    z
}

/// p! int_{[s,inf)^p} Delta^2 prod (z-s)^{q-p} e^{-z^2} / int_{R^p} Delta^2 prod e^{-z^2},
/// via the shifted weight y^{q-p} e^{-(y+s)^2} on [0, inf).
pub fn hermitian_ratio(p: usize, q: usize, s: f64, precision: Precision) -> Result<Float> {
    if p == 0 || q < p {
        return Err(Error::ParameterOrder(format!("need q >= p >= 1, got p={p} q={q}")));
    }
    let bits = precision.bits();
    let tau = TauEvaluator::new(
        WeightSpec::GaussianPower { a_exp: (q - p) as f64, support: GaussianSupport::PositiveHalfLine },
        p,
        precision,
    )?;
    let sf = Float::with_val(bits, s);
    let num = tau.tau(&Float::with_val(bits, &sf * -2i32))?
        * (Float::with_val(bits, sf.square_ref()) * -(p as i64)).exp();
    Ok(num / gaussian_partition_function(p, bits) * factorial(bits, p as u32))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelbergReport {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
    pub quadrature: f64,
    pub closed_form: f64,
    #[serde(with = "crate::measures::rational_string")]
    pub exact: Rational,
    pub abs_diff: f64,
}

/// Mean of one coordinate under Delta^2 prod (z-a)^alpha (b-z)^beta on
/// [a, b]^n: quadrature (g(0)/n) against a + (b-a)(n+alpha)/(2n+alpha+beta).
pub fn selberg_aomoto_mean(n: usize, alpha: f64, beta: f64, a: f64, b: f64, precision: Precision) -> Result<SelbergReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    let weight = WeightSpec::JacobiExp { a, b, alpha, beta, gamma: 0.0 };
    let tau = TauEvaluator::new(weight, n, precision)?.with_method(MomentMethod::Quadrature);
    let bits = precision.bits();
    let g = tau.log_deriv_g(&Float::with_val(bits, 0), 0, DerivativeRoute::Exact)?;
    let quad = g / n as u32;
    let r = |v: f64| Rational::from_f64(v).expect("finite parameter");
    let nn = Rational::from(n as u32);
    let exact = r(a) + (r(b) - r(a)) * (nn.clone() + r(alpha)) / (nn * 2u32 + r(alpha) + r(beta));
    let closed = Float::with_val(bits, &exact);
    let diff = Float::with_val(bits, &quad - &closed).abs();
    Ok(SelbergReport {
        n,
        alpha,
        beta,
        a,
        b,
        quadrature: quad.to_f64(),
        closed_form: closed.to_f64(),
        exact,
        abs_diff: diff.to_f64(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalizationReading {
    /// prod j! multiplies (2 pi)^{p/2} 2^{-p^2/2}
    FactorialsInNumerator,
    /// prod j! divides it
    FactorialsInDenominator,
    Both,
    Neither,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GaussianNormalization {
    pub p: usize,
    pub quadrature: f64,
    pub numerator_reading: f64,
    pub denominator_reading: f64,
    pub numerator_rel_err: f64,
    pub denominator_rel_err: f64,
    pub matches: NormalizationReading,
}

/// int_{R^p} Delta^2 prod e^{-x_j^2} dx by quadrature of the moments,
/// compared with both placements of prod j! in the closed form.
pub fn gaussian_normalization(p: usize, precision: Precision) -> Result<GaussianNormalization> {
    let bits = precision.bits();
    let tau = TauEvaluator::new(WeightSpec::GaussianPower { a_exp: 0.0, support: GaussianSupport::RealLine }, p, precision)?
        .with_method(MomentMethod::Quadrature);
    let quad = tau.tau(&Float::with_val(bits, 0))?;
    let num = gaussian_partition_function(p, bits);
    let mut fact = Float::with_val(bits, 1);
    for j in 1..=p {
        fact *= factorial(bits, j as u32);
    }
    let den = Float::with_val(bits, &num / &fact) / &fact;
    let rel = |v: &Float| (Float::with_val(bits, &quad - v) / v).abs().to_f64();
    let (en, ed) = (rel(&num), rel(&den));
    let tol = 1e-8;
    let matches = match (en <= tol, ed <= tol) {
        (true, true) => NormalizationReading::Both,
        (true, false) => NormalizationReading::FactorialsInNumerator,
        (false, true) => NormalizationReading::FactorialsInDenominator,
        (false, false) => NormalizationReading::Neither,
    };
    Ok(GaussianNormalization {
        p,
        quadrature: quad.to_f64(),
        numerator_reading: num.to_f64(),
        denominator_reading: den.to_f64(),
        numerator_rel_err: en,
        denominator_rel_err: ed,
        matches,
    })
}
