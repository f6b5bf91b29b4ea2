use crate::error::{Error, Result};
use rug::Float;
use serde::{Deserialize, Serialize};

/// Where a Gaussian-type weight lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaussianSupport {
    /// (-inf, 0]
    NegativeHalfLine,
    /// [0, inf)
    PositiveHalfLine,
    RealLine,
}

/// Where a Laguerre-Jacobi weight lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnitSupport {
    /// [0, 1]
    UnitInterval,
    /// [1, inf)
    AboveOne,
    /// [0, inf)
    PositiveHalfLine,
}

/// Positive weight on an interval.
///
/// * `JacobiExp`: (z-a)^alpha (b-z)^beta e^{gamma z} on [a, b]
/// * `GaussianPower`: |z|^a_exp e^{-z^2}
/// * `LaguerreJacobi`: |z|^a_exp |1-z|^b_exp (no exponential factor; the
///   deformation supplies decay on unbounded supports)
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum WeightSpec {
    JacobiExp { a: f64, b: f64, alpha: f64, beta: f64, gamma: f64 },
    GaussianPower { a_exp: f64, support: GaussianSupport },
    LaguerreJacobi { a_exp: f64, b_exp: f64, support: UnitSupport },
}

/// Coefficients of A(z) = a0 + a1 z + a2 z^2 and B(z) = b0 + b1 z + b2 z^2
/// with -rho'/rho = B/A.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogDerivative {
    pub a: [f64; 3],
    pub b: [f64; 3],
}

/// Exponential deformation e^{t1 z + t2 z^2 + t3 z^3}.
#[derive(Clone, Debug, PartialEq)]
pub struct Deformation {
    pub t: [Float; 3],
}

impl Deformation {
    pub fn linear(x: &Float) -> Self {
        let b = x.prec();
        Deformation { t: [x.clone(), Float::with_val(b, 0), Float::with_val(b, 0)] }
    }

    pub fn new(t1: Float, t2: Float, t3: Float) -> Self {
        Deformation { t: [t1, t2, t3] }
    }

    pub(crate) fn key(&self) -> String {
        self.t.iter().map(|v| v.to_string_radix(16, None)).collect::<Vec<_>>().join(";")
    }

    pub fn is_linear(&self) -> bool {
        self.t[1].is_zero() && self.t[2].is_zero()
    }
}

/// The weight times the deformation, written as
/// prod_i |z - c_i|^{e_i} * exp(p0 + p1 z + p2 z^2 + p3 z^3) on [lo, hi].
#[derive(Clone, Debug)]
pub struct Profile {
    pub singular: Vec<(f64, f64)>,
    pub poly: [Float; 4],
    pub lo: Option<f64>,
    pub hi: Option<f64>,
}

impl WeightSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        match *self {
            WeightSpec::JacobiExp { a, b, alpha, beta, gamma } => {
                if !(a < b) || !a.is_finite() || !b.is_finite() {
                    return bad(format!("need finite a < b, got [{a}, {b}]"));
                }
                if !(alpha > -1.0 && beta > -1.0) || !gamma.is_finite() {
                    return bad(format!("need alpha, beta > -1, got {alpha}, {beta}"));
                }
            }
            WeightSpec::GaussianPower { a_exp, .. } => {
                if !(a_exp > -1.0) {
                    return bad(format!("need a_exp > -1, got {a_exp}"));
                }
            }
            WeightSpec::LaguerreJacobi { a_exp, b_exp, .. } => {
                if !(a_exp > -1.0 && b_exp > -1.0) {
                    return bad(format!("need a_exp, b_exp > -1, got {a_exp}, {b_exp}"));
                }
            }
        }
        Ok(())
    }

    pub fn log_derivative(&self) -> LogDerivative {
        match *self {
            WeightSpec::JacobiExp { a, b, alpha, beta, gamma } => LogDerivative {
                a: [a * b, -(a + b), 1.0],
                b: [alpha * b + beta * a - gamma * a * b, -alpha - beta + gamma * (a + b), -gamma],
            },
            WeightSpec::GaussianPower { a_exp, .. } => {
                LogDerivative { a: [0.0, 1.0, 0.0], b: [-a_exp, 0.0, 2.0] }
            }
            WeightSpec::LaguerreJacobi { a_exp, b_exp, .. } => {
                LogDerivative { a: [0.0, -1.0, 1.0], b: [a_exp, -(a_exp + b_exp), 0.0] }
            }
        }
    }

    pub fn profile(&self, d: &Deformation) -> Profile {
        let bits = d.t[0].prec();
        let f = |v: f64| Float::with_val(bits, v);
        let [t1, t2, t3] = &d.t;
        match *self {
            WeightSpec::JacobiExp { a, b, alpha, beta, gamma } => Profile {
                singular: vec![(a, alpha), (b, beta)],
                poly: [f(0.0), Float::with_val(bits, t1 + gamma), t2.clone(), t3.clone()],
                lo: Some(a),
                hi: Some(b),
            },
            WeightSpec::GaussianPower { a_exp, support } => {
                let (lo, hi) = match support {
                    GaussianSupport::NegativeHalfLine => (None, Some(0.0)),
                    GaussianSupport::PositiveHalfLine => (Some(0.0), None),
                    GaussianSupport::RealLine => (None, None),
                };
                Profile {
                    singular: vec![(0.0, a_exp)],
                    poly: [f(0.0), t1.clone(), Float::with_val(bits, t2 - 1u32), t3.clone()],
                    lo,
                    hi,
                }
            }
            WeightSpec::LaguerreJacobi { a_exp, b_exp, support } => {
                let (lo, hi) = match support {
                    UnitSupport::UnitInterval => (Some(0.0), Some(1.0)),
                    UnitSupport::AboveOne => (Some(1.0), None),
                    UnitSupport::PositiveHalfLine => (Some(0.0), None),
                };
                Profile {
                    singular: vec![(0.0, a_exp), (1.0, b_exp)],
                    poly: [f(0.0), t1.clone(), t2.clone(), t3.clone()],
                    lo,
                    hi,
                }
            }
        }
    }

    /// Checks that the deformed weight is integrable against polynomials.
    pub fn admits(&self, d: &Deformation) -> Result<()> {
        let p = self.profile(d);
        let decays = |sign: i32| -> bool {
            // leading behaviour of p3 z^3 + p2 z^2 + p1 z as z -> sign * inf
            for (deg, c) in [(3, &p.poly[3]), (2, &p.poly[2]), (1, &p.poly[1])] {
                if !c.is_zero() {
                    let s = if deg % 2 == 1 { sign } else { 1 };
                    return (c.is_sign_negative() as i32 * 2 - 1) * s == 1;
                }
            }
            false
        };
        if p.hi.is_none() && !decays(1) {
            return Err(Error::DivergentIntegral(format!("{self:?} with deformation {:?} at +inf", d.key())));
        }
        if p.lo.is_none() && !decays(-1) {
            return Err(Error::DivergentIntegral(format!("{self:?} with deformation {:?} at -inf", d.key())));
        }
        Ok(())
    }
}

impl Profile {
    /// log of the weight at z, given distances to the singular points where
    /// known exactly (`near` maps a singular point to its distance).
    pub fn log_value(&self, z: &Float, near: &dyn Fn(f64) -> Option<Float>) -> Float {
        let bits = z.prec();
        let mut acc = Float::with_val(bits, &self.poly[3] * z);
        acc += &self.poly[2];
        acc *= z;
        acc += &self.poly[1];
        acc *= z;
        acc += &self.poly[0];
        for &(c, e) in &self.singular {
            if e == 0.0 {
                continue;
            }
            let d = near(c).unwrap_or_else(|| Float::with_val(bits, z - c).abs());
            acc += d.ln() * e;
        }
        acc
    }
}
