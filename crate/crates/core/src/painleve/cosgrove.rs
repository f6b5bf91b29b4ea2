use super::equations::{cosgrove, pv_polynomials, residual, OdeResidualSpec};
use super::poly::Poly;
use super::sampled::SampledFunction;
use crate::error::{Error, Result};
use crate::hp::Precision;
use crate::tau::{TauEvaluator, WeightSpec};
use rug::Float;
use serde::{Deserialize, Serialize};

/// Integration constant of the first integral that makes it vanish at y = 0
/// for data f(0), f'(0).  When P(0) != 0 the f''^2 term survives and f''(0)
/// must be supplied.
pub fn cosgrove_delta(p: &Poly, q: &Poly, r: &Poly, f0: f64, f1: f64, f2: Option<f64>) -> Result<f64> {
    let bits = 256;
    let zero = Float::with_val(bits, 0);
    let p0 = p.eval(&zero);
    if p0.is_zero() {
        // only the bracket survives at a zero of P
        let at0 = |poly: &Poly, k: usize| poly.0.get(k).copied().unwrap_or(0.0) * [1.0, 1.0, 2.0, 6.0][k];
        let (q0, q1, q2) = (at0(q, 0), at0(q, 1), at0(q, 2));
        let (r0, r1) = (at0(r, 0), at0(r, 1));
        let (p1, p2, p3) = (at0(p, 1), at0(p, 2), at0(p, 3));
        let bracket = (q0 * f1 + r0) * f1 - (p1 * f1 * f1 + q1 * f1 + r1) * f0 + 0.5 * (p2 * f1 + q2) * f0 * f0
            - p3 * f0.powi(3) / 6.0;
        return Ok(-bracket);
    }
    let f2 = f2.ok_or(Error::InsufficientDerivativeOrder { required: 2, available: 1 })?;
    let jet = [Float::with_val(bits, f0), Float::with_val(bits, f1), Float::with_val(bits, f2)];
    let value = cosgrove(p, q, r, 0.0, &zero, &jet);
    let p0 = p0.to_f64();
    Ok(-value.to_f64() * p0 * p0 / 4.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FirstIntegralReport {
    pub master_residual: f64,
    pub per_point: Vec<f64>,
    pub max_deviation: f64,
    /// max - min of the first-integral values along the grid
    pub drift: f64,
}

/// Evaluates the first integral along the grid after checking that the data
/// solve the master equation to `master_tolerance`.
pub fn first_integral_consistency(
    p: &Poly,
    q: &Poly,
    r: &Poly,
    delta: f64,
    f: &SampledFunction,
    master_tolerance: f64,
) -> Result<FirstIntegralReport> {
    let master = residual(&OdeResidualSpec::MasterChazy { p: p.clone(), q: q.clone(), r: r.clone() }, f)?;
    if master.max_residual > master_tolerance {
        return Err(Error::MasterEquationViolated { residual: master.max_residual, tolerance: master_tolerance });
    }
    let values = residual(&OdeResidualSpec::CosgroveIntegral { p: p.clone(), q: q.clone(), r: r.clone(), delta }, f)?;
    let lo = values.per_point.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.per_point.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(FirstIntegralReport {
        master_residual: master.max_residual,
        max_deviation: values.max_residual,
        drift: hi - lo,
        per_point: values.per_point,
    })
}

/// Which argument the Jacobi-side log-derivative is evaluated at.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArgumentSign {
    /// g(-y/(b-a) - gamma): the deformation e^{-yz/(b-a)} decays on [a, b],
    /// which is what makes f a solution.
    #[default]
    Reflected,
    /// g(y/(b-a) - gamma), as typeset.
    AsPrinted,
}

/// f(y) = n(n+alpha+beta) - (y/(b-a)) (g(X) - n a) with X = -+ y/(b-a) - gamma,
/// g the log-derivative of tau_n for (z-a)^alpha (b-z)^beta e^{gamma z} on [a, b].
#[derive(Clone, Debug)]
pub struct JacobiPvF {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub a: f64,
    pub b: f64,
    pub sign: ArgumentSign,
    tau: TauEvaluator,
}

impl JacobiPvF {
    pub fn new(n: usize, alpha: f64, beta: f64, gamma: f64, a: f64, b: f64, precision: Precision) -> Result<Self> {
        let weight = WeightSpec::JacobiExp { a, b, alpha, beta, gamma };
        let tau = TauEvaluator::new(weight, n, precision)?;
        Ok(JacobiPvF { n, alpha, beta, gamma, a, b, sign: ArgumentSign::Reflected, tau })
    }

    pub fn with_sign(mut self, sign: ArgumentSign) -> Self {
        self.sign = sign;
        self
    }

    pub fn evaluator(&self) -> &TauEvaluator {
        &self.tau
    }

    /// The constant n(n + alpha + beta) = f(0).
    pub fn boundary_value(&self) -> f64 {
        let n = self.n as f64;
        n * (n + self.alpha + self.beta)
    }

    /// -n(n + alpha)/(2n + alpha + beta) = f'(0).
    pub fn boundary_slope(&self) -> f64 {
        let n = self.n as f64;
        if self.n == 0 {
            return 0.0;
        }
        -n * (n + self.alpha) / (2.0 * n + self.alpha + self.beta)
    }

    /// [f, f', f'', f'''] at y.
    pub fn jet(&self, y: &Float) -> Result<Vec<Float>> {
        let bits = self.tau.bits();
        let c = Float::with_val(bits, 1) / (self.b - self.a);
        let sigma: i32 = match self.sign {
            ArgumentSign::Reflected => -1,
            ArgumentSign::AsPrinted => 1,
        };
        let arg = Float::with_val(bits, &c * y) * sigma - self.gamma;
        let [g, g1, g2, g3] = self.tau.log_derivatives_exact(&arg)?;
        let na = self.n as f64 * self.a;
        let cy = Float::with_val(bits, &c * y);
        let c2 = Float::with_val(bits, c.square_ref());
        let c3 = Float::with_val(bits, &c2 * &c);
        let shifted = g - na;
        let f = Float::with_val(bits, self.boundary_value()) - Float::with_val(bits, &cy * &shifted);
        let f1 = -Float::with_val(bits, &c * &shifted) - Float::with_val(bits, &c2 * y) * &g1 * sigma;
        let f2 = -Float::with_val(bits, &c2 * &g1) * (2 * sigma) - Float::with_val(bits, &c3 * y) * &g2;
        let f3 = -Float::with_val(bits, &c3 * &g2) * 3u32 - Float::with_val(bits, &c3 * &c) * y * &g3 * sigma;
        Ok(vec![f, f1, f2, f3])
    }

    pub fn value(&self, y: &Float) -> Result<Float> {
        Ok(self.jet(y)?.swap_remove(0))
    }

    pub fn sample(&self, grid: Vec<Float>) -> Result<SampledFunction> {
        SampledFunction::from_jets(grid, |y| self.jet(y), "jacobi f(y) from exact tau log-derivatives")
    }

    /// (P, Q, R) of the first integral satisfied by f.
    pub fn polynomials(&self) -> (Poly, Poly, Poly) {
        pv_polynomials(self.alpha, self.beta, self.n as u32)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PvConstantReport {
    /// -beta^2 n^2 / 4
    pub stated: f64,
    /// delta from the boundary data f(0), f'(0)
    pub from_boundary: f64,
    pub boundary_slope_formula: f64,
    /// f'(0) computed through the tau function
    pub boundary_slope_numeric: f64,
    pub agree: bool,
}

/// Compares the stated integration constant with the one forced by the
/// boundary data, and the closed-form f'(0) with the computed one.
pub fn jacobi_pv_constants(f: &JacobiPvF) -> Result<PvConstantReport> {
    let (p, q, r) = f.polynomials();
    let n = f.n as f64;
    let stated = -0.25 * f.beta * f.beta * n * n;
    let slope = f.boundary_slope();
    let from_boundary = cosgrove_delta(&p, &q, &r, f.boundary_value(), slope, None)?;
    let numeric = f.jet(&Float::with_val(f.tau.bits(), 0))?[1].to_f64();
    let scale = 1.0 + stated.abs();
    Ok(PvConstantReport {
        stated,
        from_boundary,
        boundary_slope_formula: slope,
        boundary_slope_numeric: numeric,
        agree: (stated - from_boundary).abs() <= 1e-12 * scale && (slope - numeric).abs() <= 1e-12 * (1.0 + slope.abs()),
    })
}
