use super::moments::{moments, MomentMethod};
use super::weight::{Deformation, WeightSpec};
use crate::diff::{central_derivatives, richardson, Stencil};
use crate::error::{Error, Result};
use crate::hp::{factorial, Precision};
use crate::linalg::Matrix;
use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// How log-derivatives of tau of order >= 2 are obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivativeRoute {
    /// Trace formulas in the shifted Hankel matrices, all orders.
    Exact,
    /// Exact up to order 1, Richardson central differences of g beyond.
    #[default]
    Richardson,
}

/// Serializable identity of an evaluator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TauDescriptor {
    pub weight: WeightSpec,
    pub n: usize,
    pub precision: Precision,
    #[serde(default)]
    pub method: MomentMethod,
}

/// tau_n(x) = int_{I^n} Delta(z)^2 prod e^{x z_k} rho(z_k) dz_k via
/// n! det(mu_{i+j}).
pub struct TauEvaluator {
    desc: TauDescriptor,
    cache: RwLock<HashMap<String, Arc<Vec<Float>>>>,
}

impl Clone for TauEvaluator {
    fn clone(&self) -> Self {
        TauEvaluator { desc: self.desc.clone(), cache: RwLock::new(HashMap::new()) }
    }
}

impl std::fmt::Debug for TauEvaluator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.desc.fmt(f)
    }
}

const NEAR_SINGULAR: f64 = 1e30;

impl TauEvaluator {
    pub fn new(weight: WeightSpec, n: usize, precision: Precision) -> Result<Self> {
        Self::from_descriptor(TauDescriptor { weight, n, precision, method: MomentMethod::Auto })
    }

    pub fn from_descriptor(desc: TauDescriptor) -> Result<Self> {
        desc.weight.validate()?;
        Ok(TauEvaluator { desc, cache: RwLock::new(HashMap::new()) })
    }

    pub fn with_method(mut self, method: MomentMethod) -> Self {
        self.desc.method = method;
        self
    }

    pub fn descriptor(&self) -> &TauDescriptor {
        &self.desc
    }

    pub fn n(&self) -> usize {
        self.desc.n
    }

    pub fn weight(&self) -> &WeightSpec {
        &self.desc.weight
    }

    pub fn precision(&self) -> Precision {
        self.desc.precision
    }

    pub fn bits(&self) -> u32 {
        self.desc.precision.bits()
    }

    pub fn float(&self, v: f64) -> Float {
        Float::with_val(self.bits(), v)
    }

    /// Moments mu_0 .. mu_{2n+2}: enough for the Hankel matrix and four
    /// x-derivatives of it.
    pub fn moments(&self, d: &Deformation) -> Result<Arc<Vec<Float>>> {
        let key = d.key();
        if let Some(v) = self.cache.read().expect("moment cache poisoned").get(&key) {
            return Ok(v.clone());
        }
        let count = 2 * self.desc.n + 3;
        let m = Arc::new(moments(&self.desc.weight, d, count, self.desc.precision, self.desc.method)?);
        self.cache.write().expect("moment cache poisoned").insert(key, m.clone());
        Ok(m)
    }

    fn hankel_det(&self, mu: &[Float]) -> Result<Float> {
        let (det, cond) = Matrix::hankel(mu, self.desc.n, 0).det_full_pivot()?;
        if cond > NEAR_SINGULAR {
            log::warn!("near-singular Hankel matrix (pivot ratio {cond:e}) for {:?}", self.desc);
        }
        Ok(det)
    }

    pub fn tau(&self, x: &Float) -> Result<Float> {
        self.generalized_tau(&Deformation::linear(x))
    }

    pub fn generalized_tau(&self, d: &Deformation) -> Result<Float> {
        let n = self.desc.n;
        if n == 0 {
            return Ok(Float::with_val(self.bits(), 1));
        }
        let mu = self.moments(d)?;
        Ok(self.hankel_det(&mu)? * factorial(self.bits(), n as u32))
    }

    /// log tau for the deformation; the n! is included.
    pub fn log_generalized_tau(&self, d: &Deformation) -> Result<Float> {
        Ok(self.generalized_tau(d)?.ln())
    }

    /// [g, g', g'', g'''] with g = d/dx log tau, from
    /// B_m = H^{-1} H^{(m)} where H^{(m)} = (mu_{i+j+m}).
    pub fn log_derivatives_exact(&self, x: &Float) -> Result<[Float; 4]> {
        let n = self.desc.n;
        let bits = self.bits();
        let zero = || Float::with_val(bits, 0);
        if n == 0 {
            return Ok([zero(), zero(), zero(), zero()]);
        }
        let mu = self.moments(&Deformation::linear(x))?;
        let h = Matrix::hankel(&mu, n, 0);
        let b: Vec<Matrix> = (1..=4).map(|m| h.solve(&Matrix::hankel(&mu, n, m))).collect::<Result<_>>()?;
        let (b1, b2, b3, b4) = (&b[0], &b[1], &b[2], &b[3]);
        let b11 = b1.mul(b1);
        let tr = |m: &Matrix| m.trace();
        let l1 = tr(b1);
        let l2 = tr(b2) - tr(&b11);
        let l3 = tr(b3) - tr(&b1.mul(b2)) * 3u32 + tr(&b11.mul(b1)) * 2u32;
        let l4 = tr(b4) - tr(&b1.mul(b3)) * 4u32 - tr(&b2.mul(b2)) * 3u32 + tr(&b11.mul(b2)) * 12u32
            - tr(&b11.mul(&b11)) * 6u32;
        Ok([l1, l2, l3, l4])
    }

    /// d^order/dx^order of g.
    pub fn log_deriv_g(&self, x: &Float, order: usize, route: DerivativeRoute) -> Result<Float> {
        if order > 3 {
            return Err(Error::InvalidParameter(format!("derivative order {order} > 3")));
        }
        if route == DerivativeRoute::Exact || order <= 1 {
            return Ok(self.log_derivatives_exact(x)?[order].clone());
        }
        self.g_richardson(x, order)
    }

    // initial step 1e-2 max(1, |x|), halved six times
    fn g_richardson(&self, x: &Float, order: usize) -> Result<Float> {
        let bits = self.bits();
        let h0 = 1e-2 * x.to_f64().abs().max(1.0);
        let g = |t: &Float| -> Result<Float> { Ok(self.log_derivatives_exact(t)?[0].clone()) };
        let mut rows = Vec::new();
        for level in 0..=6u32 {
            let d = central_derivatives(&g, x, Stencil { step: h0 / f64::from(1u32 << level), levels: 0 }, order)?;
            rows.push(d[order - 1].clone());
        }
        let (best, err) = richardson(&rows);
        let scale = Float::with_val(bits, best.abs_ref()).max(&Float::with_val(bits, 1));
        let tol = Float::with_val(bits, 10u32).pow(-(self.desc.precision.digits as i32) / 3) * scale;
        if err > tol {
            return Err(Error::PrecisionNotReached {
                achieved_digits: -(err.to_f64() / best.to_f64().abs().max(1.0)).log10(),
            });
        }
        Ok(best)
    }

    /// g by central differences of log tau (independent of the trace formula).
    pub fn g_by_differences(&self, x: &Float, stencil: Stencil) -> Result<Float> {
        let f = |t: &Float| self.tau(t).map(|v| v.ln());
        Ok(central_derivatives(&f, x, stencil, 1)?.remove(0))
    }
}
