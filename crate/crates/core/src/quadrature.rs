//! Double-exponential (tanh-sinh) quadrature.
//!
//! The integrand receives the abscissa together with its exact distances to
//! both endpoints, so algebraic endpoint singularities (z - a)^alpha can be
//! evaluated without cancellation.

use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::Float;

const T_CAP: f64 = 9.0;
const MAX_LEVEL: u32 = 12;

/// Vector-valued tanh-sinh rule at MPFR precision.
#[derive(Clone, Debug)]
pub struct TanhSinh {
    bits: u32,
    /// Target relative accuracy in decimal digits.
    digits: u32,
    max_level: u32,
}

struct Node {
    /// q = 1/(exp(2u)+1), the half-distance of the node to the nearer end.
    q: Float,
    weight: Float,
}

impl TanhSinh {
    pub fn new(bits: u32, digits: u32) -> Self {
        TanhSinh { bits, digits, max_level: MAX_LEVEL }
    }

    pub fn with_max_level(mut self, level: u32) -> Self {
        self.max_level = level;
        self
    }

    fn node(&self, t: f64) -> Node {
        let b = self.bits + 20;
        let t = Float::with_val(b, t);
        let pi = Float::with_val(b, rug::float::Constant::Pi);
        let u = Float::with_val(b, t.sinh_ref()) * &pi / 2u32;
        let e2u = Float::with_val(b, u * 2u32).exp();
        let q = Float::with_val(b, 1u32) / (e2u + 1u32);
        let one_minus_q = Float::with_val(b, 1u32 - &q);
        let weight = Float::with_val(b, t.cosh_ref()) * pi * 2u32 * &q * one_minus_q;
        Node { q, weight }
    }

    /// Integrates `m` functions at once over [lo, hi].  The callback gets
    /// (z, z - lo, hi - z) and writes the `m` integrand values.
    pub fn integrate<F>(&self, lo: &Float, hi: &Float, m: usize, mut f: F) -> Result<Vec<Float>>
    where
        F: FnMut(&Float, &Float, &Float, &mut [Float]),
    {
        let b = self.bits + 20;
        let half = Float::with_val(b, hi - lo) / 2u32;
        let zero = || Float::with_val(b, 0);
        let mut buf = vec![zero(); m];
        let mut sum = vec![zero(); m];
        let mut abs_sum = vec![zero(); m];

        let tiny = Float::with_val(b, 1u32) >> (self.bits + 30);
        let tol = Float::with_val(b, 10u32).pow(-(self.digits as i32 + 2)) * 1u32;

        // Accumulate one node pair; returns the largest |w f| relative to abs_sum.
        let mut eval_pair = |t: f64, sum: &mut [Float], abs_sum: &mut [Float]| -> bool {
            let nd = self.node(t);
            let sides: &[bool] = if t == 0.0 { &[true] } else { &[true, false] };
            let mut negligible = true;
            for &upper in sides {
                // distance to the nearer endpoint is 2 q half
                let near = Float::with_val(b, &nd.q * &half) * 2u32;
                let far = Float::with_val(b, &half * 2u32) - &near;
                let (z, dl, dh) = if upper {
                    (Float::with_val(b, hi - &near), far, near)
                } else {
                    (Float::with_val(b, lo + &near), near, far)
                };
                for v in buf.iter_mut() {
                    *v = zero();
                }
                f(&z, &dl, &dh, &mut buf);
                for j in 0..m {
                    let term = Float::with_val(b, &buf[j] * &nd.weight);
                    let a = Float::with_val(b, term.abs_ref());
                    if a > Float::with_val(b, &abs_sum[j] * &tiny) {
                        negligible = false;
                    }
                    abs_sum[j] += &a;
                    sum[j] += term;
                }
            }
            negligible
        };

        // Level 0 fixes the truncation of the t-range.
        let mut t_max = 0.0f64;
        let mut k = 0i64;
        let mut quiet = 0;
        loop {
            let t = k as f64;
            if t > T_CAP {
                break;
            }
            let neg = eval_pair(t, &mut sum, &mut abs_sum);
            t_max = t;
            quiet = if neg && k > 0 { quiet + 1 } else { 0 };
            if quiet >= 2 {
                break;
            }
            k += 1;
        }

        let mut h = 1.0f64;
        let mut prev: Vec<Float> = sum.iter().map(|s| Float::with_val(b, s * &half) * h).collect();
        for level in 1..=self.max_level {
            h /= 2.0;
            let mut t = h;
            while t <= t_max + 1e-12 {
                eval_pair(t, &mut sum, &mut abs_sum);
                t += 2.0 * h;
            }
            let cur: Vec<Float> = sum.iter().map(|s| Float::with_val(b, s * &half) * h).collect();
            let mut worst = zero();
            let mut converged = level >= 3;
            for j in 0..m {
                let scale = Float::with_val(b, &abs_sum[j] * &half) * h;
                let diff = Float::with_val(b, &cur[j] - &prev[j]).abs();
                if scale > 0 {
                    let rel = Float::with_val(b, &diff / &scale);
                    if rel > worst {
                        worst = rel;
                    }
                }
                if diff > Float::with_val(b, &tol * &scale) {
                    converged = false;
                }
            }
            if converged {
                return Ok(cur.into_iter().map(|v| Float::with_val(self.bits, v)).collect());
            }
            if level == self.max_level {
                let achieved = if worst.is_zero() { self.digits as f64 } else { -worst.to_f64().log10() };
                return Err(Error::PrecisionNotReached { achieved_digits: achieved });
            }
            prev = cur;
        }
        unreachable!()
    }
}

/// Plain f64 tanh-sinh rule on [-1, 1]: (x, weight, 1 + x, 1 - x).
pub fn tanh_sinh_rule_f64(h: f64, t_max: f64) -> Vec<(f64, f64, f64, f64)> {
    let mut out = Vec::new();
    let kmax = (t_max / h).floor() as i64;
    for k in -kmax..=kmax {
        let t = k as f64 * h;
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        let q = 1.0 / ((2.0 * u.abs()).exp() + 1.0);
        let w = 2.0 * std::f64::consts::PI * t.cosh() * q * (1.0 - q) * h;
        if w < 1e-300 {
            continue;
        }
        let (opx, omx) = if t >= 0.0 { (2.0 - 2.0 * q, 2.0 * q) } else { (2.0 * q, 2.0 - 2.0 * q) };
        out.push((opx - 1.0, w, opx, omx));
    }
    out
}
