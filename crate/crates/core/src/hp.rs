//! Working-precision helpers around MPFR floats.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complete, Float};
use serde::{Deserialize, Serialize};

pub const DEFAULT_DIGITS: u32 = 60;
const GUARD_BITS: u32 = 16;

/// Decimal working precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Precision {
    pub digits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { digits: DEFAULT_DIGITS }
    }
}

impl Precision {
    pub fn digits(digits: u32) -> Self {
        Precision { digits: digits.max(8) }
    }

    pub fn bits(&self) -> u32 {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
    }

    /// 10^-digits at this precision.
    pub fn epsilon(&self) -> Float {
        let ten = Float::with_val(self.bits(), 10);
        ten.pow(-(self.digits as i32))
    }

    pub fn with_extra_bits(&self, extra: u32) -> u32 {
        self.bits() + extra
    }
}

pub fn float(bits: u32, v: f64) -> Float {
    Float::with_val(bits, v)
}

pub fn pi(bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi)
}

pub fn factorial(bits: u32, n: u32) -> Float {
    Float::with_val(bits, rug::Integer::factorial(n).complete())
}

/// Approximate number of correct decimal digits given an error and a scale.
pub fn digits_of(err: &Float, scale: &Float) -> f64 {
    if err.is_zero() {
        return f64::INFINITY;
    }
    let s = if scale.is_zero() { 1.0 } else { scale.to_f64().abs() };
    let e = err.to_f64().abs();
    if e == 0.0 {
        return f64::INFINITY;
    }
    (s / e).log10()
}
