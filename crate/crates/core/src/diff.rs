//! Central finite differences with Richardson extrapolation.

use crate::error::{Error, Result};
use rug::Float;
use serde::{Deserialize, Serialize};

/// Centered second-order stencil with `levels` Richardson halvings: the
/// differences are taken at steps h, h/2, ..., h/2^levels and combined.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stencil {
    pub step: f64,
    pub levels: u32,
}

impl Default for Stencil {
    fn default() -> Self {
        Stencil { step: 1e-2, levels: 1 }
    }
}

impl Stencil {
    pub fn plain(step: f64) -> Self {
        Stencil { step, levels: 0 }
    }

    pub fn halved(&self) -> Self {
        Stencil { step: self.step / 2.0, levels: self.levels }
    }
}

/// Richardson table for a quantity with an even error expansion in h.
/// Returns the extrapolated value and |last - previous diagonal|.
pub fn richardson(rows: &[Float]) -> (Float, Float) {
    let bits = rows[0].prec();
    let mut table: Vec<Vec<Float>> = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let mut row = vec![r.clone()];
        for j in 1..=i {
            let f = Float::with_val(bits, 4u32).pow(j as u32) - 1u32;
            let d = Float::with_val(bits, &row[j - 1] - &table[i - 1][j - 1]) / f;
            row.push(Float::with_val(bits, &row[j - 1] + d));
        }
        table.push(row);
    }
    let n = table.len();
    let best = table[n - 1][n - 1].clone();
    let err = if n > 1 {
        Float::with_val(bits, &best - &table[n - 2][n - 2]).abs()
    } else {
        Float::with_val(bits, 0)
    };
    (best, err)
}

use rug::ops::Pow;

/// Derivatives of orders 1..=max_order (max 3) of `f` at `x`.
pub fn central_derivatives<F>(f: &F, x: &Float, stencil: Stencil, max_order: usize) -> Result<Vec<Float>>
where
    F: Fn(&Float) -> Result<Float>,
{
    if max_order > 3 {
        return Err(Error::InvalidParameter("stencils cover derivative orders up to 3".into()));
    }
    let bits = x.prec();
    let f0 = f(x)?;
    let mut rows: Vec<Vec<Float>> = vec![Vec::new(); max_order];
    for level in 0..=stencil.levels {
        let h = Float::with_val(bits, stencil.step) >> level;
        if h.is_zero() {
            return Err(Error::InvalidParameter("finite-difference step underflow".into()));
        }
        let at = |m: i32| f(&Float::with_val(bits, x + Float::with_val(bits, &h * m)));
        let (p1, m1) = (at(1)?, at(-1)?);
        if max_order >= 1 {
            rows[0].push(Float::with_val(bits, &p1 - &m1) / Float::with_val(bits, &h * 2u32));
        }
        if max_order >= 2 {
            let num = Float::with_val(bits, &p1 + &m1) - Float::with_val(bits, &f0 * 2u32);
            rows[1].push(num / Float::with_val(bits, h.square_ref()));
        }
        if max_order >= 3 {
            let (p2, m2) = (at(2)?, at(-2)?);
            let num = Float::with_val(bits, &p2 - &m2) - Float::with_val(bits, &p1 - &m1) * 2u32;
            rows[2].push(num / (Float::with_val(bits, h.square_ref()) * &h * 2u32));
        }
    }
    Ok(rows.iter().map(|r| richardson(r).0).collect())
}

/// Default stencil for derivatives in the deformation times.
pub fn deformation_stencil() -> Stencil {
    Stencil { step: 1e-3, levels: 1 }
}
