//! Direct n-dimensional quadrature of int Delta(z)^2 prod w(z_k) dz_k in
//! double precision.  Independent of moments and determinants; used to
//! cross-check the Hankel route for n <= 3.

use super::weight::{Deformation, WeightSpec};
use crate::error::{Error, Result};
use crate::quadrature::tanh_sinh_rule_f64;
use rug::Float;

pub fn direct_tau(weight: &WeightSpec, n: usize, t: [f64; 3], step: f64) -> Result<f64> {
    weight.validate()?;
    let bits = 64;
    let d = Deformation::new(Float::with_val(bits, t[0]), Float::with_val(bits, t[1]), Float::with_val(bits, t[2]));
    weight.admits(&d)?;
    let profile = weight.profile(&d);
    let (Some(lo), Some(hi)) = (profile.lo, profile.hi) else {
        return Err(Error::InvalidParameter("direct quadrature oracle needs a compact support".into()));
    };
    if profile.singular.iter().any(|&(c, e)| e != 0.0 && c > lo && c < hi) {
        return Err(Error::InvalidParameter("interior singularity".into()));
    }
    let poly: Vec<f64> = profile.poly.iter().map(|c| c.to_f64()).collect();
    let half = (hi - lo) / 2.0;
    let nodes: Vec<(f64, f64)> = tanh_sinh_rule_f64(step, 4.5)
        .into_iter()
        .map(|(x, w, opx, omx)| {
            let (dl, dh) = (half * opx, half * omx);
            let z = if x < 0.0 { lo + dl } else { hi - dh };
            let mut lw = poly[0] + z * (poly[1] + z * (poly[2] + z * poly[3]));
            for &(c, e) in &profile.singular {
                if e == 0.0 {
                    continue;
                }
                let dist = if c == lo { dl } else if c == hi { dh } else { (z - c).abs() };
                lw += e * dist.ln();
            }
            (z, w * half * lw.exp())
        })
        .collect();
    let mut idx = vec![0usize; n];
    let mut total = 0.0;
    if n == 0 {
        return Ok(1.0);
    }
    loop {
        let mut v = 1.0;
        for i in 0..n {
            v *= nodes[idx[i]].1;
            for j in 0..i {
                let dz = nodes[idx[i]].0 - nodes[idx[j]].0;
                v *= dz * dz;
            }
        }
        total += v;
        let mut k = 0;
        loop {
            if k == n {
                return Ok(total);
            }
            idx[k] += 1;
            if idx[k] < nodes.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
