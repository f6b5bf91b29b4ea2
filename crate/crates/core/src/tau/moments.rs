use super::weight::{Deformation, GaussianSupport, Profile, WeightSpec};
use crate::error::{Error, Result};
use crate::hp::Precision;
use crate::quadrature::TanhSinh;
use rug::float::Constant;
use rug::Float;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentMethod {
    /// Recurrence when the family admits one, quadrature otherwise.
    #[default]
    Auto,
    Quadrature,
    Recurrence,
}

/// mu_k = int z^k w(z) e^{t1 z + t2 z^2 + t3 z^3} dz for k < count.
pub fn moments(
    weight: &WeightSpec,
    deformation: &Deformation,
    count: usize,
    precision: Precision,
    method: MomentMethod,
) -> Result<Vec<Float>> {
    weight.validate()?;
    weight.admits(deformation)?;
    let rec = recurrence_applicable(weight, deformation);
    match (method, rec) {
        (MomentMethod::Recurrence, None) => Err(Error::InvalidParameter(
            "no closed-form recurrence for this weight and deformation".into(),
        )),
        (MomentMethod::Quadrature, _) | (MomentMethod::Auto, None) => {
            quadrature_moments(weight, deformation, count, precision)
        }
        (_, Some(shift)) => gaussian_recurrence(weight, deformation, count, precision, shift),
    }
}

/// Single moment helper.
pub fn moment(weight: &WeightSpec, k: usize, x: f64, precision: Precision) -> Result<Float> {
    let d = Deformation::linear(&Float::with_val(precision.bits(), x));
    Ok(moments(weight, &d, k + 1, precision, MomentMethod::Auto)?.pop().unwrap())
}

// Gaussian weights with integer exponent reduce to nu_j = int_I z^j e^{-c z^2 + t z};
// returns the index shift (the exponent) when applicable.
fn recurrence_applicable(weight: &WeightSpec, d: &Deformation) -> Option<usize> {
    if let WeightSpec::GaussianPower { a_exp, support } = *weight {
        let int = a_exp >= 0.0 && a_exp.fract() == 0.0 && a_exp <= 64.0;
        let even_ok = support != GaussianSupport::RealLine || (a_exp as u64).is_multiple_of(2);
        if int && even_ok && d.t[2].is_zero() {
            return Some(a_exp as usize);
        }
    }
    None
}

fn gaussian_recurrence(
    weight: &WeightSpec,
    d: &Deformation,
    count: usize,
    precision: Precision,
    shift: usize,
) -> Result<Vec<Float>> {
    let WeightSpec::GaussianPower { support, .. } = *weight else { unreachable!() };
    let total = count + shift;
    // forward recurrence loses a few digits per step when mass sits on the boundary
    let bits = precision.bits() + 64 + 8 * total as u32;
    let c = Float::with_val(bits, 1u32 - &d.t[1]);
    let t = Float::with_val(bits, &d.t[0]);
    let sc = c.clone().sqrt();
    let pi = Float::with_val(bits, Constant::Pi);
    let base = Float::with_val(bits, &t * &t) / (Float::with_val(bits, &c * 4u32));
    let gauss = base.exp() * pi.sqrt() / &sc;
    let arg = Float::with_val(bits, &t / (Float::with_val(bits, &sc * 2u32)));
    // boundary term of d/dz[z^j e^{...}] integrated over the support, j = 0 only
    let (nu0, boundary) = match support {
        GaussianSupport::RealLine => (gauss, 0i32),
        GaussianSupport::PositiveHalfLine => (gauss * Float::with_val(bits, -arg).erfc() / 2u32, 1),
        GaussianSupport::NegativeHalfLine => (gauss * arg.erfc() / 2u32, -1),
    };
    let mut nu: Vec<Float> = Vec::with_capacity(total);
    nu.push(nu0);
    // 2c nu_{j+1} = t nu_j + j nu_{j-1} + boundary * [j == 0]
    for j in 0..total.saturating_sub(1) {
        let mut next = Float::with_val(bits, &t * &nu[j]);
        if j > 0 {
            next += Float::with_val(bits, &nu[j - 1] * j as u32);
        } else {
            next += boundary;
        }
        next /= Float::with_val(bits, &c * 2u32);
        nu.push(next);
    }
    let sign_flip = support == GaussianSupport::NegativeHalfLine && shift % 2 == 1;
    Ok(nu[shift..]
        .iter()
        .map(|v| {
            let v = Float::with_val(precision.bits(), v);
            if sign_flip { -v } else { v }
        })
        .collect())
}

struct Piece {
    lo: Float,
    hi: Float,
}

fn quadrature_moments(
    weight: &WeightSpec,
    d: &Deformation,
    count: usize,
    precision: Precision,
) -> Result<Vec<Float>> {
    let bits = precision.bits() + 32;
    let profile = weight.profile(d);
    let pieces = split_support(&profile, count, precision, bits)?;
    let rule = TanhSinh::new(bits, precision.digits + 2);
    let mut acc: Vec<Float> = (0..count).map(|_| Float::with_val(bits, 0)).collect();
    for piece in &pieces {
        let (plo, phi) = (piece.lo.to_f64(), piece.hi.to_f64());
        let part = rule.integrate(&piece.lo, &piece.hi, count, |z, dl, dh, out| {
            let near = |c: f64| {
                if c == plo {
                    Some(dl.clone())
                } else if c == phi {
                    Some(dh.clone())
                } else {
                    None
                }
            };
            let mut v = profile.log_value(z, &near).exp();
            for o in out.iter_mut() {
                *o = v.clone();
                v *= z;
            }
        })?;
        for (a, p) in acc.iter_mut().zip(part) {
            *a += p;
        }
    }
    Ok(acc.into_iter().map(|v| Float::with_val(precision.bits(), v)).collect())
}

// Finite subintervals covering the support up to a tail negligible at the
// working precision, with singular points as breakpoints and geometric
// refinement away from the bulk of the mass.
fn split_support(profile: &Profile, count: usize, precision: Precision, bits: u32) -> Result<Vec<Piece>> {
    let logf = |z: f64| -> f64 {
        let zf = Float::with_val(bits, z);
        let v = profile.log_value(&zf, &|_| None).to_f64();
        if v.is_finite() { v } else { f64::NEG_INFINITY }
    };
    let p1 = profile.poly[1].to_f64();
    let p2 = profile.poly[2].to_f64();
    let p3 = profile.poly[3].to_f64();
    // decay length of the exponential part
    let scale = if p3 != 0.0 {
        1.0
    } else if p2 != 0.0 {
        (1.0 / p2.abs().sqrt()).clamp(1e-3, 1e3)
    } else if p1 != 0.0 {
        (1.0 / p1.abs()).clamp(1e-3, 1e3)
    } else {
        1.0
    };
    // a point near the bulk of the mass
    let mut centre = if p3 == 0.0 && p2 < 0.0 { -p1 / (2.0 * p2) } else { 0.0 };
    if let Some(lo) = profile.lo {
        centre = centre.max(lo);
    }
    if let Some(hi) = profile.hi {
        centre = centre.min(hi);
    }
    let budget = precision.digits as f64 * std::f64::consts::LN_10 + 40.0;
    let moment_growth = |z: f64| (count as f64) * (1.0 + z.abs()).ln();
    let mut breaks: Vec<f64> = Vec::new();
    let mut peak = logf(centre);
    // scan outward on both sides
    let march = |dir: f64, end: Option<f64>, breaks: &mut Vec<f64>, peak: &mut f64| {
        if let Some(e) = end {
            breaks.push(e);
            let mut k = 1.0;
            loop {
                let z = centre + dir * scale * (k - 1.0);
                if (z - e) * dir >= 0.0 {
                    break;
                }
                if k > 1.0 {
                    breaks.push(z);
                }
                *peak = peak.max(logf(z));
                k *= 2.0;
                if k > 1e6 {
                    break;
                }
            }
            return;
        }
        let mut k = 1.0;
        loop {
            let z = centre + dir * scale * k;
            let v = logf(z);
            *peak = peak.max(v);
            breaks.push(z);
            if v + moment_growth(z) < *peak - budget && k >= 12.0 / scale.min(12.0) {
                break;
            }
            k *= if k < 8.0 { 1.0 + 1.0 / k } else { 2.0 };
            if k > 1e9 {
                break;
            }
        }
    };
    march(-1.0, profile.lo, &mut breaks, &mut peak);
    march(1.0, profile.hi, &mut breaks, &mut peak);
    breaks.push(centre);
    let lo = breaks.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = breaks.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    for &(c, e) in &profile.singular {
        if e != 0.0 && c > lo && c < hi {
            breaks.push(c);
        }
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup();
    if breaks.len() < 2 {
        return Err(Error::DivergentIntegral("degenerate support".into()));
    }
    Ok(breaks
        .windows(2)
        .map(|w| Piece { lo: Float::with_val(bits, w[0]), hi: Float::with_val(bits, w[1]) })
        .collect())
}
