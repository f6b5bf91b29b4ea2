use crate::diff::{richardson, Stencil};
use crate::error::Result;
use crate::tau::{Deformation, TauEvaluator, WeightSpec};
use rug::Float;
use serde::{Deserialize, Serialize};

/// Partial derivatives of F = log tau(t1, t2, t3) at t = (x, 0, 0).
/// Entries involving t3 are absent when that deformation diverges.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocusPartials {
    pub f1: f64,
    pub f2: f64,
    pub f11: f64,
    pub f22: f64,
    pub f1111: f64,
    pub f3: Option<f64>,
    pub f13: Option<f64>,
}

struct Partials {
    f1: Float,
    f2: Float,
    f11: Float,
    f22: Float,
    f1111: Float,
    f3: Option<Float>,
    f13: Option<Float>,
}

fn partials(tau: &TauEvaluator, x: &Float, stencil: Stencil) -> Result<Partials> {
    let bits = tau.bits();
    let at = |d: [f64; 3], h: &Float| -> Result<Float> {
        let t = |k: usize| Float::with_val(bits, h * d[k]);
        let d = Deformation::new(Float::with_val(bits, x + t(0)), t(1), t(2));
        tau.log_generalized_tau(&d)
    };
    let probe = Float::with_val(bits, stencil.step);
    let cubic = tau.weight().admits(&Deformation::new(x.clone(), Float::with_val(bits, 0), probe.clone())).is_ok()
        && tau.weight().admits(&Deformation::new(x.clone(), Float::with_val(bits, 0), -probe)).is_ok();
    let f0 = at([0.0; 3], &Float::with_val(bits, 0))?;
    let mut rows: [Vec<Float>; 7] = Default::default();
    for level in 0..=stencil.levels {
        let h = Float::with_val(bits, stencil.step) >> level;
        let h2 = Float::with_val(bits, h.square_ref());
        let (p1, m1) = (at([1.0, 0.0, 0.0], &h)?, at([-1.0, 0.0, 0.0], &h)?);
        let (p2, m2) = (at([2.0, 0.0, 0.0], &h)?, at([-2.0, 0.0, 0.0], &h)?);
        let (tp, tm) = (at([0.0, 1.0, 0.0], &h)?, at([0.0, -1.0, 0.0], &h)?);
        let first = |p: &Float, m: &Float| Float::with_val(bits, p - m) / Float::with_val(bits, &h * 2u32);
        let second = |p: &Float, m: &Float| (Float::with_val(bits, p + m) - Float::with_val(bits, &f0 * 2u32)) / &h2;
        rows[0].push(first(&p1, &m1));
        rows[1].push(first(&tp, &tm));
        rows[2].push(second(&p1, &m1));
        rows[3].push(second(&tp, &tm));
        let fourth = Float::with_val(bits, &p2 + &m2) - Float::with_val(bits, &p1 + &m1) * 4u32 + Float::with_val(bits, &f0 * 6u32);
        rows[4].push(fourth / Float::with_val(bits, h2.square_ref()));
        if cubic {
            let (cp, cm) = (at([0.0, 0.0, 1.0], &h)?, at([0.0, 0.0, -1.0], &h)?);
            rows[5].push(first(&cp, &cm));
            let mixed = at([1.0, 0.0, 1.0], &h)? - at([1.0, 0.0, -1.0], &h)? - at([-1.0, 0.0, 1.0], &h)?
                + at([-1.0, 0.0, -1.0], &h)?;
            rows[6].push(mixed / (h2.clone() * 4u32));
        }
    }
    let best = |r: &[Float]| richardson(r).0;
    Ok(Partials {
        f1: best(&rows[0]),
        f2: best(&rows[1]),
        f11: best(&rows[2]),
        f22: best(&rows[3]),
        f1111: best(&rows[4]),
        f3: cubic.then(|| best(&rows[5])),
        f13: cubic.then(|| best(&rows[6])),
    })
}

impl Partials {
    fn export(&self) -> LocusPartials {
        LocusPartials {
            f1: self.f1.to_f64(),
            f2: self.f2.to_f64(),
            f11: self.f11.to_f64(),
            f22: self.f22.to_f64(),
            f1111: self.f1111.to_f64(),
            f3: self.f3.as_ref().map(Float::to_f64),
            f13: self.f13.as_ref().map(Float::to_f64),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VirasoroReport {
    pub weight: WeightSpec,
    pub n: usize,
    pub x: f64,
    pub stencil: Stencil,
    /// residual of the row coming from the m = -1 constraint
    pub v_minus1: f64,
    /// residual of the m = 0 row; absent when the t3 deformation diverges
    pub v0: Option<f64>,
    pub partials: LocusPartials,
}

/// Substitutes finite-difference partials of log tau into the two locus
/// equations obtained from the Virasoro constraints.
pub fn virasoro_locus_check(tau: &TauEvaluator, x: f64, stencil: Stencil) -> Result<VirasoroReport> {
    let bits = tau.bits();
    let xf = tau.float(x);
    let d = partials(tau, &xf, stencil)?;
    let ld = tau.weight().log_derivative();
    let [a0, a1, a2] = ld.a;
    let [b0, b1, b2] = ld.b;
    let n = tau.n() as f64;
    let v_minus1 = Float::with_val(bits, n * (a0 * x + a1 * n - b0))
        + Float::with_val(bits, &d.f1 * (a1 * x + 2.0 * n * a2 - b1))
        + Float::with_val(bits, &d.f2 * (a2 * x - b2));
    let v0 = d.f3.as_ref().map(|f3| {
        let f1 = &d.f1;
        (Float::with_val(bits, a0 * n * n)
            + Float::with_val(bits, f1 * (a0 * x + 2.0 * n * a1 - b0))
            + Float::with_val(bits, f1.square_ref()) * a2
            + Float::with_val(bits, &d.f11 * a2)
            + Float::with_val(bits, &d.f2 * (a1 * x + 2.0 * n * a2 - b1))
            + Float::with_val(bits, f3 * (a2 * x - b2)))
        .to_f64()
    });
    Ok(VirasoroReport {
        weight: tau.weight().clone(),
        n: tau.n(),
        x,
        stencil,
        v_minus1: v_minus1.to_f64(),
        v0,
        partials: d.export(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KpReport {
    pub n: usize,
    pub x: f64,
    pub stencil: Stencil,
    pub residual: f64,
    pub partials: LocusPartials,
}

/// F1111 + 3 F22 - 4 F13 + 6 F11^2 at t = (x, 0, 0).
pub fn kp_residual_check(tau: &TauEvaluator, x: f64, stencil: Stencil) -> Result<KpReport> {
    let bits = tau.bits();
    let xf = tau.float(x);
    let d = partials(tau, &xf, stencil)?;
    let f13 = d.f13.clone().ok_or_else(|| {
        crate::error::Error::DivergentIntegral("KP needs the t3 deformation, which diverges for this weight".into())
    })?;
    let r = Float::with_val(bits, &d.f1111) + Float::with_val(bits, &d.f22 * 3u32) - f13 * 4u32
        + Float::with_val(bits, d.f11.square_ref()) * 6u32;
    Ok(KpReport { n: tau.n(), x, stencil, residual: r.to_f64().abs(), partials: d.export() })
}

/// KP residuals for steps h, h/2, ..., h/2^halvings.
pub fn kp_step_study(tau: &TauEvaluator, x: f64, stencil: Stencil, halvings: u32) -> Result<Vec<KpReport>> {
    let mut s = stencil;
    let mut out = Vec::new();
    for _ in 0..=halvings {
        out.push(kp_residual_check(tau, x, s)?);
        s = s.halved();
    }
    Ok(out)
}
