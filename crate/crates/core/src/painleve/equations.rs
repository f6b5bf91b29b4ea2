use super::poly::Poly;
use super::sampled::SampledFunction;
use crate::error::{Error, Result};
use crate::tau::LogDerivative;
use rug::Float;
use serde::{Deserialize, Serialize};

/// An equation together with the coefficient data it needs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "equation", rename_all = "kebab-case")]
pub enum OdeResidualSpec {
    /// f''' + (P'/P) f'' + (6/P) f'^2 - (4P'/P^2) f f' + (P''/P^2) f^2
    ///   + (4Q/P^2) f' - (2Q'/P^2) f + 2R/P^2
    MasterChazy { p: Poly, q: Poly, r: Poly },
    /// f''^2 + (4/P^2)[(P f'^2 + Q f' + R) f' - (P' f'^2 + Q' f' + R') f
    ///   + (P'' f' + Q'') f^2 / 2 - P''' f^3 / 6 + delta]
    CosgroveIntegral { p: Poly, q: Poly, r: Poly, delta: f64 },
    /// Third-order equation for g = d/dx log tau_n of a weight with
    /// -rho'/rho = (b0 + b1 z + b2 z^2)/(a0 + a1 z + a2 z^2).
    ThirdOrderG { coefficients: LogDerivative, n: u32 },
    /// x^2 u''' + x u'' + 6x u'^2 - 4u u' + 4Q u' - 2Q' u + 2R
    #[serde(alias = "pV-u")]
    PvU { p: u32, q: u32, n: u32 },
    /// h''' + 6h'^2 - 4(s^2 + 2(a - n)) h' + 4s h - 8a n
    #[serde(alias = "pIV-h")]
    PivH { a: f64, n: u32 },
    /// Chazy form with P = s, 4Q = -s^2 + 2s(2n + a - b) - (a + b)^2,
    /// 2R = -b n (s + a + b)
    #[serde(alias = "pV-k")]
    PvK { a: f64, b: f64, n: u32 },
    /// h''' + 6h'^2 - 4(y^2 + 2(q - 2p)) h' + 4y h - 8(q - p) p
    #[serde(alias = "pIV-h-limit")]
    PivHLimit { p: u32, q: u32 },
    /// Cosgrove form with P = y, 4Q = -y^2 + 2y(2n + alpha - beta) - (alpha + beta)^2,
    /// 2R = -beta n (alpha + beta + y); `constant` plays the role of delta.
    #[serde(alias = "pV-f")]
    PvF { alpha: f64, beta: f64, n: u32, constant: f64 },
}

impl OdeResidualSpec {
    /// The first-integral form for f with the stated constant -beta^2 n^2 / 4.
    pub fn pv_f(alpha: f64, beta: f64, n: u32) -> Self {
        let nf = f64::from(n);
        OdeResidualSpec::PvF { alpha, beta, n, constant: -0.25 * beta * beta * nf * nf }
    }

    pub fn id(&self) -> &'static str {
        match self {
            OdeResidualSpec::MasterChazy { .. } => "master-chazy",
            OdeResidualSpec::CosgroveIntegral { .. } => "cosgrove-integral",
            OdeResidualSpec::ThirdOrderG { .. } => "third-order-g",
            OdeResidualSpec::PvU { .. } => "pV-u",
            OdeResidualSpec::PivH { .. } => "pIV-h",
            OdeResidualSpec::PvK { .. } => "pV-k",
            OdeResidualSpec::PivHLimit { .. } => "pIV-h-limit",
            OdeResidualSpec::PvF { .. } => "pV-f",
        }
    }

    pub fn required_order(&self) -> usize {
        match self {
            OdeResidualSpec::CosgroveIntegral { .. } | OdeResidualSpec::PvF { .. } => 2,
            _ => 3,
        }
    }

    /// Chazy-class polynomials (P, Q, R) where the equation has that shape.
    pub fn chazy_polynomials(&self) -> Option<(Poly, Poly, Poly)> {
        match self {
            OdeResidualSpec::MasterChazy { p, q, r } | OdeResidualSpec::CosgroveIntegral { p, q, r, .. } => {
                Some((p.clone(), q.clone(), r.clone()))
            }
            OdeResidualSpec::PvK { a, b, n } => Some(pv_polynomials(*a, *b, *n)),
            OdeResidualSpec::PvF { alpha, beta, n, .. } => Some(pv_polynomials(*alpha, *beta, *n)),
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        let degrees_ok = |p: &Poly, q: &Poly, r: &Poly| {
            p.degree().unwrap_or(0) <= 3 && q.degree().unwrap_or(0) <= 2 && r.degree().unwrap_or(0) <= 1
        };
        match self {
            OdeResidualSpec::MasterChazy { p, q, r } | OdeResidualSpec::CosgroveIntegral { p, q, r, .. } => {
                if p.degree().is_none() {
                    return Err(Error::InvalidParameter("P must be nonzero".into()));
                }
                if !degrees_ok(p, q, r) {
                    return Err(Error::InvalidParameter("deg P <= 3, deg Q <= 2, deg R <= 1 required".into()));
                }
            }
            OdeResidualSpec::PvU { p, q, n } => {
                if !(p <= q && q <= n) {
                    return Err(Error::ParameterOrder(format!("need p <= q <= n, got p={p}, q={q}, n={n}")));
                }
            }
            OdeResidualSpec::PivHLimit { p, q }
                if p > q => {
                    return Err(Error::ParameterOrder(format!("need p <= q, got p={p}, q={q}")));
                }
            _ => {}
        }
        Ok(())
    }
}

/// (P, Q, R) = (y, [-y^2 + 2y(2n + a - b) - (a + b)^2]/4, -b n (a + b + y)/2).
pub fn pv_polynomials(a: f64, b: f64, n: u32) -> (Poly, Poly, Poly) {
    let nf = f64::from(n);
    let p = Poly::new(&[0.0, 1.0]);
    let q = Poly::new(&[-(a + b) * (a + b) / 4.0, (2.0 * nf + a - b) / 2.0, -0.25]);
    let r = Poly::new(&[-b * nf * (a + b) / 2.0, -b * nf / 2.0]);
    (p, q, r)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub equation: String,
    pub parameters: OdeResidualSpec,
    pub provenance: String,
    pub grid: Vec<f64>,
    pub per_point: Vec<f64>,
    pub max_residual: f64,
}

/// Substitutes the sampled jets into the left-hand side of the equation.
pub fn residual(spec: &OdeResidualSpec, f: &SampledFunction) -> Result<ResidualReport> {
    spec.validate()?;
    let required = spec.required_order();
    if f.order() < required {
        return Err(Error::InsufficientDerivativeOrder { required, available: f.order() });
    }
    let per_point = f
        .grid
        .iter()
        .zip(&f.jets)
        .map(|(x, jet)| residual_at(spec, x, jet).to_f64())
        .collect::<Vec<_>>();
    let max_residual = per_point.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    Ok(ResidualReport {
        equation: spec.id().to_string(),
        parameters: spec.clone(),
        provenance: f.provenance.clone(),
        grid: f.grid_f64(),
        per_point,
        max_residual,
    })
}

/// Left-hand side at one abscissa; `jet` holds f, f', f'', (f''').
pub fn residual_at(spec: &OdeResidualSpec, x: &Float, jet: &[Float]) -> Float {
    let bits = x.prec();
    let c = |v: f64| Float::with_val(bits, v);
    match spec {
        OdeResidualSpec::MasterChazy { p, q, r } => chazy(p, q, r, x, jet),
        OdeResidualSpec::PvK { .. } => {
            let (p, q, r) = spec.chazy_polynomials().expect("chazy form");
            chazy(&p, &q, &r, x, jet)
        }
        OdeResidualSpec::CosgroveIntegral { p, q, r, delta } => cosgrove(p, q, r, *delta, x, jet),
        OdeResidualSpec::PvF { constant, .. } => {
            let (p, q, r) = spec.chazy_polynomials().expect("chazy form");
            cosgrove(&p, &q, &r, *constant, x, jet)
        }
        OdeResidualSpec::PivH { a, n } => {
            let (h, h1, h3) = (&jet[0], &jet[1], &jet[3]);
            let k = Float::with_val(bits, x.square_ref()) + c(2.0 * (a - f64::from(*n)));
            Float::with_val(bits, h3) + Float::with_val(bits, h1.square_ref()) * 6u32 - k * h1 * 4u32
                + Float::with_val(bits, x * h) * 4u32
                - c(8.0 * a * f64::from(*n))
        }
        OdeResidualSpec::PivHLimit { p, q } => {
            let (p, q) = (f64::from(*p), f64::from(*q));
            let (h, h1, h3) = (&jet[0], &jet[1], &jet[3]);
            let k = Float::with_val(bits, x.square_ref()) + c(2.0 * (q - 2.0 * p));
            Float::with_val(bits, h3) + Float::with_val(bits, h1.square_ref()) * 6u32 - k * h1 * 4u32
                + Float::with_val(bits, x * h) * 4u32
                - c(8.0 * (q - p) * p)
        }
        OdeResidualSpec::PvU { p, q, n } => {
            let (p, q, n) = (f64::from(*p), f64::from(*q), f64::from(*n));
            // 4Q and 2R as polynomials in x
            let q4 = Poly::new(&[-(n - 2.0 * p).powi(2), 2.0 * (n + 2.0 * (p - q)), -1.0]);
            let r2 = Poly::new(&[p * (p - q) * (n - 2.0 * p), p * (p - q)]);
            let (u, u1, u2, u3) = (&jet[0], &jet[1], &jet[2], &jet[3]);
            let x2 = Float::with_val(bits, x.square_ref());
            x2 * u3 + Float::with_val(bits, x * u2) + Float::with_val(bits, u1.square_ref()) * x * 6u32
                - Float::with_val(bits, u * u1) * 4u32
                + q4.eval(x) * u1
                - q4.derivative().eval(x) * u / 2u32
                + r2.eval(x)
        }
        OdeResidualSpec::ThirdOrderG { coefficients, n } => third_order_g(coefficients, *n, x, jet),
    }
}

fn chazy(p: &Poly, q: &Poly, r: &Poly, x: &Float, jet: &[Float]) -> Float {
    let bits = x.prec();
    let [pv, p1, p2, _] = p.jet(x);
    let [qv, q1, _, _] = q.jet(x);
    let rv = r.eval(x);
    let (f, f1, f2, f3) = (&jet[0], &jet[1], &jet[2], &jet[3]);
    let pp = Float::with_val(bits, pv.square_ref());
    let ff1 = Float::with_val(bits, f * f1);
    Float::with_val(bits, f3) + Float::with_val(bits, &p1 * f2) / &pv + Float::with_val(bits, f1.square_ref()) * 6u32 / &pv
        - p1 * ff1 * 4u32 / &pp
        + p2 * Float::with_val(bits, f.square_ref()) / &pp
        + qv * f1 * 4u32 / &pp
        - q1 * f * 2u32 / &pp
        + rv * 2u32 / &pp
}

/// Value of the Cosgrove first-integral expression.
pub(crate) fn cosgrove(p: &Poly, q: &Poly, r: &Poly, delta: f64, x: &Float, jet: &[Float]) -> Float {
    let bits = x.prec();
    let [pv, p1, p2, p3] = p.jet(x);
    let [qv, q1, q2, _] = q.jet(x);
    let [rv, r1, _, _] = r.jet(x);
    let (f, f1, f2) = (&jet[0], &jet[1], &jet[2]);
    let f1sq = Float::with_val(bits, f1.square_ref());
    let fsq = Float::with_val(bits, f.square_ref());
    let first = (Float::with_val(bits, &pv * &f1sq) + Float::with_val(bits, &qv * f1) + &rv) * f1;
    let second = (Float::with_val(bits, &p1 * &f1sq) + Float::with_val(bits, &q1 * f1) + &r1) * f;
    let third = (Float::with_val(bits, &p2 * f1) + &q2) * &fsq / 2u32;
    let fourth = p3 * fsq * f / 6u32;
    let bracket = first - second + third - fourth + delta;
    Float::with_val(bits, f2.square_ref()) + bracket * 4u32 / Float::with_val(bits, pv.square_ref())
}

fn third_order_g(c: &LogDerivative, n: u32, x: &Float, jet: &[Float]) -> Float {
    let bits = x.prec();
    let [a0, a1, a2] = c.a;
    let [b0, b1, b2] = c.b;
    let n = f64::from(n);
    let p2 = Poly::new(&[
        -4.0 * a2 * a2 * n * n - 4.0 * (2.0 * a1 * b2 - a2 * b1) * n + 4.0 * b0 * b2 - b1 * b1 + 2.0 * a2 * a2,
        2.0 * (2.0 * a1 * a2 * n - 2.0 * a0 * b2 + a1 * b1 - 2.0 * a2 * b0),
        4.0 * a0 * a2 - a1 * a1,
    ]);
    let p1 = Poly::new(&[
        -4.0 * a2.powi(3) * n * n + (-6.0 * a1 * a2 * b2 + 4.0 * a2 * a2 * b1) * n - 2.0 * a0 * b2 * b2
            + a1 * b1 * b2
            + 2.0 * a2 * b0 * b2
            - a2 * b1 * b1,
        2.0 * a1 * a2 * a2 * n + 2.0 * a0 * a2 * b2 - a1 * a1 * b2 + a1 * a2 * b1 - 2.0 * a2 * a2 * b0,
    ]);
    let q1 = Poly::new(&[
        2.0 * a1 * a2 * a2 * n * n + (2.0 * a1 * a1 * b2 - a1 * a2 * b1 - 2.0 * a2 * a2 * b0) * n + a0 * b1 * b2
            - 2.0 * a1 * b0 * b2
            + a2 * b0 * b1,
        2.0 * a0 * a2 * a2 * n - a1 * a1 * a2 * n + a0 * a1 * b2 - 2.0 * a0 * a2 * b1 + a1 * a2 * b0,
    ]);
    let (g, g1, g2, g3) = (&jet[0], &jet[1], &jet[2], &jet[3]);
    let d = Float::with_val(bits, a2) * x - b2;
    let d2 = Float::with_val(bits, d.square_ref());
    let d3 = Float::with_val(bits, &d2 * &d);
    let gg1 = Float::with_val(bits, g * g1);
    Float::with_val(bits, g3) + Float::with_val(bits, g1.square_ref()) * 6u32
        + (Float::with_val(bits, g2) + gg1 * 2u32) * (4.0 * a2) / &d
        + (Float::with_val(bits, g.square_ref()) * (2.0 * a2 * a2) + p2.eval(x) * g1) / d2
        + (p1.eval(x) * g - q1.eval(x) * n) / d3
}
