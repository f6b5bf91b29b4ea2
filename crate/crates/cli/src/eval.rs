use crate::config::{config_error, parse_grid_f64, parse_parts, OrDomain, RunConfig};
use crate::output::{float, rational, write_report};
use anyhow::Result;
use rsk_painleve::combinatorics::Partition;
use rsk_painleve::hp::Precision;
use rsk_painleve::measures::{chi2_moment, poissonized_measure, word_measure, WordMeasureParams};
use rsk_painleve::tau::*;
use rug::Float;
use serde::Serialize;
use std::time::SystemTime;

pub const QUANTITIES: [&str; 8] = ["tau", "g", "h", "k", "moment", "hermitian-ratio", "measure", "chi2-moment"];

/// Digits held back when printing floats, so that values are shown only to
/// the accuracy actually carried.
const PRINT_MARGIN: u32 = 5;

#[derive(Serialize)]
struct Value {
    #[serde(skip_serializing_if = "Option::is_none")]
    at: Option<f64>,
    value: String,
}

#[derive(Serialize)]
struct EvalReport<'a> {
    quantity: &'a str,
    exact: bool,
    values: Vec<Value>,
}

pub fn run(config: &RunConfig) -> Result<bool> {
    let started = SystemTime::now();
    let precision = Precision::digits(config.digits);
    let shown = config.digits.saturating_sub(PRINT_MARGIN).max(8);
    let params = &config.params;
    let show = |v: &Float| float(v, shown);
    let grid = |spec: &Option<String>, default: &str| parse_grid_f64(spec.as_deref().unwrap_or(default));
    let single_n = || -> Result<usize> {
        match &params.n {
            None => Ok(1),
            Some(s) => s.parse().map_err(|_| config_error(format!("--n must be a single integer here, got {s:?}"))),
        }
    };

    let name = config.target.as_str();
    let (exact, values): (bool, Vec<Value>) = match name {
        "chi2-moment" => {
            let (m, k) = (params.m.unwrap_or(1), params.k.unwrap_or(1));
            (true, vec![Value { at: None, value: rational(&chi2_moment(m, k).domain()?) }])
        }
        "measure" => {
            let p = params.p.unwrap_or(1);
            let parts = parse_parts(params.lambda.as_deref().unwrap_or(""))?;
            let lambda = Partition::new(&parts).domain()?;
            if lambda.len() > p as usize {
                return Err(config_error(format!(
                    "constraint violated: lambda has at most p rows (got {} rows, p={p})",
                    lambda.len()
                )));
            }
            match &params.x {
                Some(x) => {
                    let xs = parse_grid_f64(x)?;
                    let values = xs
                        .iter()
                        .map(|&x| {
                            let v = poissonized_measure(&lambda, p, x)?;
                            Ok(Value { at: Some(x), value: format!("{v:e}") })
                        })
                        .collect::<rsk_painleve::Result<Vec<_>>>()
                        .domain()?;
                    (false, values)
                }
                None => {
                    let ell = params.ell.unwrap_or(lambda.weight());
                    let v = word_measure(&lambda, WordMeasureParams::new(p, ell).domain()?).domain()?;
                    (true, vec![Value { at: None, value: rational(&v) }])
                }
            }
        }
        "hermitian-ratio" => {
            let (p, q) = params.p_q(1, 1)?;
            let ss = grid(&params.s, "0")?;
            let values = ss
                .iter()
                .map(|&s| Ok(Value { at: Some(s), value: show(&hermitian_ratio(p as usize, q as usize, s, precision)?) }))
                .collect::<rsk_painleve::Result<Vec<_>>>()
                .domain()?;
            (false, values)
        }
        "tau" | "g" | "moment" => {
            let weight: WeightSpec = match &params.weight {
                Some(w) => serde_json::from_str(w).map_err(|e| config_error(format!("bad --weight: {e}")))?,
                None => WeightSpec::JacobiExp { a: 0.0, b: 1.0, alpha: 0.0, beta: 0.0, gamma: 0.0 },
            };
            weight.validate().domain()?;
            let xs = grid(&params.x, "0")?;
            let bits = precision.bits();
            let values = if name == "moment" {
                let k = params.k.unwrap_or(0) as usize;
                xs.iter()
                    .map(|&x| Ok(Value { at: Some(x), value: show(&moment(&weight, k, x, precision)?) }))
                    .collect::<rsk_painleve::Result<Vec<_>>>()
                    .domain()?
            } else {
                let tau = TauEvaluator::new(weight, single_n()?, precision).domain()?;
                let order = params.order.unwrap_or(0);
                if name == "g" && order > 3 {
                    return Err(config_error(format!("constraint violated: order <= 3 (got {order})")));
                }
                xs.iter()
                    .map(|&x| {
                        let xf = Float::with_val(bits, x);
                        let v = if name == "tau" {
                            tau.tau(&xf)?
                        } else {
                            tau.log_deriv_g(&xf, order, DerivativeRoute::Exact)?
                        };
                        Ok(Value { at: Some(x), value: show(&v) })
                    })
                    .collect::<rsk_painleve::Result<Vec<_>>>()
                    .domain()?
            };
            (false, values)
        }
        "h" | "k" => {
            let n = single_n()?;
            let ss = grid(&params.s, "1")?;
            let bits = precision.bits();
            let interval = params.interval.as_deref();
            let values = if name == "h" {
                let interval = match interval.unwrap_or("below-s") {
                    "below-s" => HInterval::BelowS,
                    "above-s" => HInterval::AboveS,
                    "whole" => HInterval::Whole,
                    other => return Err(config_error(format!("unknown interval {other:?} for h"))),
                };
                let h = PainleveH::new(n, params.a.unwrap_or(0.0), interval, precision).domain()?;
                ss.iter()
                    .map(|&s| Ok(Value { at: Some(s), value: show(&h.value(&Float::with_val(bits, s))?) }))
                    .collect::<rsk_painleve::Result<Vec<_>>>()
                    .domain()?
            } else {
                let interval = match interval.unwrap_or("zero-to-s") {
                    "zero-to-s" => KInterval::ZeroToS,
                    "above-s" => KInterval::AboveS,
                    "positive-half-line" => KInterval::PositiveHalfLine,
                    other => return Err(config_error(format!("unknown interval {other:?} for k"))),
                };
                let k = PainleveK::new(n, params.a.unwrap_or(0.0), params.b.unwrap_or(0.0), interval, precision).domain()?;
                ss.iter()
                    .map(|&s| Ok(Value { at: Some(s), value: show(&k.value(&Float::with_val(bits, s))?) }))
                    .collect::<rsk_painleve::Result<Vec<_>>>()
                    .domain()?
            };
            (false, values)
        }
        other => return Err(config_error(format!("unknown quantity {other:?}; expected one of {QUANTITIES:?}"))),
    };

    for v in &values {
        match (values.len(), v.at) {
            (1, _) | (_, None) => println!("{}", v.value),
            (_, Some(at)) => println!("{at}\t{}", v.value),
        }
    }
    write_report(config, &format!("eval-{name}"), &EvalReport { quantity: name, exact, values }, started)?;
    Ok(true)
}
