use crate::config::{config_error, parse_grid_f64, parse_grid_u32, OrDomain, RunConfig};
use crate::output::{rational, write_report, write_text};
use anyhow::Result;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rsk_painleve::asymptotics::*;
use rsk_painleve::combinatorics::{rsk_shape, Word};
use rsk_painleve::hp::Precision;
use rsk_painleve::measures::rational_string::format_rational;
use serde::Serialize;
use serde_json::json;
use std::time::SystemTime;

pub const STUDIES: [&str; 5] = ["theorem12", "corollary13", "theorem14", "scaling", "prop51"];

/// Word-length bound for the exhaustive word check attached to the word study.
const WORD_BOUND: usize = 14;

pub fn run(config: &RunConfig) -> Result<bool> {
    let started = SystemTime::now();
    let precision = Precision::digits(config.digits);
    let params = &config.params;
    let name = config.target.as_str();
    let (study, result, lines): (ConvergenceStudy, serde_json::Value, Vec<String>) = match name {
        "theorem12" => {
            let (p, q) = params.p_q(2, 2)?;
            let k = params.k.unwrap_or(0);
            let ns = parse_grid_u32(params.n.as_deref().unwrap_or("10:40:10"))?;
            if ns[0] <= q {
                return Err(config_error(format!("constraint violated: n >= q + 1 (got q={q}, n={})", ns[0])));
            }
            let s = chi_square_moment_study(p, q, k, &ns).domain()?;
            let mut lines = vec![format!(
                "limit constant = {} * {}",
                rational(&s.limit_rational),
                s.limit_algebraic
            )];
            if let Some(exact) = s.exact_limit_attained() {
                lines.push(format!("exact limit attained: {exact}"));
            }
            (s.study.clone(), serde_json::to_value(&s)?, lines)
        }
        "corollary13" => {
            let (p, _) = params.p_q(2, 2)?;
            let k = params.k.unwrap_or(1);
            let ns = parse_grid_u32(params.big_n.as_deref().unwrap_or("3"))?;
            let s = word_event_study(p, k, &ns, WORD_BOUND).domain()?;
            let mut lines: Vec<String> = ns
                .iter()
                .zip(&s.probabilities)
                .map(|(n, pr)| format!("P(lambda_{p} >= {n}) over words of length {} = {}", n * p + k, format_rational(pr)))
                .collect();
            for c in &s.word_checks {
                lines.push(format!(
                    "N={}: {} of {} words contain the rectangle, {} mismatches with the subsequence event",
                    c.big_n, c.containing, c.words, c.mismatches
                ));
            }
            let mut value = serde_json::to_value(&s)?;
            if let Some(seed) = config.seed {
                let samples = params.samples.unwrap_or(20_000);
                let mc: Vec<_> = ns.iter().map(|&n| monte_carlo(p, n, k, samples, seed)).collect();
                for m in &mc {
                    lines.push(format!(
                        "N={}: Monte Carlo frequency {:.5} +- {:.5} ({} samples, seed {seed})",
                        m.big_n, m.frequency, m.std_error, m.samples
                    ));
                }
                value["monte_carlo"] = serde_json::to_value(&mc)?;
            }
            let checks_ok = s.word_checks.iter().all(|c| c.mismatches == 0);
            if !checks_ok {
                lines.push("word-by-word identity FAILED".into());
            }
            (s.study.clone(), value, lines)
        }
        "theorem14" => {
            let (p, q) = params.p_q(1, 1)?;
            let s = parse_grid_f64(params.s.as_deref().unwrap_or("0"))?;
            if s.len() != 1 {
                return Err(config_error("theorem14 takes a single --s value"));
            }
            let grid = match (&params.n, &params.x) {
                (Some(_), Some(_)) => return Err(config_error("give either --n or --x, not both")),
                (Some(n), None) => IntensityGrid::Integers(parse_grid_u32(n)?),
                (None, x) => IntensityGrid::Targets(parse_grid_f64(x.as_deref().unwrap_or("10,25,50,100"))?),
            };
            let st = poissonized_limit_study(p, q, s[0], &grid, precision).domain()?;
            let lines = vec![format!("limit (Hermitian ratio / p!) = {}", st.points[0].rhs)];
            (st.clone(), serde_json::to_value(&st)?, lines)
        }
        "scaling" => {
            let (p, q) = params.p_q(1, 2)?;
            let ns = parse_grid_u32(params.n.as_deref().unwrap_or("50,100,200"))?;
            let s_grid = parse_grid_f64(params.s.as_deref().unwrap_or("-1:1:0.25"))?;
            let st = scaling_limit_check(p, q, &ns, &s_grid, precision).domain()?;
            let lines = vec![
                format!("limit residual (fourth Painleve form) = {:e}", st.limit_residual.max_residual),
                format!("sup gaps decreasing: {}", st.study.gaps_decreasing),
            ];
            (st.study.clone(), serde_json::to_value(&st)?, lines)
        }
        "prop51" => {
            let p = params.p.unwrap_or(1);
            let xs = parse_grid_f64(params.x.as_deref().unwrap_or("10,20,40,80"))?;
            let s = parse_grid_f64(params.s.as_deref().unwrap_or("0"))?[0];
            let function = match params.function.as_deref().unwrap_or("indicator") {
                "one" => TestFunction::One,
                "indicator" => TestFunction::Indicator { s },
                "strip" => TestFunction::StripPolynomial { s, power: params.k.unwrap_or(1) },
                other => return Err(config_error(format!("unknown test function {other:?}; expected one, indicator or strip"))),
            };
            let reports = xs.iter().map(|&x| poissonized_sanity(p, x, function)).collect::<rsk_painleve::Result<Vec<_>>>().domain()?;
            let points = reports.iter().map(|r| StudyPoint::absolute(r.x, r.lhs, r.rhs)).collect();
            let st = ConvergenceStudy::new("ensemble-comparison", json!({"p": p, "function": function}), points).domain()?;
            let lines = vec![format!("ensemble expectation = {}", reports[0].rhs)];
            (st.clone(), json!({"study": st, "comparisons": reports}), lines)
        }
        other => return Err(config_error(format!("unknown study {other:?}; expected one of {STUDIES:?}"))),
    };

    let path = write_report(config, &format!("study-{name}"), &result, started)?;
    let csv_name = format!("study-{name}.csv");
    write_text(&config.out, &csv_name, &study.to_csv_string())?;
    let last = study.points.last().expect("studies are nonempty");
    let verdict_ok = study.points.len() < 2 || study.improves;
    let mut summary = lines;
    summary.push(format!("final ratio = {}, final gap = {:e}", last.ratio, last.gap));
    summary.push(format!(
        "trend: {}",
        match (study.points.len(), study.improves) {
            (1, _) => "single point",
            (_, true) => "gap improves",
            (_, false) => "gap does not improve (FAIL)",
        }
    ));
    let words_ok = result.get("word_checks").and_then(|v| v.as_array()).is_none_or(|checks| {
        checks.iter().all(|c| c["mismatches"].as_u64() == Some(0))
    });
    let text = summary.join("\n") + "\n";
    write_text(&config.out, &format!("study-{name}.txt"), &text)?;
    print!("{text}");
    println!("report: {}", path.display());
    println!("csv: {}", config.out.join(csv_name).display());
    Ok(verdict_ok && words_ok)
}

#[derive(Serialize)]
struct MonteCarlo {
    big_n: u32,
    samples: u64,
    seed: u64,
    frequency: f64,
    std_error: f64,
}

fn monte_carlo(p: u32, big_n: u32, k: u32, samples: u64, seed: u64) -> MonteCarlo {
    let mut rng = StdRng::seed_from_u64(seed);
    let len = (big_n * p + k) as usize;
    let mut hits = 0u64;
    for _ in 0..samples {
        let letters: Vec<u32> = (0..len).map(|_| rng.gen_range(1..=p)).collect();
        let shape = rsk_shape(&Word::new(letters, p).expect("letters drawn in range"));
        if shape.len() == p as usize && shape.part(p as usize - 1) >= big_n {
            hits += 1;
        }
    }
    let f = hits as f64 / samples.max(1) as f64;
    MonteCarlo { big_n, samples, seed, frequency: f, std_error: (f * (1.0 - f) / samples.max(1) as f64).sqrt() }
}
