use crate::config::{config_error, RunConfig};
use crate::output::write_report;
use anyhow::Result;
use rsk_painleve::asymptotics::*;
use rsk_painleve::combinatorics::*;
use rsk_painleve::diff::{deformation_stencil, Stencil};
use rsk_painleve::hp::Precision;
use rsk_painleve::measures::*;
use rsk_painleve::painleve::*;
use rsk_painleve::tau::*;
use rug::{Float, Rational};
use serde::Serialize;
use std::time::SystemTime;

pub const SUITES: [&str; 5] = ["combinatorics", "measures", "tau", "painleve", "asymptotics"];

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    suite: &'a str,
    passed: bool,
    checks: &'a [CheckRecord],
}

pub struct Ctx {
    pub precision: Precision,
    pub p: u32,
    pub q: u32,
    pub n: u32,
}

type Check = (&'static str, fn(&Ctx) -> Result<(bool, String)>);

fn checks(suite: &str) -> Vec<Check> {
    match suite {
        "combinatorics" => vec![
            ("rsk-shape-matches-greene-statistics", rsk_greene),
            ("hook-formula-matches-vandermonde-form", hook_forms),
            ("schur-dimension-forms-agree", schur_forms),
            ("partition-counts", partition_counts),
        ],
        "measures" => vec![
            ("word-measure-normalized", normalization),
            ("shape-frequencies-equal-word-measure", shape_frequencies),
            ("strip-series-equals-hypergeometric", strip_series),
            ("chi-square-moment-formula", chi2),
        ],
        "tau" => vec![
            ("gaussian-recurrence-matches-quadrature", recurrence),
            ("selberg-aomoto-mean", selberg),
            ("gaussian-normalization-reading", normalization_reading),
            ("scalar-hermitian-ratio-is-half", scalar_ratio),
        ],
        "painleve" => vec![
            ("third-order-equation-gaussian-exact", third_order),
            ("piv-residual-hermite-integral", piv),
            ("pv-residual-laguerre-integral", pv),
            ("pv-series-residual-exact", pv_series),
            ("jacobi-f-first-integral", jacobi_f),
            ("virasoro-locus-rows", virasoro),
            ("kp-residual-and-step-halving", kp),
        ],
        "asymptotics" => vec![
            ("single-row-moments-exact", single_row),
            ("two-row-moments-trend", two_row),
            ("word-event-desk-instance", word_event),
            ("word-event-identity", word_identity),
            ("poissonized-scalar-trend", poissonized),
            ("scaling-limit-trend", scaling),
            ("stirling-forms", stirling),
        ],
        _ => Vec::new(),
    }
}

pub fn run(config: &RunConfig) -> Result<bool> {
    let started = SystemTime::now();
    let suites: Vec<&str> = match config.target.as_str() {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        other => return Err(config_error(format!("unknown suite {other:?}; expected one of {SUITES:?} or all"))),
    };
    let (p, q) = config.params.p_q(2, 3)?;
    let n = match &config.params.n {
        Some(s) => s.parse::<u32>().map_err(|_| config_error(format!("--n must be a single integer for verify, got {s:?}")))?,
        None => 5.max(q),
    };
    if n < q {
        return Err(config_error(format!("constraint violated: n >= q (got q={q}, n={n})")));
    }
    let ctx = Ctx { precision: Precision::digits(config.digits), p, q, n };
    let mut records = Vec::new();
    for suite in &suites {
        for (name, f) in checks(suite) {
            let (passed, detail) = match f(&ctx) {
                Ok(v) => v,
                Err(e) => (false, format!("error: {e:#}")),
            };
            println!("[{}] {suite}/{name}: {detail}", if passed { "PASS" } else { "FAIL" });
            records.push(CheckRecord { suite: suite.to_string(), name: name.to_string(), passed, detail });
        }
    }
    let passed = records.iter().all(|r| r.passed);
    let report = VerifyReport { suite: &config.target, passed, checks: &records };
    let path = write_report(config, &format!("verify-{}", config.target), &report, started)?;
    let failed: Vec<String> = records.iter().filter(|r| !r.passed).map(|r| format!("{}/{}", r.suite, r.name)).collect();
    let summary = if passed {
        format!("verify {}: all {} checks passed", config.target, records.len())
    } else {
        format!("verify {}: {} of {} checks failed: {}", config.target, failed.len(), records.len(), failed.join(", "))
    };
    crate::output::write_text(&config.out, &format!("verify-{}.txt", config.target), &(summary.clone() + "\n"))?;
    println!("{summary}");
    println!("report: {}", path.display());
    Ok(passed)
}

fn ok(cond: bool, detail: impl Into<String>) -> Result<(bool, String)> {
    Ok((cond, detail.into()))
}

fn rsk_greene(_: &Ctx) -> Result<(bool, String)> {
    let mut words = 0u64;
    for p in 1..=3u32 {
        for len in 0..=7usize {
            for index in 0..u64::from(p).pow(len as u32) {
                let w = Word::from_index(index, len, p);
                let shape = rsk_shape(&w);
                let mut acc = 0;
                for k in 1..=p as usize {
                    acc += shape.part(k - 1) as usize;
                    if i_k(&w, k, IkMethod::Exhaustive { bound: 12 })? != acc {
                        return ok(false, format!("i_{k} differs from shape {shape} for {:?}", w.letters()));
                    }
                }
                if d1(&w) != shape.len() {
                    return ok(false, format!("d1 differs from row count for {:?}", w.letters()));
                }
                words += 1;
            }
        }
    }
    ok(true, format!("{words} words"))
}

fn hook_forms(_: &Ctx) -> Result<(bool, String)> {
    let mut count = 0;
    for w in 0..=10 {
        for lam in enumerate_partitions(w, w as usize, None) {
            if count_standard(&lam) != count_standard_vandermonde(&lam) {
                return ok(false, format!("mismatch at {lam}"));
            }
            count += 1;
        }
    }
    ok(true, format!("{count} partitions"))
}

fn schur_forms(_: &Ctx) -> Result<(bool, String)> {
    for w in 0..=8 {
        for lam in enumerate_partitions(w, w as usize, None) {
            for q in 1..=5 {
                let [a, b, c] = schur_at_ones_forms(&lam, q);
                if a != b || b != c {
                    return ok(false, format!("forms disagree at {lam}, q={q}"));
                }
            }
        }
    }
    ok(true, "|lambda| <= 8, q <= 5")
}

fn partition_counts(_: &Ctx) -> Result<(bool, String)> {
    let counts: Vec<usize> = (0..=12).map(|w| enumerate_partitions(w, w as usize, None).count()).collect();
    let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
    ok(counts == expected, format!("{counts:?}"))
}

fn normalization(_: &Ctx) -> Result<(bool, String)> {
    for p in 1..=4u32 {
        for ell in 0..=10u64 {
            let params = WordMeasureParams::new(p, ell)?;
            let mut total = Rational::new();
            for lam in enumerate_partitions(ell, p as usize, None) {
                total += word_measure(&lam, params)?;
            }
            if total != 1 {
                return ok(false, format!("sum {total} for p={p}, ell={ell}"));
            }
        }
    }
    ok(true, "p <= 4, ell <= 10")
}

fn shape_frequencies(_: &Ctx) -> Result<(bool, String)> {
    for p in 1..=3u32 {
        for ell in 0..=6usize {
            let total = u64::from(p).pow(ell as u32);
            let mut counts = std::collections::HashMap::new();
            for index in 0..total {
                *counts.entry(rsk_shape(&Word::from_index(index, ell, p))).or_insert(0u64) += 1;
            }
            for (lam, c) in counts {
                if (c, total) != word_measure(&lam, WordMeasureParams::new(p, ell as u64)?)? {
                    return ok(false, format!("frequency of {lam} for p={p}, ell={ell}"));
                }
            }
        }
    }
    ok(true, "p <= 3, ell <= 6")
}

fn strip_series(ctx: &Ctx) -> Result<(bool, String)> {
    let rep = strip_series_check(StripFunctionalParams::new(ctx.n, ctx.p, ctx.q)?, 6)?;
    ok(
        rep.identity_holds && rep.constant_matches_footnote,
        format!("n={} p={} q={} through order 6, constant {}", ctx.n, ctx.p, ctx.q, rep.fitted_constant),
    )
}

fn chi2(_: &Ctx) -> Result<(bool, String)> {
    let v = chi2_moment(8, 1)?;
    ok(v == 4, format!("E(Z_8/2) = {v}"))
}

fn recurrence(ctx: &Ctx) -> Result<(bool, String)> {
    let w = WeightSpec::GaussianPower { a_exp: 0.0, support: GaussianSupport::PositiveHalfLine };
    let d = Deformation::linear(&Float::with_val(ctx.precision.bits(), 0.7));
    let a = moments(&w, &d, 8, ctx.precision, MomentMethod::Recurrence)?;
    let b = moments(&w, &d, 8, ctx.precision, MomentMethod::Quadrature)?;
    let worst = a.iter().zip(b.iter()).map(|(x, y)| Float::with_val(x.prec(), x - y).abs().to_f64()).fold(0.0, f64::max);
    let tol = 10f64.powi(-(ctx.precision.digits as i32) + 10);
    ok(worst < tol, format!("max difference {worst:e}"))
}

fn selberg(ctx: &Ctx) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for n in 1..=2 {
        for (alpha, beta) in [(0.0, 0.0), (1.0, -0.5), (2.0, 1.0)] {
            let r = selberg_aomoto_mean(n, alpha, beta, 0.0, 1.0, ctx.precision)?;
            worst = worst.max(r.abs_diff);
        }
    }
    ok(worst <= 1e-10, format!("max error {worst:e}"))
}

fn normalization_reading(ctx: &Ctx) -> Result<(bool, String)> {
    for p in 1..=3 {
        let r = gaussian_normalization(p, ctx.precision)?;
        if !matches!(r.matches, NormalizationReading::FactorialsInNumerator | NormalizationReading::Both) {
            return ok(false, format!("p={p}: {:?}", r.matches));
        }
    }
    ok(true, "factorials multiply, p <= 3")
}

fn scalar_ratio(ctx: &Ctx) -> Result<(bool, String)> {
    let v = hermitian_ratio(1, 1, 0.0, ctx.precision)?.to_f64();
    ok((v - 0.5).abs() < 1e-12, format!("{v}"))
}

fn grid(ctx: &Ctx, lo: f64, hi: f64, step: f64) -> Vec<Float> {
    linear_grid(lo, hi, step, ctx.precision.bits())
}

fn third_order(ctx: &Ctx) -> Result<(bool, String)> {
    let bits = ctx.precision.bits();
    let c = |v: f64| Float::with_val(bits, v);
    let g = SampledFunction::from_jets(grid(ctx, -3.0, 3.0, 0.5), |x| Ok(vec![Float::with_val(bits, x / 2u32), c(0.5), c(0.0), c(0.0)]), "x/2")?;
    let coefficients = LogDerivative { a: [0.0, 1.0, 0.0], b: [0.0, 0.0, 2.0] };
    let r = residual(&OdeResidualSpec::ThirdOrderG { coefficients, n: 1 }, &g)?;
    ok(r.max_residual == 0.0, format!("max residual {:e}", r.max_residual))
}

fn piv(ctx: &Ctx) -> Result<(bool, String)> {
    let h = PainleveH::new(1, 0.0, HInterval::BelowS, ctx.precision)?;
    let s = SampledFunction::from_jets(grid(ctx, -2.0, 2.0, 0.25), |s| Ok(h.derivatives(s)?.to_vec()), "h")?;
    let r = residual(&OdeResidualSpec::PivH { a: 0.0, n: 1 }, &s)?;
    let fd = |step: f64| -> Result<f64> {
        let s = SampledFunction::from_values(grid(ctx, -1.0, 1.0, 0.5), |s| h.value(s), Stencil::plain(step), 3, "h")?;
        Ok(residual(&OdeResidualSpec::PivH { a: 0.0, n: 1 }, &s)?.max_residual)
    };
    let (coarse, fine) = (fd(1e-2)?, fd(5e-3)?);
    ok(r.max_residual <= 1e-6 && fine < coarse, format!("exact {:e}; differences {coarse:e} -> {fine:e}", r.max_residual))
}

fn pv(ctx: &Ctx) -> Result<(bool, String)> {
    let k = PainleveK::new(1, 0.0, 0.0, KInterval::ZeroToS, ctx.precision)?;
    let s = SampledFunction::from_jets(grid(ctx, 0.5, 4.0, 0.25), |s| Ok(k.derivatives(s)?.to_vec()), "k")?;
    let r = residual(&OdeResidualSpec::PvK { a: 0.0, b: 0.0, n: 1 }, &s)?;
    ok(r.max_residual <= 1e-6, format!("max residual {:e}", r.max_residual))
}

fn pv_series(ctx: &Ctx) -> Result<(bool, String)> {
    let mut cases = 0;
    for p in 1..=ctx.p.min(2) {
        for q in p..=3 {
            for n in q.max(2)..=5 {
                let rep = pv_series_u(p, q, n, 8)?;
                if !(rep.residual_vanishes() && rep.constant_term_matches && rep.linear_term_matches) {
                    return ok(false, format!("p={p} q={q} n={n}: {:?}", rep.exact_through));
                }
                cases += 1;
            }
        }
    }
    ok(true, format!("{cases} cases, order 8"))
}

fn jacobi_f(ctx: &Ctx) -> Result<(bool, String)> {
    let f = JacobiPvF::new(1, 0.0, 0.0, 0.0, 0.0, 1.0, ctx.precision)?;
    let s = f.sample(grid(ctx, 0.5, 3.0, 0.25))?;
    let r = residual(&OdeResidualSpec::pv_f(0.0, 0.0, 1), &s)?;
    let constants = jacobi_pv_constants(&f)?;
    ok(r.max_residual <= 1e-6 && constants.agree, format!("max residual {:e}; constants agree {}", r.max_residual, constants.agree))
}

fn jacobi00(ctx: &Ctx, n: usize) -> Result<TauEvaluator> {
    let w = WeightSpec::JacobiExp { a: 0.0, b: 1.0, alpha: 0.0, beta: 0.0, gamma: 0.0 };
    Ok(TauEvaluator::new(w, n, ctx.precision)?)
}

fn virasoro(ctx: &Ctx) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for n in 1..=2 {
        let r = virasoro_locus_check(&jacobi00(ctx, n)?, 0.0, deformation_stencil())?;
        worst = worst.max(r.v_minus1.abs()).max(r.v0.map_or(f64::INFINITY, f64::abs));
    }
    ok(worst <= 1e-6, format!("max row residual {worst:e}"))
}

fn kp(ctx: &Ctx) -> Result<(bool, String)> {
    let mut detail = Vec::new();
    let mut good = true;
    for n in 1..=2 {
        let study = kp_step_study(&jacobi00(ctx, n)?, 0.0, deformation_stencil(), 1)?;
        let (a, b) = (study[0].residual, study[1].residual);
        good &= a <= 1e-4 && b * 4.0 <= a;
        detail.push(format!("n={n}: {a:e} -> {b:e}"));
    }
    ok(good, detail.join("; "))
}

fn single_row(_: &Ctx) -> Result<(bool, String)> {
    for q in 1..=5 {
        for k in 0..=5 {
            let ns: Vec<u32> = (q + 1..=30).collect();
            if chi_square_moment_study(1, q, k, &ns)?.exact_limit_attained() != Some(true) {
                return ok(false, format!("q={q} k={k}"));
            }
        }
    }
    ok(true, "n <= 30, q <= 5, k <= 5")
}

fn two_row(_: &Ctx) -> Result<(bool, String)> {
    let mut detail = Vec::new();
    let mut good = true;
    for k in 0..=1 {
        let s = chi_square_moment_study(2, 2, k, &[10, 20, 40])?;
        let pts = &s.study.points;
        good &= pts[2].gap < pts[0].gap && pts[2].gap < 0.25;
        detail.push(format!("k={k}: ratio {:.4} -> {:.4}", pts[0].ratio, pts[2].ratio));
    }
    ok(good, detail.join("; "))
}

fn word_event(_: &Ctx) -> Result<(bool, String)> {
    let pr = word_event_probability(2, 3, 1)?;
    let c = word_event_check(2, 3, 1, 14)?;
    ok(pr == (7, 32) && c.frequency == pr && c.mismatches == 0, format!("P = {pr}, {} of {} words", c.containing, c.words))
}

fn word_identity(_: &Ctx) -> Result<(bool, String)> {
    let mut pairs = 0;
    for p in 2..=3u32 {
        for len in p as usize..=10 {
            let r = word_event_identity(p, len, 12)?;
            if r.mismatches > 0 {
                return ok(false, format!("p={p}, length {len}: {} mismatches", r.mismatches));
            }
            pairs += r.pairs_checked;
        }
    }
    ok(true, format!("{pairs} (word, N, k) triples, length <= 10"))
}

fn poissonized(ctx: &Ctx) -> Result<(bool, String)> {
    let mut detail = Vec::new();
    let mut good = true;
    for s in [-1.0, 0.0, 1.0] {
        let st = poissonized_limit_study(1, 1, s, &IntensityGrid::Targets(vec![25.0, 50.0]), ctx.precision)?;
        good &= st.points[1].gap < 0.05 && st.points[1].gap < st.points[0].gap;
        detail.push(format!("s={s}: {:.3e} -> {:.3e}", st.points[0].gap, st.points[1].gap));
    }
    ok(good, detail.join("; "))
}

fn scaling(ctx: &Ctx) -> Result<(bool, String)> {
    let s_grid: Vec<f64> = (0..=8).map(|i| -1.0 + 0.25 * f64::from(i)).collect();
    let st = scaling_limit_check(1, 2, &[50, 100, 200], &s_grid, ctx.precision)?;
    let gaps: Vec<String> = st.study.points.iter().map(|p| format!("{:.3e}", p.gap)).collect();
    ok(
        st.study.gaps_decreasing && st.limit_residual.max_residual <= 1e-4,
        format!("sup gaps {}; limit residual {:e}", gaps.join(" > "), st.limit_residual.max_residual),
    )
}

fn stirling(_: &Ctx) -> Result<(bool, String)> {
    let r1 = stirling_helpers(1000, 1, 2)?;
    let r2 = stirling_helpers(1000, 2, 0)?;
    ok(
        (r1.shifted_ratio - 1.0).abs() < 2e-3 && (r2.shifted_ratio - 1.0).abs() < 1e-2,
        format!("n=1000: p=1 {:.6}, p=2 {:.6}", r1.shifted_ratio, r2.shifted_ratio),
    )
}
