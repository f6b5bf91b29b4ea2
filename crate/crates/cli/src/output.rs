use crate::config::{RunConfig, SCHEMA_VERSION};
use anyhow::Context;
use serde::Serialize;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

/// Writes `<out>/<stem>.json` (deterministic) and `<out>/<stem>.meta.json`
/// (timestamps).
pub fn write_report<T: Serialize>(config: &RunConfig, stem: &str, result: &T, started: SystemTime) -> anyhow::Result<PathBuf> {
    std::fs::create_dir_all(&config.out).with_context(|| format!("creating {}", config.out.display()))?;
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": config.command,
        "config": config,
        "result": result,
    });
    let path = config.out.join(format!("{stem}.json"));
    std::fs::write(&path, serde_json::to_string_pretty(&report)? + "\n")?;
    let finished = SystemTime::now();
    let secs = |t: SystemTime| t.duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0);
    let meta = json!({
        "started_unix": secs(started),
        "finished_unix": secs(finished),
        "elapsed_seconds": finished.duration_since(started).map(|d| d.as_secs_f64()).unwrap_or(0.0),
    });
    std::fs::write(config.out.join(format!("{stem}.meta.json")), serde_json::to_string_pretty(&meta)? + "\n")?;
    Ok(path)
}

pub fn write_text(dir: &Path, name: &str, text: &str) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), text)?;
    Ok(())
}

/// Exact rationals as "num/den", integers without a denominator.
pub fn rational(r: &rug::Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with `digits` significant digits.
pub fn float(f: &rug::Float, digits: u32) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let s = f.to_string_radix(10, Some(digits as usize));
    // mantissa "d.ddd" and exponent "eX"; use plain notation for moderate exponents
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
        None => (s.clone(), 0),
    };
    if !(-6..=20).contains(&exp) {
        return s;
    }
    let neg = mant.starts_with('-');
    let digits_only: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = 1 + exp;
    let mut out = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits_only)
    } else if point as usize >= digits_only.len() {
        format!("{}{}", digits_only, "0".repeat(point as usize - digits_only.len()))
    } else {
        format!("{}.{}", &digits_only[..point as usize], &digits_only[point as usize..])
    };
    if out.contains('.') {
        out = out.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if neg { format!("-{out}") } else { out }
}
