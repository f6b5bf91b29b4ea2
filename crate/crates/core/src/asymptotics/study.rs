use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StudyPoint {
    pub parameter: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub gap: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl StudyPoint {
    /// Point whose gap is |ratio - 1|.
    pub fn relative(parameter: f64, lhs: f64, rhs: f64) -> Self {
        let ratio = lhs / rhs;
        StudyPoint { parameter, lhs, rhs, ratio, gap: (ratio - 1.0).abs(), detail: None }
    }

    /// Point whose gap is |lhs - rhs|.
    pub fn absolute(parameter: f64, lhs: f64, rhs: f64) -> Self {
        StudyPoint { parameter, lhs, rhs, ratio: lhs / rhs, gap: (lhs - rhs).abs(), detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// A sequence of (lhs, rhs) comparisons along an increasing parameter grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub study: String,
    pub parameters: serde_json::Value,
    pub points: Vec<StudyPoint>,
    /// every gap strictly smaller than the previous one
    pub gaps_decreasing: bool,
    /// last gap strictly smaller than the first
    pub improves: bool,
    pub final_gap: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ConvergenceStudy {
    pub fn new(study: &str, parameters: serde_json::Value, points: Vec<StudyPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if points.windows(2).any(|w| w[0].parameter >= w[1].parameter) {
            return Err(Error::InvalidParameter("study grid must be strictly increasing".into()));
        }
        if let Some(bad) = points.iter().find(|p| !p.ratio.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite ratio at parameter {}", bad.parameter)));
        }
        let gaps_decreasing = points.windows(2).all(|w| w[1].gap < w[0].gap);
        let first = points[0].gap;
        let final_gap = points[points.len() - 1].gap;
        Ok(ConvergenceStudy {
            study: study.to_string(),
            parameters,
            gaps_decreasing,
            improves: points.len() > 1 && final_gap < first,
            final_gap,
            points,
            notes: Vec::new(),
        })
    }

    /// CSV with columns parameter, lhs, rhs, ratio, gap.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["parameter", "lhs", "rhs", "ratio", "gap"])?;
        for p in &self.points {
            w.write_record([p.parameter, p.lhs, p.rhs, p.ratio, p.gap].map(|v| format!("{v:e}")))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }
}
