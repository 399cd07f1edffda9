//! Report files: CSV rows and a JSON summary per run.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::WeightsSpec;
use super::{Failure, Format};
use crate::weights::{FastMajorant, Weight, WeightClass};

pub(super) struct Writer {
    dir: PathBuf,
    format: Format,
}

impl Writer {
    /// Creates `dir` and proves it writable before any computation starts.
    pub(super) fn create(dir: &Path, format: Format) -> Result<Self, Failure> {
        let fail = |e: std::io::Error| Failure::Config(format!("output directory {}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(fail)?;
        let probe = dir.join(".blochgauge-write-probe");
        fs::write(&probe, b"").map_err(fail)?;
        fs::remove_file(&probe).map_err(fail)?;
        Ok(Self { dir: dir.to_path_buf(), format })
    }

    fn io(&self, name: &str, e: impl std::fmt::Display) -> Failure {
        Failure::Config(format!("writing {}: {e}", self.dir.join(name).display()))
    }

    pub(super) fn csv<T: Serialize>(&self, name: &str, rows: &[T]) -> Result<(), Failure> {
        if self.format == Format::Json {
            return Ok(());
        }
        let mut w = csv::Writer::from_path(self.dir.join(name)).map_err(|e| self.io(name, e))?;
        for r in rows {
            w.serialize(r).map_err(|e| self.io(name, e))?;
        }
        w.flush().map_err(|e| self.io(name, e))
    }

    pub(super) fn summary<T: Serialize>(&self, report: &T, config_echo: serde_json::Value) -> Result<(), Failure> {
        if self.format == Format::Csv {
            return Ok(());
        }
        let mut v = serde_json::to_value(report).map_err(|e| self.io("summary.json", e))?;
        v["config_echo"] = config_echo;
        let mut text = serde_json::to_string_pretty(&v).map_err(|e| self.io("summary.json", e))?;
        text.push('\n');
        fs::write(self.dir.join("summary.json"), text).map_err(|e| self.io("summary.json", e))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub k: u32,
    pub d_z: f64,
    pub q: f64,
}

/// The `Q_k` sequence with simple decay indicators.
#[derive(Debug, Clone, Serialize)]
pub struct ScanSummary {
    pub q: Vec<f64>,
    /// `Q_K / Q_1` (0 when `Q_1 = 0`).
    pub last_over_first: f64,
    /// `max_{k > K/2} Q_k / Q_1` (0 when `Q_1 = 0`).
    pub tail_max_over_first: f64,
    pub nonincreasing: bool,
    pub identically_zero: bool,
}

impl ScanSummary {
    pub fn new(q: &[f64]) -> Self {
        let first = q.first().copied().unwrap_or(0.0);
        let rel = |x: f64| if first > 0.0 { x / first } else { 0.0 };
        let tail = q[q.len() / 2..].iter().copied().fold(0.0, f64::max);
        Self {
            q: q.to_vec(),
            last_over_first: rel(q.last().copied().unwrap_or(0.0)),
            tail_max_over_first: rel(tail),
            nonincreasing: q.windows(2).all(|w| w[1] <= w[0]),
            identically_zero: q.iter().all(|&x| x == 0.0),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightsSummary {
    pub weight: Weight,
    pub moderateness_constant: f64,
    pub moderateness_k_max: u32,
    pub fast_majorant_ratio: FastMajorant,
    pub fast_majorant_delta: f64,
    pub class: WeightClass,
}

#[derive(Debug, Clone, Serialize)]
pub(super) struct QuantityRow {
    quantity: &'static str,
    value: String,
}

impl WeightsSummary {
    pub(super) fn new(w: &Weight, spec: &WeightsSpec) -> crate::Result<Self> {
        w.validate()?;
        Ok(Self {
            weight: w.clone(),
            moderateness_constant: w.moderateness_constant(spec.k_max)?,
            moderateness_k_max: spec.k_max,
            fast_majorant_ratio: w.fast_majorant_ratio(spec.delta)?,
            fast_majorant_delta: spec.delta,
            class: w.classify(),
        })
    }

    pub(super) fn rows(&self) -> Vec<QuantityRow> {
        let ratio = match self.fast_majorant_ratio {
            FastMajorant::Ratio(r) => r.to_string(),
            FastMajorant::Divergent => "divergent".into(),
        };
        let class = serde_json::to_value(self.class).expect("class serializes");
        vec![
            QuantityRow { quantity: "moderateness_constant", value: self.moderateness_constant.to_string() },
            QuantityRow { quantity: "fast_majorant_ratio", value: ratio },
            QuantityRow { quantity: "class", value: class.as_str().unwrap_or_default().to_string() },
        ]
    }
}
