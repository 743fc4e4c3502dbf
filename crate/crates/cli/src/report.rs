//! JSON report schema and numeric formatting.

use serde::Serialize;

pub const SCHEMA: &str = "miconf/1";

/// Round to `digits` significant digits for display.
pub fn sig(value: f64, digits: u32) -> f64 {
    if value == 0.0 || !value.is_finite() {
        return value;
    }
    format!("{:.*e}", digits.saturating_sub(1) as usize, value)
        .parse()
        .unwrap_or(value)
}

#[derive(Debug, Serialize)]
pub struct Metadata {
    pub tool_version: &'static str,
    pub log_base: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator_id: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantile_convention: Option<&'static str>,
}

impl Metadata {
    pub fn new(unit: miconf::Unit) -> Self {
        Metadata {
            tool_version: env!("CARGO_PKG_VERSION"),
            log_base: match unit {
                miconf::Unit::Bits => "2",
                miconf::Unit::Nats => "e",
            },
            generator_id: None,
            quantile_convention: None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub kind: &'static str,
    pub path: String,
}

#[derive(Debug, Serialize)]
pub struct IntervalEntry {
    pub method: &'static str,
    pub lower: f64,
    pub upper: f64,
    pub width: f64,
}

#[derive(Debug, Serialize)]
pub struct IntervalReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub input: InputEcho,
    pub n: u64,
    pub mx: usize,
    pub my: usize,
    pub alpha: f64,
    pub method: &'static str,
    pub clamp: bool,
    pub unit: &'static str,
    pub epsilon: f64,
    pub mi_empirical: f64,
    pub intervals: Vec<IntervalEntry>,
    pub metadata: Metadata,
}

#[derive(Debug, Serialize)]
pub struct SampleSizeReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub gamma: f64,
    pub unit: &'static str,
    pub alpha: f64,
    pub mx: usize,
    pub my: usize,
    pub epsilon: f64,
    pub n_required: u64,
    pub metadata: Metadata,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SourceEcho {
    Bsc { ber: f64, px: f64 },
    Joint { path: String },
}

#[derive(Debug, Serialize)]
pub struct SimulateReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub source: SourceEcho,
    pub n: u64,
    pub reps: u64,
    pub alpha: f64,
    pub seed: u64,
    pub unit: &'static str,
    pub true_mi: f64,
    pub quantile_levels: [f64; 2],
    pub quantile_lower: f64,
    pub quantile_upper: f64,
    pub width: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cdf_path: Option<String>,
    pub generator_id: &'static str,
    pub metadata: Metadata,
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report types serialize");
    s.push('\n');
    s
}
