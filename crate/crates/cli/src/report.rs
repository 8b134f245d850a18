//! JSON report shapes. Counts are decimal strings so arbitrary-precision
//! values survive any JSON reader.

use std::collections::BTreeMap;

use modk_core::{Decision, TrialRecord, Verdict};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompReport>,
    pub result: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trials: Vec<TrialReport>,
    pub timing: Timing,
}

#[derive(Debug, Serialize)]
pub struct DecompReport {
    pub source: String,
    pub bags: usize,
    pub width: usize,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
    #[serde(flatten)]
    pub phases: BTreeMap<String, f64>,
}

#[derive(Debug, Serialize)]
pub struct TrialReport {
    pub index: u64,
    pub w: Vec<u32>,
    pub kappa: String,
    pub max_table: usize,
}

impl From<&TrialRecord> for TrialReport {
    fn from(t: &TrialRecord) -> Self {
        TrialReport {
            index: t.index,
            w: t.w.residues().to_vec(),
            kappa: t.kappa.to_string(),
            max_table: t.max_table,
        }
    }
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
    }
}

pub fn trials(d: &Decision) -> Vec<TrialReport> {
    d.trials.iter().map(TrialReport::from).collect()
}

/// A finished command: report, stderr summary and exit code.
pub struct Output {
    pub report: RunReport,
    pub summary: String,
    pub code: u8,
}
