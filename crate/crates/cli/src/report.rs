use std::collections::BTreeMap;

use padic_field::val::q_decimal;
use padic_field::Q;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "qconf.report.v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Built under `--override-admissibility` without a passing report.
    Uncertified,
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Uncertified => "uncertified",
            Verdict::Error => "error",
        }
    }
}

/// Valuations at or beyond the working precision all print as the precision.
pub fn fmt_q(x: Q, cap: Q) -> String {
    q_decimal(x.min(cap), 6)
}

#[derive(Debug, Serialize)]
pub struct FieldRecord {
    pub p: u64,
    pub s: i32,
    #[serde(rename = "N")]
    pub n: u32,
}

#[derive(Debug, Serialize)]
pub struct TaskRecord {
    pub index: usize,
    pub verb: String,
    pub equation: Option<String>,
    pub verdict: Verdict,
    pub min_difference_valuation: Option<String>,
    pub output: Option<String>,
    pub diagnostics: BTreeMap<String, Value>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub field: FieldRecord,
    pub truncation: usize,
    pub tasks: Vec<TaskRecord>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn table(&self) -> String {
        let mut out = format!("{:>3}  {:<15} {:<16} {:<12} {}\n", "#", "verb", "equation", "verdict", "min_diff_val");
        for t in &self.tasks {
            out.push_str(&format!(
                "{:>3}  {:<15} {:<16} {:<12} {}\n",
                t.index,
                t.verb,
                t.equation.as_deref().unwrap_or("-"),
                t.verdict.as_str(),
                t.min_difference_valuation.as_deref().unwrap_or("-"),
            ));
        }
        out
    }
}
