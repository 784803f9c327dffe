//! Machine-readable verification records. Every check the tool performs is
//! summarized as one `Report`, serialized as a single JSON line, so runs can
//! be diffed, archived, and audited.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Outcome of one claim.
///
/// * `Pass` / `Fail`: a decisive comparison inside the range where the
///   expected value is licensed. `Fail` always carries a witness.
/// * `UpperBoundOnly`: the computation produced a bound, not an exact value,
///   either by construction (star mode) or because a search budget ran out.
/// * `OutOfRange`: no expected value is licensed for these parameters and the
///   tool has nothing decisive to say.
/// * `Finding`: a noteworthy observation that is not a pass/fail against a
///   licensed expected value: out-of-range agreements and disagreements,
///   boundary cases, bounded-evidence sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "UPPER_BOUND_ONLY")]
    UpperBoundOnly,
    #[serde(rename = "OUT_OF_RANGE")]
    OutOfRange,
    #[serde(rename = "FINDING")]
    Finding,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    /// Stable slash-separated identifier describing what was checked,
    /// e.g. "theta/exact-vs-closed-form/kind=fq/n=5/g=3".
    pub claim_id: String,
    pub parameters: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<Value>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub elapsed_ms: u64,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Report {
    pub fn new(claim_id: impl Into<String>, parameters: Value, verdict: Verdict) -> Self {
        Report {
            claim_id: claim_id.into(),
            parameters,
            expected: None,
            computed: None,
            verdict,
            witness: None,
            elapsed_ms: 0,
            tool_version: TOOL_VERSION.to_string(),
            seed: None,
        }
    }

    pub fn expected(mut self, v: impl Into<Value>) -> Self {
        self.expected = Some(v.into());
        self
    }

    pub fn computed(mut self, v: impl Into<Value>) -> Self {
        self.computed = Some(v.into());
        self
    }

    pub fn witness(mut self, v: impl Into<Value>) -> Self {
        self.witness = Some(v.into());
        self
    }

    pub fn seed(mut self, s: u64) -> Self {
        self.seed = Some(s);
        self
    }

    pub fn elapsed(mut self, since: Instant) -> Self {
        self.elapsed_ms = since.elapsed().as_millis() as u64;
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    /// One-line human summary for --pretty output.
    pub fn pretty_line(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::UpperBoundOnly => "UPPER_BOUND_ONLY",
            Verdict::OutOfRange => "OUT_OF_RANGE",
            Verdict::Finding => "FINDING",
        };
        let mut line = format!("{verdict:<16} {}", self.claim_id);
        if let Some(c) = &self.computed {
            line.push_str(&format!("  computed={c}"));
        }
        if let Some(e) = &self.expected {
            line.push_str(&format!("  expected={e}"));
        }
        line
    }
}
