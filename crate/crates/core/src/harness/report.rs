use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Bool(bool),
    Count(u64),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Bool(b) => write!(f, "{b}"),
            Outcome::Count(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Fail,
    Skipped,
}

/// One checked instance: a closed-form (or reference) expectation against
/// what the engine observed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseRecord {
    pub graph: String,
    pub m: u32,
    pub method: String,
    pub expected: Outcome,
    pub observed: Option<Outcome>,
    pub status: CaseStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CaseRecord {
    pub fn check(graph: impl Into<String>, m: u32, method: &str, expected: Outcome, observed: Outcome) -> Self {
        CaseRecord {
            graph: graph.into(),
            m,
            method: method.to_string(),
            expected,
            observed: Some(observed),
            status: if expected == observed { CaseStatus::Pass } else { CaseStatus::Fail },
            note: None,
        }
    }

    /// Builds a record from a fallible observation. A state-cap overflow
    /// becomes a skipped case; any other engine error is a failure.
    pub fn from_result(
        graph: impl Into<String>,
        m: u32,
        method: &str,
        expected: Outcome,
        observed: Result<Outcome, Error>,
    ) -> Self {
        match observed {
            Ok(obs) => CaseRecord::check(graph, m, method, expected, obs),
            Err(e) => CaseRecord {
                graph: graph.into(),
                m,
                method: method.to_string(),
                expected,
                observed: None,
                status: if matches!(e, Error::StateCapExceeded { .. }) {
                    CaseStatus::Skipped
                } else {
                    CaseStatus::Fail
                },
                note: Some(e.to_string()),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub cases: Vec<CaseRecord>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub pass: bool,
    /// Omitted from output unless timing was requested, so reports stay
    /// byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl VerificationReport {
    pub fn new(suite: &str, params: BTreeMap<String, String>, cases: Vec<CaseRecord>) -> Self {
        let count = |s| cases.iter().filter(|c| c.status == s).count();
        let (passed, failed, skipped) =
            (count(CaseStatus::Pass), count(CaseStatus::Fail), count(CaseStatus::Skipped));
        VerificationReport {
            suite: suite.to_string(),
            params,
            passed,
            failed,
            skipped,
            pass: failed == 0,
            cases,
            wall_time_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,graph,m,method,expected,observed,status,note\n");
        for c in &self.cases {
            let observed = c.observed.map(|o| o.to_string()).unwrap_or_default();
            let status = match c.status {
                CaseStatus::Pass => "pass",
                CaseStatus::Fail => "fail",
                CaseStatus::Skipped => "skipped",
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                self.suite,
                csv_field(&c.graph),
                c.m,
                c.method,
                c.expected,
                observed,
                status,
                csv_field(c.note.as_deref().unwrap_or("")),
            ));
        }
        out
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
