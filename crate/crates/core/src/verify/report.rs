use serde::Serialize;

use super::GridDefaults;
use crate::shi::EvalConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// A sample where the inequality was violated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub point: Vec<f64>,
    pub margin: f64,
}

/// Result of evaluating the claim at its equality point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualityCheck {
    pub at: Vec<f64>,
    pub margin: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub case_id: String,
    pub status: Status,
    pub samples_evaluated: usize,
    /// Smallest relative margin seen; negative means violated.
    pub min_margin: Option<f64>,
    pub argmin: Option<Vec<f64>>,
    pub failure_count: usize,
    /// The first few violations, in grid order.
    pub failures: Vec<Violation>,
    /// Samples whose margin was too close to zero to decide.
    pub inconclusive_samples: usize,
    pub eval_errors: usize,
    pub first_error: Option<String>,
    /// Grid points outside the region where the claim is evaluated.
    pub skipped: usize,
    /// Every margin sign was decided exactly or in extended precision.
    pub certified: bool,
    pub equality: Option<EqualityCheck>,
    pub oracle_checks: usize,
    pub oracle_max_rel_dev: Option<f64>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub(crate) fn empty(case_id: &str) -> Self {
        VerificationReport {
            case_id: case_id.to_string(),
            status: Status::Inconclusive,
            samples_evaluated: 0,
            min_margin: None,
            argmin: None,
            failure_count: 0,
            failures: Vec::new(),
            inconclusive_samples: 0,
            eval_errors: 0,
            first_error: None,
            skipped: 0,
            certified: false,
            equality: None,
            oracle_checks: 0,
            oracle_max_rel_dev: None,
            notes: Vec::new(),
        }
    }
}

/// Effective configuration of a verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub eval: EvalConfig,
    pub grid: GridDefaults,
    pub cases: Vec<String>,
    pub fail_tol: f64,
    pub strict_tol: f64,
    pub equality_tol: f64,
    pub oracle_tol: f64,
    pub oracle_fraction: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn tally(reports: &[VerificationReport]) -> Self {
        let mut s = Summary { total: reports.len(), ..Summary::default() };
        for r in reports {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Inconclusive => s.inconclusive += 1,
            }
        }
        s
    }
}

/// The JSON document written by `shikit verify`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub tool_version: &'static str,
    pub config_echo: ConfigEcho,
    pub reports: Vec<VerificationReport>,
    pub summary: Summary,
}

impl ReportDocument {
    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report types serialize");
        s.push('\n');
        s
    }
}
