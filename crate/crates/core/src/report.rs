//! Check records and report documents shared by the library and the CLI.

use serde::Serialize;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_abs_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejected: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckResult {
    pub fn boolean(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            pass,
            skipped: false,
            max_abs_deviation: None,
            tolerance: None,
            samples: None,
            rejected: None,
            seed: None,
            detail: detail.into(),
        }
    }

    /// A check that did not apply; it counts as passing.
    pub fn skipped(name: impl Into<String>, why: impl Into<String>) -> Self {
        CheckResult { skipped: true, ..CheckResult::boolean(name, true, why) }
    }

    /// Pass iff `deviation <= tol`. A NaN deviation fails.
    pub fn deviation(name: impl Into<String>, deviation: f64, tol: f64, detail: impl Into<String>) -> Self {
        CheckResult {
            max_abs_deviation: Some(deviation),
            tolerance: Some(tol),
            ..CheckResult::boolean(name, deviation <= tol, detail)
        }
    }

    /// Exact identity: zero deviation required.
    pub fn exact(name: impl Into<String>, deviation: f64, detail: impl Into<String>) -> Self {
        CheckResult::deviation(name, deviation, 0.0, detail)
    }
}

/// All checks pass.
pub fn all_pass(checks: &[CheckResult]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Render check results as a markdown table.
pub fn checks_markdown(checks: &[CheckResult]) -> String {
    let mut s = String::from("| check | result | deviation | tolerance | detail |\n|---|---|---|---|---|\n");
    for c in checks {
        let result = match (c.skipped, c.pass) {
            (true, _) => "skip",
            (false, true) => "pass",
            (false, false) => "FAIL",
        };
        let dev = c.max_abs_deviation.map(|d| format!("{d:.3e}")).unwrap_or_default();
        let tol = c.tolerance.map(|d| format!("{d:.1e}")).unwrap_or_default();
        let mut detail = c.detail.replace('|', "/");
        if let Some(n) = c.samples {
            if !detail.is_empty() {
                detail.push_str("; ");
            }
            detail.push_str(&format!("samples={n}"));
            if let Some(r) = c.rejected {
                detail.push_str(&format!(", rejected={r}"));
            }
            if let Some(seed) = c.seed {
                detail.push_str(&format!(", seed={seed}"));
            }
        }
        s.push_str(&format!("| {} | {} | {} | {} | {} |\n", c.name, result, dev, tol, detail));
    }
    s
}
