//! Check records and the consolidated verification report.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// Outcome of one numerical assertion.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    /// The mathematical statement being checked.
    pub anchor: String,
    pub status: Status,
    pub observed: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl CheckRecord {
    fn build(id: &str, anchor: &str, pass: bool, observed: f64, tolerance: f64) -> Self {
        Self {
            check_id: id.to_string(),
            anchor: anchor.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            observed,
            tolerance,
            detail: None,
            runtime_ms: None,
        }
    }

    /// Passes when `observed <= tolerance` (NaN fails).
    pub fn at_most(id: &str, anchor: &str, observed: f64, tolerance: f64) -> Self {
        Self::build(id, anchor, observed <= tolerance, observed, tolerance)
    }

    /// Passes when `observed >= tolerance` (NaN fails).
    pub fn at_least(id: &str, anchor: &str, observed: f64, tolerance: f64) -> Self {
        Self::build(id, anchor, observed >= tolerance, observed, tolerance)
    }

    /// Passes when `observed` lies in `[lo, hi]`; `tolerance` records the half-width.
    pub fn within(id: &str, anchor: &str, observed: f64, lo: f64, hi: f64) -> Self {
        let mut r = Self::build(id, anchor, observed >= lo && observed <= hi, observed, 0.5 * (hi - lo));
        r.detail = Some(format!("expected in [{lo}, {hi}]"));
        r
    }

    pub fn failed(id: &str, anchor: &str, message: String) -> Self {
        let mut r = Self::build(id, anchor, false, f64::NAN, f64::NAN);
        r.detail = Some(message);
        r
    }

    pub fn skipped(id: &str, anchor: &str, reason: &str) -> Self {
        let mut r = Self::build(id, anchor, true, f64::NAN, f64::NAN);
        r.status = Status::Skip;
        r.detail = Some(reason.to_string());
        r
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_id(mut self, id: &str) -> Self {
        self.check_id = id.to_string();
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// The full report emitted by the verification suite.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub family: String,
    pub eps: f64,
    pub checks: Vec<CheckRecord>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_never_passes() {
        assert!(!CheckRecord::at_most("a.b", "", f64::NAN, 1.0).passed());
        assert!(!CheckRecord::at_least("a.b", "", f64::NAN, 1.0).passed());
    }

    #[test]
    fn json_shape() {
        let r = VerifyReport { family: "f".into(), eps: 0.0, checks: vec![CheckRecord::at_most("m.x", "a", 0.5, 1.0)] };
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let c = &v["checks"][0];
        assert_eq!(c["check_id"], "m.x");
        assert_eq!(c["status"], "pass");
        assert!(c.get("runtime_ms").is_none());
    }
}
