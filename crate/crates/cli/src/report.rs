use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// At most this many witnesses are stored; `violations` still counts all.
pub const MAX_WITNESSES: usize = 64;

/// A single input together with the values it produced.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub input: Value,
    pub values: Value,
}

/// Machine-readable result of a subcommand.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub command: String,
    pub parameters: Value,
    pub cases_run: u64,
    pub violations: u64,
    /// Smallest `bound - value` seen; absent when nothing ran.
    pub worst_slack: Option<f64>,
    pub witnesses: Vec<Witness>,
    /// Wall time, recorded only when timing is requested so that reports
    /// stay byte-identical across runs.
    pub runtime_ms: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl VerificationReport {
    pub fn new(command: &str, parameters: Value, seed: u64) -> Self {
        VerificationReport {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            parameters,
            cases_run: 0,
            violations: 0,
            worst_slack: None,
            witnesses: Vec::new(),
            runtime_ms: 0,
            seed,
            details: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are finite or null");
        s.push('\n');
        s
    }

    /// Writes the report to `path`, or to standard output when absent.
    pub fn emit(&self, path: Option<&Path>) -> std::io::Result<()> {
        let json = self.to_json();
        match path {
            Some(p) => std::fs::write(p, json),
            None => std::io::stdout().lock().write_all(json.as_bytes()),
        }
    }
}

/// Running totals for a sweep of inequality checks.
#[derive(Debug, Clone)]
pub struct Tally {
    pub cases: u64,
    pub violations: u64,
    pub worst_slack: Option<f64>,
    pub witnesses: Vec<Witness>,
    /// Log witnesses whose slack falls below this threshold.
    near_equality: Option<f64>,
}

impl Tally {
    pub fn new(near_equality: Option<f64>) -> Self {
        Tally {
            cases: 0,
            violations: 0,
            worst_slack: None,
            witnesses: Vec::new(),
            near_equality,
        }
    }

    /// Records one check with `slack = rhs - lhs`; it fails when
    /// `slack < -tol`. The witness is built only if it will be kept.
    pub fn record(&mut self, slack: f64, tol: f64, witness: impl FnOnce() -> Witness) {
        // NaN slack counts as a violation
        self.record_with(slack, !(slack >= -tol), witness);
    }

    /// Records one check whose pass/fail verdict was decided by the caller.
    pub fn record_with(&mut self, slack: f64, violated: bool, witness: impl FnOnce() -> Witness) {
        self.cases += 1;
        self.worst_slack = Some(match self.worst_slack {
            Some(w) => w.min(slack),
            None => slack,
        });
        if violated {
            self.violations += 1;
        }
        let near = self.near_equality.is_some_and(|t| slack < t);
        if (violated || near) && self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness());
        }
    }

    /// Records a check that could not be evaluated at all.
    pub fn record_failure(&mut self, witness: Witness) {
        self.cases += 1;
        self.violations += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    pub fn into_report(self, report: &mut VerificationReport) {
        report.cases_run = self.cases;
        report.violations = self.violations;
        report.worst_slack = self.worst_slack;
        report.witnesses = self.witnesses;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn w() -> Witness {
        Witness {
            input: json!({}),
            values: json!({}),
        }
    }

    #[test]
    fn tally_counts_and_logs() {
        let mut t = Tally::new(None);
        t.record(0.5, 1e-9, w);
        t.record(-1e-10, 1e-9, w);
        assert_eq!((t.cases, t.violations, t.witnesses.len()), (2, 0, 0));
        t.record(-1e-3, 1e-9, w);
        t.record(f64::NAN, 1e-9, w);
        assert_eq!((t.violations, t.witnesses.len()), (2, 2));
        assert_eq!(t.worst_slack, Some(-1e-3));

        let mut near = Tally::new(Some(1e-3));
        near.record(1e-4, 1e-9, w);
        near.record(0.1, 1e-9, w);
        assert_eq!((near.violations, near.witnesses.len()), (0, 1));
    }

    #[test]
    fn witness_cap() {
        let mut t = Tally::new(None);
        for _ in 0..MAX_WITNESSES + 10 {
            t.record(-1.0, 0.0, w);
        }
        assert_eq!(t.violations as usize, MAX_WITNESSES + 10);
        assert_eq!(t.witnesses.len(), MAX_WITNESSES);
    }

    #[test]
    fn report_shape() {
        let mut r = VerificationReport::new("verify", json!({"trials": 0}), 7);
        Tally::new(None).into_report(&mut r);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["cases_run"], 0);
        assert!(v["worst_slack"].is_null());
        assert!(v.get("details").is_none());
        assert!(r.passed());
    }
}
