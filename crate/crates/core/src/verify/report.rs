use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Whether a check is expected to hold or to fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Polarity {
    #[default]
    ExpectPass,
    ExpectFail,
}

/// Two independently computed sides of an identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub polarity: Polarity,
    pub metadata: BTreeMap<String, String>,
}

pub(crate) fn relative(abs_err: f64, lhs: Complex64, rhs: Complex64) -> f64 {
    let scale = lhs.norm().max(rhs.norm());
    if scale == 0.0 {
        0.0
    } else {
        abs_err / scale
    }
}

impl CheckReport {
    /// Passes when either the absolute or the relative discrepancy is
    /// within `tolerance`.
    pub fn new(name: impl Into<String>, lhs: Complex64, rhs: Complex64, tolerance: f64) -> Self {
        let abs_err = (lhs - rhs).norm();
        let rel_err = relative(abs_err, lhs, rhs);
        let finite = abs_err.is_finite();
        Self {
            name: name.into(),
            lhs,
            rhs,
            abs_err,
            rel_err,
            tolerance,
            passed: finite && (abs_err <= tolerance || rel_err <= tolerance),
            polarity: Polarity::ExpectPass,
            metadata: BTreeMap::new(),
        }
    }

    /// Passes on the relative discrepancy alone.
    pub fn relative_only(name: impl Into<String>, lhs: Complex64, rhs: Complex64, tolerance: f64) -> Self {
        let mut r = Self::new(name, lhs, rhs, tolerance);
        r.passed = r.rel_err <= tolerance;
        r
    }

    pub fn expect_fail(mut self) -> Self {
        self.polarity = Polarity::ExpectFail;
        self
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    pub fn as_expected(&self) -> bool {
        self.passed == (self.polarity == Polarity::ExpectPass)
    }
}

/// Measured operator norm against its theoretical bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub measured_norm: f64,
    pub bound_value: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub metadata: BTreeMap<String, String>,
}

impl BoundReport {
    pub fn new(name: impl Into<String>, measured_norm: f64, bound_value: f64, tolerance: f64) -> Self {
        let slack = bound_value - measured_norm;
        Self {
            name: name.into(),
            measured_norm,
            bound_value,
            slack,
            tolerance,
            passed: slack.is_finite() && slack >= -tolerance,
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }
}

/// Any report produced by a suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Report {
    Check(CheckReport),
    Bound(BoundReport),
}

impl From<CheckReport> for Report {
    fn from(r: CheckReport) -> Self {
        Report::Check(r)
    }
}

impl From<BoundReport> for Report {
    fn from(r: BoundReport) -> Self {
        Report::Bound(r)
    }
}

impl Report {
    pub fn name(&self) -> &str {
        match self {
            Report::Check(c) => &c.name,
            Report::Bound(b) => &b.name,
        }
    }

    pub fn passed(&self) -> bool {
        match self {
            Report::Check(c) => c.passed,
            Report::Bound(b) => b.passed,
        }
    }

    pub fn as_expected(&self) -> bool {
        match self {
            Report::Check(c) => c.as_expected(),
            Report::Bound(b) => b.passed,
        }
    }

    /// Flat serialisation row. Bound reports put the measured norm in
    /// `lhs`, the bound in `rhs` and the violation `max(0, −slack)` in the
    /// error columns.
    pub fn record(&self) -> Record {
        match self {
            Report::Check(c) => {
                let mut params = c.metadata.clone();
                if c.polarity == Polarity::ExpectFail {
                    params.insert("expect".into(), "fail".into());
                }
                Record {
                    name: c.name.clone(),
                    params: join_params(&params),
                    lhs_re: c.lhs.re,
                    lhs_im: c.lhs.im,
                    rhs_re: c.rhs.re,
                    rhs_im: c.rhs.im,
                    abs_err: c.abs_err,
                    rel_err: c.rel_err,
                    tolerance: c.tolerance,
                    passed: c.passed,
                }
            }
            Report::Bound(b) => {
                let mut params = b.metadata.clone();
                params.insert("slack".into(), format_real(b.slack));
                let violation = (-b.slack).max(0.0);
                Record {
                    name: b.name.clone(),
                    params: join_params(&params),
                    lhs_re: b.measured_norm,
                    lhs_im: 0.0,
                    rhs_re: b.bound_value,
                    rhs_im: 0.0,
                    abs_err: violation,
                    rel_err: if b.bound_value > 0.0 { violation / b.bound_value } else { violation },
                    tolerance: b.tolerance,
                    passed: b.passed,
                }
            }
        }
    }
}

fn join_params(params: &BTreeMap<String, String>) -> String {
    params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

/// Serialised report row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    pub params: String,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub const CSV_HEADER: &str = "name,params,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,tolerance,passed";

/// 17 significant digits with a lowercase exponent.
pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

/// Compact rendering of a complex parameter for report metadata.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Record {
    pub fn csv_row(&self) -> String {
        let mut out = String::new();
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            csv_field(&self.name),
            csv_field(&self.params),
            format_real(self.lhs_re),
            format_real(self.lhs_im),
            format_real(self.rhs_re),
            format_real(self.rhs_im),
            format_real(self.abs_err),
            format_real(self.rel_err),
            format_real(self.tolerance),
            self.passed
        );
        out
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialise")
    }
}

pub fn to_csv(reports: &[Report]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.record().csv_row());
        out.push('\n');
    }
    out
}

pub fn to_jsonl(reports: &[Report]) -> String {
    reports.iter().map(|r| r.record().json_line() + "\n").collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn pass_rule_uses_either_error() {
        let r = CheckReport::new("a", c64(1e6), c64(1e6 + 1.0), 1e-5);
        assert!(r.passed && r.abs_err == 1.0);
        let r = CheckReport::new("b", c64(1e-12), c64(0.0), 1e-10);
        assert!(r.passed && r.rel_err == 1.0);
        let r = CheckReport::new("c", c64(0.5), c64(0.6), 1e-3).expect_fail();
        assert!(!r.passed && r.as_expected());
        let r = CheckReport::new("d", c64(f64::NAN), c64(0.6), 1e-3);
        assert!(!r.passed);
    }

    #[test]
    fn bound_slack() {
        let b = BoundReport::new("item", 1.0, 1.0 - 1e-10, 1e-9);
        assert!(b.passed);
        assert!(!BoundReport::new("item", 1.0, 0.9, 1e-9).passed);
    }

    #[test]
    fn serialisation_fields() {
        let r: Report = CheckReport::new("x", Complex64::new(1.0, -2.0), c64(1.0), 1e-8)
            .with_param("mu", "-0.5")
            .with_param("form", "2")
            .into();
        let csv = to_csv(&[r.clone()]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let row = lines.next().unwrap();
        assert!(row.starts_with("x,form=2;mu=-0.5,1.0000000000000000e0,-2.0000000000000000e0,"));
        let json: serde_json::Value = serde_json::from_str(r.record().json_line().trim()).unwrap();
        let keys: Vec<&str> = json.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(keys.len(), 10);
        for k in CSV_HEADER.split(',') {
            assert!(keys.contains(&k), "{k}");
        }
    }
}
