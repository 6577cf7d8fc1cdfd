//! Run reports and their JSON / CSV renderings.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use super::config::ExperimentConfig;
use crate::algebra::Deg;
use crate::error::{Error, Result};
use crate::exponents::ExponentProfile;
use crate::report::{CheckReport, Severity, Status};

#[derive(Clone, Debug, Serialize)]
pub struct InstanceRecord {
    pub index: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub precision_exhausted: bool,
}

impl InstanceRecord {
    pub fn new(index: usize, checks: Vec<CheckReport>, data: Value) -> Self {
        let status = checks
            .iter()
            .map(|c| c.status)
            .max()
            .unwrap_or(Status::Holds);
        InstanceRecord {
            index,
            status,
            checks,
            data,
            error: None,
            precision_exhausted: false,
        }
    }

    pub fn failed(index: usize, err: &Error) -> Self {
        InstanceRecord {
            index,
            status: if err.is_precision() {
                Status::Inconclusive
            } else {
                Status::Fails
            },
            checks: Vec::new(),
            data: Value::Null,
            error: Some(err.to_string()),
            precision_exhausted: err.is_precision(),
        }
    }

    pub fn hard_failure(&self) -> bool {
        (self.error.is_some() && !self.precision_exhausted)
            || self.checks.iter().any(CheckReport::is_hard_failure)
    }

    /// All checks with the given name hold.
    pub fn check_holds(&self, name: &str) -> bool {
        self.error.is_none()
            && self
                .checks
                .iter()
                .filter(|c| c.name == name)
                .all(CheckReport::holds)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub instances: usize,
    pub holds: usize,
    pub exempt: usize,
    pub inconclusive: usize,
    pub fails: usize,
    pub hard_failures: usize,
    pub diagnostic_failures: usize,
    pub precision_exhausted: usize,
}

impl Tally {
    pub fn of(instances: &[InstanceRecord]) -> Self {
        let mut t = Tally {
            instances: instances.len(),
            ..Tally::default()
        };
        for r in instances {
            match r.status {
                Status::Holds => t.holds += 1,
                Status::Exempt => t.exempt += 1,
                Status::Inconclusive => t.inconclusive += 1,
                Status::Fails => t.fails += 1,
            }
            t.hard_failures += r.hard_failure() as usize;
            t.diagnostic_failures += r
                .checks
                .iter()
                .any(|c| c.severity == Severity::Diagnostic && c.status == Status::Fails)
                as usize;
            t.precision_exhausted += r.precision_exhausted as usize;
        }
        t
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedProfile {
    pub name: String,
    pub profile: ExponentProfile,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub requirement: String,
    pub passed: bool,
    pub tally: Tally,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub summary: Value,
    pub instances: Vec<InstanceRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub profiles: Vec<NamedProfile>,
}

impl SuiteReport {
    pub fn new(
        suite: &str,
        requirement: impl Into<String>,
        instances: Vec<InstanceRecord>,
    ) -> Self {
        let tally = Tally::of(&instances);
        SuiteReport {
            suite: suite.into(),
            requirement: requirement.into(),
            passed: tally.hard_failures == 0 && tally.precision_exhausted == 0,
            tally,
            summary: Value::Null,
            instances,
            profiles: Vec::new(),
        }
    }

    pub fn with_summary(mut self, summary: Value) -> Self {
        self.summary = summary;
        self
    }

    pub fn with_passed(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub config: ExperimentConfig,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<SuiteReport>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub result: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub profiles: Vec<NamedProfile>,
    pub exit_code: i32,
}

impl RunReport {
    pub fn new(command: impl Into<String>, config: &ExperimentConfig) -> Self {
        RunReport {
            tool: "ffdio",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            seed: config.seed,
            config: config.clone(),
            suites: Vec::new(),
            result: Value::Null,
            profiles: Vec::new(),
            exit_code: 0,
        }
    }

    /// 1 for any hard failure, else 2 if precision ran out anywhere, else 0.
    pub fn compute_exit_code(&self) -> i32 {
        let hard = self.suites.iter().any(|s| s.tally.hard_failures > 0);
        let precision = self.suites.iter().any(|s| s.tally.precision_exhausted > 0);
        if hard {
            1
        } else if precision || self.profiles.iter().any(|p| p.profile.any_exhausted()) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self, decimals: bool) -> Result<String> {
        let mut v = serde_json::to_value(self).map_err(|e| Error::Io(e.to_string()))?;
        if decimals {
            add_decimals(&mut v);
        }
        let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Io(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn all_profiles(&self) -> Vec<&NamedProfile> {
        self.profiles
            .iter()
            .chain(self.suites.iter().flat_map(|s| s.profiles.iter()))
            .collect()
    }

    /// One row per check: suite, index, check, severity, status.
    pub fn checks_csv(&self) -> String {
        let mut out = String::from("suite,index,check,severity,status\n");
        for s in &self.suites {
            for r in &s.instances {
                for c in &r.checks {
                    let sev = serde_json::to_value(c.severity).unwrap();
                    let st = serde_json::to_value(c.status).unwrap();
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        s.suite,
                        r.index,
                        c.name,
                        sev.as_str().unwrap(),
                        st.as_str().unwrap()
                    );
                }
                if let Some(e) = &r.error {
                    let _ = writeln!(out, "{},{},error,exact,{:?}", s.suite, r.index, e);
                }
            }
        }
        out
    }

    /// Writes `report.json`, plus CSV tables when asked.
    pub fn write(&self, dir: &Path, csv: bool, decimals: bool) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.json"), self.to_json(decimals)?)?;
        if csv {
            for p in self.all_profiles() {
                std::fs::write(
                    dir.join(format!("profile_{}.csv", p.name)),
                    profile_csv(&p.profile),
                )?;
            }
            if !self.suites.is_empty() {
                std::fs::write(dir.join("checks.csv"), self.checks_csv())?;
            }
        }
        Ok(())
    }
}

/// Columns `T, B, minus_B_over_T_num, minus_B_over_T_den, censored`.
pub fn profile_csv(p: &ExponentProfile) -> String {
    let mut out = String::from("T,B,minus_B_over_T_num,minus_B_over_T_den,censored\n");
    for e in &p.entries {
        let (b, num, den) = match e.b.deg {
            Deg::NegInf => ("-inf".to_string(), "inf".to_string(), "1".to_string()),
            Deg::Fin(l) => {
                let r = crate::rational::rat(-l, e.t as i64);
                (l.to_string(), r.numer().to_string(), r.denom().to_string())
            }
        };
        let _ = writeln!(out, "{},{b},{num},{den},{}", e.t, e.censored);
    }
    out
}

/// Adds `"decimal"` next to every `{"num", "den"}` pair with finite values.
pub fn add_decimals(v: &mut Value) {
    match v {
        Value::Object(map) => {
            let pair = map.len() == 2
                && map
                    .get("num")
                    .and_then(Value::as_str)
                    .and_then(|s| s.parse::<i64>().ok())
                    .is_some()
                && map
                    .get("den")
                    .and_then(Value::as_str)
                    .and_then(|s| s.parse::<i64>().ok())
                    .is_some();
            if pair {
                let n: i64 = map["num"].as_str().unwrap().parse().unwrap();
                let d: i64 = map["den"].as_str().unwrap().parse().unwrap();
                map.insert(
                    "decimal".into(),
                    Value::String(format!("{:.6}", n as f64 / d as f64)),
                );
            } else {
                map.values_mut().for_each(add_decimals);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(add_decimals),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DegValue;
    use crate::exponents::{ProfileEntry, ProfileKind};

    #[test]
    fn csv_encodes_neg_inf() {
        let p = ExponentProfile {
            kind: ProfileKind::Standard,
            m: 1,
            n: 1,
            t_max: 2,
            entries: vec![
                ProfileEntry {
                    t: 1,
                    b: DegValue::fin(-2),
                    censored: false,
                    exhausted: false,
                },
                ProfileEntry {
                    t: 2,
                    b: DegValue::NEG_INF,
                    censored: false,
                    exhausted: false,
                },
            ],
        };
        assert_eq!(
            profile_csv(&p),
            "T,B,minus_B_over_T_num,minus_B_over_T_den,censored\n1,-2,2,1,false\n2,-inf,inf,1,false\n"
        );
    }

    #[test]
    fn decimals_are_added_in_place() {
        let mut v =
            serde_json::json!({"x": {"num": "1", "den": "4"}, "y": [{"num": "inf", "den": "1"}]});
        add_decimals(&mut v);
        assert_eq!(v["x"]["decimal"], "0.250000");
        assert!(v["y"][0].get("decimal").is_none());
    }
}
