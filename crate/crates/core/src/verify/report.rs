use std::fmt;

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    ReportOnlyPass,
    ReportOnlyFail,
    /// The check could not be evaluated (bad hypothesis, non-integral term, ...).
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
            Status::ReportOnlyPass => "REPORT-ONLY-PASS",
            Status::ReportOnlyFail => "REPORT-ONLY-FAIL",
            Status::Error => "ERROR",
        }
    }

    pub fn parse(s: &str) -> Option<Status> {
        [Status::Pass, Status::Fail, Status::Skipped, Status::ReportOnlyPass, Status::ReportOnlyFail, Status::Error]
            .into_iter()
            .find(|st| st.as_str() == s)
    }

    /// True for outcomes that make a suite exit nonzero.
    pub fn is_fatal(self) -> bool {
        matches!(self, Status::Fail | Status::Error)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub check: String,
    /// Parameters of this instance (character variant, n, r, ...); empty when there are none.
    pub variant: String,
    /// Field size, or None for prime-independent checks.
    pub q: Option<u64>,
    pub guard: String,
    pub guard_ok: bool,
    pub modulus: String,
    pub status: Status,
    pub lhs: Value,
    pub rhs: Value,
    pub millis: Option<u64>,
}

pub const COLUMNS: [&str; 9] = ["check", "variant", "q", "guard", "guard_ok", "modulus", "status", "lhs", "rhs"];

impl CheckReport {
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("check".into(), json!(self.check));
        m.insert("variant".into(), json!(self.variant));
        m.insert("q".into(), json!(self.q));
        m.insert("guard".into(), json!({ "rule": self.guard, "satisfied": self.guard_ok }));
        m.insert("modulus".into(), json!(self.modulus));
        m.insert("status".into(), json!(self.status.as_str()));
        m.insert("lhs".into(), self.lhs.clone());
        m.insert("rhs".into(), self.rhs.clone());
        m.insert("millis".into(), json!(self.millis));
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Option<CheckReport> {
        let o = v.as_object()?;
        let guard = o.get("guard")?;
        Some(CheckReport {
            check: o.get("check")?.as_str()?.to_string(),
            variant: o.get("variant")?.as_str()?.to_string(),
            q: match o.get("q")? {
                Value::Null => None,
                x => Some(x.as_u64()?),
            },
            guard: guard.get("rule")?.as_str()?.to_string(),
            guard_ok: guard.get("satisfied")?.as_bool()?,
            modulus: o.get("modulus")?.as_str()?.to_string(),
            status: Status::parse(o.get("status")?.as_str()?)?,
            lhs: o.get("lhs")?.clone(),
            rhs: o.get("rhs")?.clone(),
            millis: match o.get("millis") {
                None | Some(Value::Null) => None,
                Some(x) => Some(x.as_u64()?),
            },
        })
    }

    /// Cells in `COLUMNS` order, with witnesses as compact JSON.
    pub fn cells(&self) -> Vec<String> {
        vec![
            self.check.clone(),
            self.variant.clone(),
            self.q.map(|q| q.to_string()).unwrap_or_else(|| "-".into()),
            self.guard.clone(),
            self.guard_ok.to_string(),
            self.modulus.clone(),
            self.status.as_str().to_string(),
            self.lhs.to_string(),
            self.rhs.to_string(),
        ]
    }
}

/// Counts by status.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub report_only_pass: usize,
    pub report_only_fail: usize,
    pub error: usize,
}

impl Summary {
    pub fn of(reports: &[CheckReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
                Status::ReportOnlyPass => s.report_only_pass += 1,
                Status::ReportOnlyFail => s.report_only_fail += 1,
                Status::Error => s.error += 1,
            }
        }
        s
    }

    pub fn fatal(&self) -> bool {
        self.fail + self.error > 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass,
            "fail": self.fail,
            "skipped": self.skipped,
            "report_only_pass": self.report_only_pass,
            "report_only_fail": self.report_only_fail,
            "error": self.error,
        })
    }
}

/// A whole run: the invocation that produced it plus its rows.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub invocation: String,
    pub reports: Vec<CheckReport>,
}

impl SweepReport {
    pub fn summary(&self) -> Summary {
        Summary::of(&self.reports)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "invocation": self.invocation,
            "summary": self.summary().to_json(),
            "reports": self.reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(v: &Value) -> Option<SweepReport> {
        Some(SweepReport {
            invocation: v.get("invocation")?.as_str()?.to_string(),
            reports: v
                .get("reports")?
                .as_array()?
                .iter()
                .map(CheckReport::from_json)
                .collect::<Option<_>>()?,
        })
    }
}
