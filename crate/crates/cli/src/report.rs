//! Check records and their JSON/CSV rendering.

use serde::Serialize;

pub const SCHEMA: &str = "cliffgauge-report/1";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub check: String,
    pub anchor: String,
    pub suite: String,
    pub trials: usize,
    pub tolerance: f64,
    /// `None` when a trial produced NaN.
    pub max_abs_error: Option<f64>,
    pub pass: bool,
    /// Wall time of the check group; only kept with `--timings` so reports
    /// stay byte-reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub order: usize,
    pub chi: String,
    pub tolerance_override: Option<f64>,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: String, seed: u64, trials: usize, order: usize, chi: String, tol: Option<f64>, records: Vec<Record>) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        let summary = Summary { checks: records.len(), passed, failed: records.len() - passed, pass: passed == records.len() };
        Report {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION"),
            suite,
            seed,
            trials,
            order,
            chi,
            tolerance_override: tol,
            records,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let timed = self.records.iter().any(|r| r.wall_time_s.is_some());
        let mut s = format!("# schema={} version={} seed={}\n", SCHEMA, self.version, self.seed);
        s += "check,anchor,suite,trials,tolerance,max_abs_error,pass";
        s += if timed { ",wall_time_s\n" } else { "\n" };
        for r in &self.records {
            let err = r.max_abs_error.map_or("nan".to_string(), |e| format!("{e:e}"));
            s += &format!("{},{},{},{},{:e},{},{}", r.check, r.anchor, r.suite, r.trials, r.tolerance, err, r.pass);
            if timed {
                s += &format!(",{:.6}", r.wall_time_s.unwrap_or(0.0));
            }
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(pass: bool) -> Record {
        Record {
            check: "x.y".into(),
            anchor: "gen:cond".into(),
            suite: "x".into(),
            trials: 3,
            tolerance: 1e-12,
            max_abs_error: Some(2e-13),
            pass,
            wall_time_s: None,
            error: None,
        }
    }

    #[test]
    fn summary_counts() {
        let r = Report::new("all".into(), 7, 3, 2, "minus".into(), None, vec![record(true), record(false)]);
        assert_eq!((r.summary.passed, r.summary.failed, r.summary.pass), (1, 1, false));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["schema"], SCHEMA);
        assert!(json["records"][0].get("wall_time_s").is_none());
    }

    #[test]
    fn csv_layout() {
        let r = Report::new("all".into(), 7, 3, 2, "minus".into(), None, vec![record(true)]);
        let csv = r.to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert!(lines[0].starts_with("# schema="));
        assert_eq!(lines[2], "x.y,gen:cond,x,3,1e-12,2e-13,true");
    }
}
