//! Suite reports: one entry per verified identity, rendered as JSON or text.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use transgression_core::checks::{Check, Expect, Residual, Status};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ResidualSummary {
    /// Exact residual: number of nonzero coefficients and where the first
    /// one sits (form degree, q-exponent in q^{1/24} units).
    Exact { nonzero: usize, first_degree: Option<u32>, first_q_exp: Option<i64> },
    Numeric { max_abs: f64, tol: f64 },
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub id: String,
    pub anchor: String,
    /// `pass`, `fail` or `skipped`.
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// `zero` for identities, `nonzero` for sharpness witnesses.
    pub expect: &'static str,
    pub residual: ResidualSummary,
    /// The job that produced the entry; runtimes are keyed by it.
    pub group: String,
}

impl Entry {
    pub fn from_check(c: &Check, group: &str) -> Self {
        let (status, reason) = match &c.status {
            Status::Pass => ("pass", None),
            Status::Fail => ("fail", None),
            Status::Skipped(r) => ("skipped", Some(r.clone())),
        };
        let residual = match &c.residual {
            Residual::Exact(s) => ResidualSummary::Exact {
                nonzero: s.nonzero,
                first_degree: s.first.map(|f| f.0),
                first_q_exp: s.first.map(|f| f.1),
            },
            Residual::Numeric { max_abs, tol } => ResidualSummary::Numeric { max_abs: *max_abs, tol: *tol },
            Residual::None => ResidualSummary::None,
        };
        Entry {
            id: c.id.clone(),
            anchor: c.anchor.clone(),
            status,
            reason,
            expect: match c.expect {
                Expect::Zero => "zero",
                Expect::Nonzero => "nonzero",
            },
            residual,
            group: group.to_string(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

/// Fields that differ between otherwise identical runs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Volatile {
    pub timestamp_unix: u64,
    pub runtime_ms: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub config: BTreeMap<String, Value>,
    pub summary: Summary,
    pub entries: Vec<Entry>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub volatile: Option<Volatile>,
}

impl SuiteReport {
    /// Sorts entries by id and fills in the summary.
    pub fn new(suite: &str, seed: u64, config: BTreeMap<String, Value>, mut entries: Vec<Entry>, notes: Vec<String>) -> Self {
        entries.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary { total: entries.len(), ..Summary::default() };
        for e in &entries {
            match e.status {
                "pass" => summary.pass += 1,
                "fail" => summary.fail += 1,
                _ => summary.skipped += 1,
            }
        }
        SuiteReport { suite: suite.to_string(), seed, config, summary, entries, notes, volatile: None }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    /// One line per entry, then notes and the summary line.
    pub fn to_text(&self) -> String {
        let mut s = format!("suite {} (seed {})\n", self.suite, self.seed);
        for e in &self.entries {
            let res = match &e.residual {
                ResidualSummary::Exact { nonzero: 0, .. } => "exact residual 0".to_string(),
                ResidualSummary::Exact { nonzero, first_degree, first_q_exp } => format!(
                    "exact residual {} coefficient(s), first at degree {} q^({}/24)",
                    nonzero,
                    first_degree.unwrap_or(0),
                    first_q_exp.unwrap_or(0)
                ),
                ResidualSummary::Numeric { max_abs, tol } => format!("residual {:.3e} (tol {:.1e})", max_abs, tol),
                ResidualSummary::None => String::new(),
            };
            let tag = match e.status {
                "pass" => "PASS",
                "fail" => "FAIL",
                _ => "SKIP",
            };
            s.push_str(&format!("{} {}: {}", tag, e.id, e.anchor));
            if e.expect == "nonzero" {
                s.push_str(" [expected nonzero]");
            }
            if !res.is_empty() {
                s.push_str(&format!(" | {}", res));
            }
            if let Some(r) = &e.reason {
                s.push_str(&format!(" | {}", r));
            }
            s.push('\n');
        }
        for n in &self.notes {
            s.push_str(&format!("note: {}\n", n));
        }
        s.push_str(&format!(
            "{} identities: {} passed, {} failed, {} skipped\n",
            self.summary.total, self.summary.pass, self.summary.fail, self.summary.skipped
        ));
        s
    }
}
