use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A published value that disagrees with the computation but is not
    /// treated as ground truth.
    InformationalMismatch,
}

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Stated in the source text; stored in the fixtures file.
    Published,
    /// Recomputed at run time by an independent method.
    Oracle,
    /// Forced by definitions (class equation, orthogonality, ...).
    Definition,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    /// Fixtures entry behind a published check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub key: Option<String>,
    pub anchor: String,
    pub computed: Value,
    pub expected: Value,
    pub provenance: Provenance,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub scenario: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, scenario: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            scenario: scenario.to_string(),
            checks: Vec::new(),
        }
    }

    /// Hard check: fails unless `computed == expected`.
    pub fn hard(&mut self, anchor: impl Into<String>, computed: Value, expected: Value, provenance: Provenance) -> bool {
        let ok = computed == expected;
        self.checks.push(Check {
            key: None,
            anchor: anchor.into(),
            computed,
            expected,
            provenance,
            status: if ok { Status::Pass } else { Status::Fail },
        });
        ok
    }

    /// Soft check: a mismatch is reported but never fails the suite.
    pub fn informational(&mut self, anchor: impl Into<String>, computed: Value, expected: Value, provenance: Provenance) -> bool {
        let ok = computed == expected;
        self.checks.push(Check {
            key: None,
            anchor: anchor.into(),
            computed,
            expected,
            provenance,
            status: if ok { Status::Pass } else { Status::InformationalMismatch },
        });
        ok
    }

    /// Checks read from one fixtures entry.
    pub fn keyed(&self, key: &str) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.key.as_deref() == Some(key)).collect()
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    pub fn mismatches(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::InformationalMismatch).collect()
    }

    pub fn passes(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn summary(&self) -> String {
        let n = self.checks.len();
        let fails = self.failures().len();
        let info = self.mismatches().len();
        match (fails, info) {
            (0, 0) => format!("PASS {}: {n}/{n} checks", self.suite),
            (0, k) => format!("PASS {}: {n} checks, {k} informational mismatch(es)", self.suite),
            (f, k) => format!("FAIL {}: {f} of {n} checks failed, {k} informational mismatch(es)", self.suite),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

fn cell(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    s.replace('|', "\\|")
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Markdown => {
            let mut s = String::new();
            let _ = writeln!(s, "# Suite `{}` on scenario `{}`\n", r.suite, r.scenario);
            let _ = writeln!(s, "| status | anchor | computed | expected | provenance |");
            let _ = writeln!(s, "|---|---|---|---|---|");
            for c in &r.checks {
                let status = serde_json::to_value(c.status).expect("status serializes");
                let prov = serde_json::to_value(c.provenance).expect("provenance serializes");
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} |",
                    cell(&status),
                    c.anchor.replace('|', "\\|"),
                    cell(&c.computed),
                    cell(&c.expected),
                    cell(&prov)
                );
            }
            let _ = writeln!(s, "\n{}", r.summary());
            s
        }
    }
}
