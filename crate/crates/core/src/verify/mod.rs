//! Named verification suites. Each suite recomputes a group of published
//! facts from a scenario and records one check per fact.

mod fixtures;
mod linear;
pub mod props;
mod report;
pub mod scenario;
mod torus;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::groups::GroupError;
use crate::modules::ModuleError;
use crate::rep::RepError;
use crate::torus::{msod_census, CensusEntry, TorusError};

pub use fixtures::{Fixtures, FIXTURES_ENV};
pub use report::{emit_report, Check, Format, Provenance, Report, Status, SCHEMA_VERSION};
pub use scenario::{bundled_names, bundled_scenario, load_scenario, parse_scenario, Model, ScenarioError, ScenarioSpec};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}; known suites: {known}", known = SUITES.join(", "))]
    UnknownSuite(String),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("suite {suite} needs {needed}, scenario {scenario:?} does not provide it")]
    WrongModel {
        suite: String,
        scenario: String,
        needed: String,
    },
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("fixtures: {0}")]
    Fixture(String),
}

pub const SUITES: [&str; 11] = [
    "rep-theory",
    "fm-images",
    "ext-table",
    "ext-lemma",
    "exceptional-collection",
    "local-assembly",
    "m2xm2-local",
    "type-c",
    "surfaces",
    "s3",
    "descent",
];

/// `fixed-loci` is accepted for `type-c`.
pub fn canonical_suite(name: &str) -> Option<&'static str> {
    match name {
        "fixed-loci" => Some("type-c"),
        n => SUITES.iter().find(|s| **s == n).copied(),
    }
}

/// Runs `suite` against `spec` with the fixtures named by the environment
/// (or the bundled copy).
pub fn run_suite(spec: &ScenarioSpec, suite: &str, torsion: Option<u32>) -> Result<Report, VerifyError> {
    let fixtures = Fixtures::load()?;
    run_suite_with(spec, suite, torsion, &fixtures)
}

pub fn run_suite_with(
    spec: &ScenarioSpec,
    suite: &str,
    torsion: Option<u32>,
    fixtures: &Fixtures,
) -> Result<Report, VerifyError> {
    let name = canonical_suite(suite).ok_or_else(|| VerifyError::UnknownSuite(suite.to_string()))?;
    let mut ctx = Ctx::new(name, &spec.name, fixtures);
    match name {
        "rep-theory" => linear::rep_theory(&mut ctx, spec)?,
        "fm-images" => linear::fm_images(&mut ctx, spec)?,
        "ext-table" => linear::ext_table(&mut ctx, spec)?,
        "ext-lemma" => linear::ext_lemma(&mut ctx, spec)?,
        "exceptional-collection" => linear::exceptional_collection(&mut ctx, spec)?,
        "local-assembly" => linear::local_assembly(&mut ctx, spec)?,
        "m2xm2-local" => linear::m2xm2_local(&mut ctx, spec)?,
        "type-c" => torus::type_c(&mut ctx, spec, torsion)?,
        "surfaces" => torus::surfaces(&mut ctx, spec, torsion)?,
        "s3" => torus::s3(&mut ctx, spec, torsion)?,
        "descent" => torus::descent(&mut ctx, spec, torsion)?,
        _ => unreachable!("SUITES and the dispatch agree"),
    }
    Ok(ctx.report)
}

/// Per-suite state: the report under construction and the fixture section
/// that published checks read from.
pub(crate) struct Ctx<'a> {
    pub report: Report,
    fixtures: &'a Fixtures,
    section: &'static str,
}

impl<'a> Ctx<'a> {
    fn new(suite: &'static str, scenario: &str, fixtures: &'a Fixtures) -> Self {
        Ctx {
            report: Report::new(suite, scenario),
            fixtures,
            section: suite,
        }
    }

    pub fn wrong_model(&self, scenario: &str, needed: &str) -> VerifyError {
        VerifyError::WrongModel {
            suite: self.report.suite.clone(),
            scenario: scenario.to_string(),
            needed: needed.to_string(),
        }
    }

    pub fn expected(&self, key: &str) -> Result<Value, VerifyError> {
        Ok(self.fixtures.entry(self.section, key)?.0)
    }

    fn anchor(&self, key: &str, title: &str) -> Result<String, VerifyError> {
        let (_, quote) = self.fixtures.entry(self.section, key)?;
        Ok(format!("{title} [\"{quote}\"]"))
    }

    /// Hard check against a published value, after `normalize`.
    pub fn published_with(
        &mut self,
        key: &str,
        title: &str,
        computed: Value,
        normalize: impl Fn(Value) -> Value,
    ) -> Result<bool, VerifyError> {
        let anchor = self.anchor(key, title)?;
        let expected = normalize(self.expected(key)?);
        let ok = self.report.hard(anchor, computed, expected, Provenance::Published);
        self.tag(key);
        Ok(ok)
    }

    pub fn published(&mut self, key: &str, title: &str, computed: Value) -> Result<bool, VerifyError> {
        self.published_with(key, title, computed, |v| v)
    }

    /// A published value that is reported but not trusted.
    pub fn published_soft_with(
        &mut self,
        key: &str,
        title: &str,
        computed: Value,
        normalize: impl Fn(Value) -> Value,
    ) -> Result<bool, VerifyError> {
        let anchor = self.anchor(key, title)?;
        let expected = normalize(self.expected(key)?);
        let ok = self.report.informational(anchor, computed, expected, Provenance::Published);
        self.tag(key);
        Ok(ok)
    }

    pub fn published_soft(&mut self, key: &str, title: &str, computed: Value) -> Result<bool, VerifyError> {
        self.published_soft_with(key, title, computed, |v| v)
    }

    fn tag(&mut self, key: &str) {
        if let Some(c) = self.report.checks.last_mut() {
            c.key = Some(key.to_string());
        }
    }

    pub fn oracle(&mut self, title: &str, computed: Value, expected: Value) -> bool {
        self.report.hard(title, computed, expected, Provenance::Oracle)
    }

    pub fn definition(&mut self, title: &str, computed: Value, expected: Value) -> bool {
        self.report.hard(title, computed, expected, Provenance::Definition)
    }
}

/// Fixed-locus census of every action in a scenario, or the fixed
/// dimensions of a linear group's classes.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioCensus {
    pub scenario: String,
    pub torsion: Option<u32>,
    pub actions: Vec<ActionCensus>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ActionCensus {
    pub name: String,
    pub group_order: usize,
    pub entries: Vec<CensusEntry>,
    /// `(dimension, coarse components)`, highest dimension first.
    pub totals: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LinearClassRow {
    pub class: usize,
    pub representative: String,
    pub class_size: usize,
    pub fixed_dimension: usize,
}

pub fn census(spec: &ScenarioSpec, torsion: Option<u32>) -> Result<Value, VerifyError> {
    match &spec.model {
        Model::Torus(t) => {
            let mut actions = Vec::new();
            let mut used = None;
            for a in &t.actions {
                let n = torsion.or(t.torsion).unwrap_or_else(|| a.action.default_torsion());
                used = Some(n);
                let entries = msod_census(&a.action, n)?;
                let totals = crate::torus::components_by_dimension(&entries);
                actions.push(ActionCensus {
                    name: a.name.clone(),
                    group_order: a.action.group().order(),
                    entries,
                    totals,
                });
            }
            let out = ScenarioCensus {
                scenario: spec.name.clone(),
                torsion: torsion.or(t.torsion).or(used),
                actions,
            };
            Ok(serde_json::to_value(out).expect("census serializes"))
        }
        Model::Linear(l) => {
            let cs = l.group.classes();
            let rows: Vec<LinearClassRow> = cs
                .classes
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let e = l.group.element(c.representative);
                    LinearClassRow {
                        class: k,
                        representative: e.to_string(),
                        class_size: c.size(),
                        fixed_dimension: e.fixed_dimension(),
                    }
                })
                .collect();
            Ok(serde_json::json!({
                "scenario": spec.name,
                "group_order": l.group.order(),
                "classes": rows,
            }))
        }
    }
}
