//! Scenario files. A scenario carries exactly one model: a linear group on
//! the plane with named modules, or a list of named torus actions.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::arith::lattice::IntMatrix;
use crate::arith::{Cyclotomic, Rational};
use crate::g422;
use crate::groups::{FiniteGroup, GroupElement, LinearElement, TorusElement};
use crate::linalg::Matrix;
use crate::modules::{quotient_module, EquivariantModule, LinearGroup, Poly};
use crate::rep::{character_table, CharacterTable};
use crate::torus::{realify, torsion_point, Cm, TorusAction};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid scenario: {}", .0.join("; "))]
    Validation(Vec<String>),
}

const BUNDLED: [(&str, &str); 6] = [
    ("g422-local", include_str!("../../scenarios/g422-local.json")),
    ("m2xm2-local", include_str!("../../scenarios/m2xm2-local.json")),
    ("type-c", include_str!("../../scenarios/type-c.json")),
    ("surfaces", include_str!("../../scenarios/surfaces.json")),
    ("s3", include_str!("../../scenarios/s3.json")),
    ("descent", include_str!("../../scenarios/descent.json")),
];

/// Names of the scenarios compiled into the crate.
pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

pub fn bundled_scenario(name: &str) -> Option<Result<ScenarioSpec, ScenarioError>> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, src)| parse_scenario(src))
}

/// Loads a scenario file. A path that does not exist but names a bundled
/// scenario loads the bundled copy.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<ScenarioSpec, ScenarioError> {
    let path = path.as_ref();
    if !path.exists() {
        if let Some(spec) = path.to_str().and_then(bundled_scenario) {
            return spec;
        }
    }
    let src = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_scenario(&src)
}

pub fn parse_scenario(src: &str) -> Result<ScenarioSpec, ScenarioError> {
    let raw: RawScenario = serde_json::from_str(src).map_err(|e| ScenarioError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    raw.build()
}

#[derive(Debug, Clone)]
pub struct ScenarioSpec {
    pub name: String,
    pub description: String,
    pub model: Model,
}

#[derive(Debug, Clone)]
pub enum Model {
    Linear(LinearModel),
    Torus(TorusModel),
}

impl ScenarioSpec {
    pub fn kind(&self) -> &'static str {
        match self.model {
            Model::Linear(_) => "linear",
            Model::Torus(_) => "torus",
        }
    }
}

#[derive(Debug, Clone)]
pub struct LinearModel {
    pub group: Arc<LinearGroup>,
    pub table: CharacterTable,
    /// Labelling scheme of `table`, if a known one was requested.
    pub labels: Option<String>,
    pub modules: Vec<(String, EquivariantModule)>,
    pub collection: Vec<String>,
    pub assembly: Vec<String>,
    /// Reference module for the branch-wise local checks, if any.
    pub union: Option<String>,
}

impl LinearModel {
    pub fn module(&self, name: &str) -> Option<&EquivariantModule> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn collection_modules(&self) -> Vec<EquivariantModule> {
        self.collection.iter().map(|n| self.module(n).expect("validated").clone()).collect()
    }

    pub fn assembly_modules(&self) -> Vec<EquivariantModule> {
        self.assembly.iter().map(|n| self.module(n).expect("validated").clone()).collect()
    }
}

#[derive(Debug, Clone)]
pub struct TorusModel {
    pub torsion: Option<u32>,
    pub actions: Vec<NamedAction>,
    pub isogenies: Vec<(String, IntMatrix)>,
}

impl TorusModel {
    pub fn action(&self, name: &str) -> Option<&NamedAction> {
        self.actions.iter().find(|a| a.name == name)
    }

    pub fn isogeny(&self, name: &str) -> Option<&IntMatrix> {
        self.isogenies.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

#[derive(Debug, Clone)]
pub struct NamedAction {
    pub name: String,
    pub action: TorusAction,
    pub generators: Vec<(String, TorusElement)>,
    /// Labelled elements, typically one per conjugacy class.
    pub elements: Vec<(String, TorusElement)>,
}

impl NamedAction {
    pub fn element(&self, label: &str) -> Option<&TorusElement> {
        self.elements.iter().find(|(n, _)| n == label).map(|(_, e)| e)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: String,
    #[serde(default)]
    description: String,
    linear: Option<RawLinear>,
    torus: Option<RawTorus>,
}

/// A cyclotomic literal: an integer, an expression such as `"1/2 + i"`,
/// or explicit coefficients in the power basis of `ℚ(ζ_N)`.
#[derive(Deserialize, Clone)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
    Record { conductor: u32, coeffs: Vec<Scalar> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLinear {
    generators: Vec<Vec<Vec<Scalar>>>,
    #[serde(default = "default_bound")]
    bound: usize,
    labels: Option<String>,
    #[serde(default)]
    modules: Vec<RawModule>,
    #[serde(default)]
    collection: Vec<String>,
    #[serde(default)]
    assembly: Vec<String>,
    union: Option<String>,
}

fn default_bound() -> usize {
    1024
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    name: String,
    ideal: Vec<String>,
    twist: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTorus {
    torsion: Option<u32>,
    actions: Vec<RawAction>,
    #[serde(default)]
    isogenies: Vec<RawIsogeny>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCm {
    Named(String),
    Matrix(Vec<Vec<i64>>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    name: String,
    factors: usize,
    cm: Vec<RawCm>,
    generators: Vec<RawElement>,
    /// Translations adjoined to the generators, one value `u + vτ` per factor.
    #[serde(default)]
    translation_subgroup: Vec<Vec<Scalar>>,
    /// `[label, word]` pairs; a word is a product of generator names such
    /// as `"-alpha*beta"`.
    #[serde(default)]
    elements: Vec<(String, String)>,
    #[serde(default = "default_bound")]
    bound: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElement {
    name: String,
    /// `g×g` matrix over the CM orders.
    linear: Option<Vec<Vec<Scalar>>>,
    /// `2g×2g` integer matrix in real coordinates.
    real: Option<Vec<Vec<i64>>>,
    translation: Option<Vec<Scalar>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIsogeny {
    name: String,
    cm: Vec<RawCm>,
    linear: Vec<Vec<Scalar>>,
}

impl Scalar {
    fn value(&self) -> Result<Cyclotomic, String> {
        match self {
            Scalar::Int(n) => Ok(Cyclotomic::from_int(*n)),
            Scalar::Text(s) => {
                let p = Poly::parse(s).map_err(|e| format!("{s:?}: {e}"))?;
                if p.degree().unwrap_or(0) > 0 {
                    return Err(format!("{s:?} is not a constant"));
                }
                Ok(p.coeff(0, 0))
            }
            Scalar::Record { conductor, coeffs } => {
                let qs = coeffs
                    .iter()
                    .map(|c| {
                        c.value()?
                            .as_rational()
                            .cloned()
                            .ok_or_else(|| "coefficients must be rational".to_string())
                    })
                    .collect::<Result<Vec<Rational>, String>>()?;
                Cyclotomic::new(*conductor, qs).map_err(|e| e.to_string())
            }
        }
    }
}

fn cm_of(raw: &RawCm) -> Result<Cm, String> {
    match raw {
        RawCm::Named(n) => match n.as_str() {
            "gaussian" => Ok(Cm::gaussian()),
            "eisenstein" => Ok(Cm::eisenstein()),
            "generic" => Ok(Cm::Generic),
            other => Err(format!("unknown CM type {other:?}")),
        },
        RawCm::Matrix(m) => Cm::from_matrix(IntMatrix::from_rows(m)).map_err(|e| e.to_string()),
    }
}

fn matrix_of(rows: &[Vec<Scalar>]) -> Result<Vec<Vec<Cyclotomic>>, String> {
    rows.iter().map(|r| r.iter().map(Scalar::value).collect()).collect()
}

impl RawScenario {
    fn build(self) -> Result<ScenarioSpec, ScenarioError> {
        let model = match (self.linear, self.torus) {
            (Some(l), None) => Model::Linear(l.build()?),
            (None, Some(t)) => Model::Torus(t.build()?),
            (Some(_), Some(_)) => {
                return Err(ScenarioError::Validation(vec!["both linear and torus sections present".into()]))
            }
            (None, None) => return Err(ScenarioError::Validation(vec!["no linear or torus section".into()])),
        };
        Ok(ScenarioSpec {
            name: self.name,
            description: self.description,
            model,
        })
    }
}

impl RawLinear {
    fn build(self) -> Result<LinearModel, ScenarioError> {
        let mut errors = Vec::new();
        let mut gens = Vec::new();
        for (k, g) in self.generators.iter().enumerate() {
            match matrix_of(g).map(Matrix::from_rows).and_then(|m| LinearElement::new(m).map_err(|e| e.to_string())) {
                Ok(e) => gens.push(e),
                Err(e) => errors.push(format!("linear.generators[{k}]: {e}")),
            }
        }
        if !errors.is_empty() {
            return Err(ScenarioError::Validation(errors));
        }
        let group = FiniteGroup::generate(&gens, self.bound)
            .map_err(|e| ScenarioError::Validation(vec![format!("linear.generators: {e}")]))?;
        let group = Arc::new(group);
        let table = match self.labels.as_deref() {
            Some("g422") => g422::labeled_table(&group),
            Some(other) => return Err(ScenarioError::Validation(vec![format!("linear.labels: unknown scheme {other:?}")])),
            None => character_table(&group),
        }
        .map_err(|e| ScenarioError::Validation(vec![format!("character table: {e}")]))?;

        let mut modules: Vec<(String, EquivariantModule)> = Vec::new();
        for (k, m) in self.modules.iter().enumerate() {
            if modules.iter().any(|(n, _)| *n == m.name) {
                errors.push(format!("linear.modules[{k}]: duplicate name {:?}", m.name));
                continue;
            }
            let ideal: Result<Vec<Poly>, String> =
                m.ideal.iter().map(|s| Poly::parse(s).map_err(|e| format!("{s:?}: {e}"))).collect();
            let ideal = match ideal {
                Ok(i) => i,
                Err(e) => {
                    errors.push(format!("linear.modules[{k}].ideal: {e}"));
                    continue;
                }
            };
            let twist = match &m.twist {
                None => None,
                Some(label) => match table.realization(label) {
                    Some(r) => Some(r),
                    None => {
                        errors.push(format!("linear.modules[{k}].twist: unknown irreducible {label:?}"));
                        continue;
                    }
                },
            };
            match quotient_module(&group, &ideal, twist) {
                Ok(module) => modules.push((m.name.clone(), module.with_name(m.name.clone()))),
                Err(e) => errors.push(format!("linear.modules[{k}] ({}): {e}", m.name)),
            }
        }
        let known = |n: &String| modules.iter().any(|(m, _)| m == n);
        for (field, names) in [("collection", &self.collection), ("assembly", &self.assembly)] {
            for n in names.iter().filter(|n| !known(n)) {
                errors.push(format!("linear.{field}: unknown module {n:?}"));
            }
        }
        if let Some(n) = self.union.as_ref().filter(|n| !known(n)) {
            errors.push(format!("linear.union: unknown module {n:?}"));
        }
        if !errors.is_empty() {
            return Err(ScenarioError::Validation(errors));
        }
        Ok(LinearModel {
            group,
            table,
            labels: self.labels,
            modules,
            collection: self.collection,
            assembly: self.assembly,
            union: self.union,
        })
    }
}

impl RawTorus {
    fn build(self) -> Result<TorusModel, ScenarioError> {
        let mut errors = Vec::new();
        let mut actions = Vec::new();
        for (k, a) in self.actions.iter().enumerate() {
            match a.build() {
                Ok(na) => actions.push(na),
                Err(e) => errors.push(format!("torus.actions[{k}] ({}): {e}", a.name)),
            }
        }
        let mut isogenies = Vec::new();
        for (k, iso) in self.isogenies.iter().enumerate() {
            let built = iso
                .cm
                .iter()
                .map(cm_of)
                .collect::<Result<Vec<Cm>, String>>()
                .and_then(|cm| realify(&matrix_of(&iso.linear)?, &cm).map_err(|e| e.to_string()));
            match built {
                Ok(m) => isogenies.push((iso.name.clone(), m)),
                Err(e) => errors.push(format!("torus.isogenies[{k}] ({}): {e}", iso.name)),
            }
        }
        if self.torsion == Some(0) {
            errors.push("torus.torsion: must be positive".into());
        }
        if !errors.is_empty() {
            return Err(ScenarioError::Validation(errors));
        }
        Ok(TorusModel {
            torsion: self.torsion,
            actions,
            isogenies,
        })
    }
}

impl RawAction {
    fn build(&self) -> Result<NamedAction, String> {
        if self.cm.len() != self.factors {
            return Err(format!("{} CM entries for {} factors", self.cm.len(), self.factors));
        }
        let cm: Vec<Cm> = self.cm.iter().map(cm_of).collect::<Result<_, _>>()?;
        let dim = 2 * self.factors;
        let mut generators = Vec::new();
        for g in &self.generators {
            let linear = match (&g.linear, &g.real) {
                (Some(m), None) => realify(&matrix_of(m)?, &cm).map_err(|e| format!("{}: {e}", g.name))?,
                (None, Some(m)) => IntMatrix::from_rows(m),
                (None, None) => IntMatrix::identity(dim),
                (Some(_), Some(_)) => return Err(format!("{}: both linear and real given", g.name)),
            };
            let translation = match &g.translation {
                Some(t) => {
                    let vals: Vec<Cyclotomic> = t.iter().map(Scalar::value).collect::<Result<_, _>>()?;
                    torsion_point(&vals, &cm).map_err(|e| format!("{}: {e}", g.name))?.coords().to_vec()
                }
                None => vec![Rational::zero(); dim],
            };
            if linear.rows() != dim || translation.len() != dim {
                return Err(format!("{}: expected dimension {dim}", g.name));
            }
            let e = TorusElement::new(linear, translation).map_err(|e| format!("{}: {e}", g.name))?;
            generators.push((g.name.clone(), e));
        }
        for (k, t) in self.translation_subgroup.iter().enumerate() {
            let vals: Vec<Cyclotomic> = t.iter().map(Scalar::value).collect::<Result<_, _>>()?;
            let p = torsion_point(&vals, &cm).map_err(|e| format!("translation_subgroup[{k}]: {e}"))?;
            generators.push((format!("t{k}"), TorusElement::translation_by(p.coords().to_vec())));
        }
        let gens: Vec<TorusElement> = generators.iter().map(|(_, e)| e.clone()).collect();
        let action = TorusAction::generate(&gens, cm, self.bound).map_err(|e| e.to_string())?;
        let mut elements = Vec::new();
        for (label, word) in &self.elements {
            let e = evaluate_word(word, &generators, dim).map_err(|e| format!("elements.{label}: {e}"))?;
            if !action.group().contains(&e) {
                return Err(format!("elements.{label}: not in the group"));
            }
            elements.push((label.clone(), e));
        }
        Ok(NamedAction {
            name: self.name.clone(),
            action,
            generators,
            elements,
        })
    }
}

/// `"id"`, or `[-]name*name*...`, where a leading minus multiplies by `−1`.
fn evaluate_word(word: &str, generators: &[(String, TorusElement)], dim: usize) -> Result<TorusElement, String> {
    let word = word.trim();
    let (negate, rest) = match word.strip_prefix('-') {
        Some(r) => (true, r.trim()),
        None => (false, word),
    };
    let mut out = TorusElement::translation_by(vec![Rational::zero(); dim]);
    if rest != "id" {
        for name in rest.split('*').map(str::trim) {
            let g = generators
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, e)| e)
                .ok_or_else(|| format!("unknown generator {name:?}"))?;
            out = out.compose(g).map_err(|e| e.to_string())?;
        }
    }
    if negate {
        let mut m = IntMatrix::identity(dim);
        for i in 0..dim {
            m.set(i, i, -1);
        }
        let minus = TorusElement::linear_only(m).map_err(|e| e.to_string())?;
        out = minus.compose(&out).map_err(|e| e.to_string())?;
    }
    Ok(out)
}
