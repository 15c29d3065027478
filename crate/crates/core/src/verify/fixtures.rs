use std::path::Path;

use serde_json::{Map, Value};

use super::VerifyError;

/// Directory holding an `expected.json` that replaces the bundled one.
pub const FIXTURES_ENV: &str = "MSOD_FIXTURES_DIR";

const BUNDLED: &str = include_str!("../../fixtures/expected.json");

/// Published values, keyed by suite then by check. Every entry carries the
/// value and a short quotation locating it in the source text.
#[derive(Debug, Clone)]
pub struct Fixtures {
    root: Map<String, Value>,
}

impl Fixtures {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled fixtures parse")
    }

    pub fn load() -> Result<Self, VerifyError> {
        match std::env::var_os(FIXTURES_ENV) {
            Some(dir) => Self::from_dir(Path::new(&dir)),
            None => Ok(Self::bundled()),
        }
    }

    pub fn from_dir(dir: &Path) -> Result<Self, VerifyError> {
        let path = dir.join("expected.json");
        let src = std::fs::read_to_string(&path)
            .map_err(|e| VerifyError::Fixture(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&src)
    }

    pub fn parse(src: &str) -> Result<Self, VerifyError> {
        match serde_json::from_str(src) {
            Ok(Value::Object(root)) => Ok(Fixtures { root }),
            Ok(_) => Err(VerifyError::Fixture("top level must be an object".into())),
            Err(e) => Err(VerifyError::Fixture(e.to_string())),
        }
    }

    /// `(value, quote)` of one entry.
    pub fn entry(&self, section: &str, key: &str) -> Result<(Value, String), VerifyError> {
        let e = self
            .root
            .get(section)
            .and_then(|s| s.get(key))
            .ok_or_else(|| VerifyError::Fixture(format!("missing entry {section}.{key}")))?;
        let value = e
            .get("value")
            .cloned()
            .ok_or_else(|| VerifyError::Fixture(format!("{section}.{key} has no value")))?;
        let quote = e.get("quote").and_then(Value::as_str).unwrap_or_default().to_string();
        Ok((value, quote))
    }
}
