//! Run manifests written next to every CLI output.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

use crate::ENGINE_VERSION;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Inputs, effective parameters and output digests of one run. Two runs
/// with the same inputs produce outputs with the same digests; only
/// `wall_ms` varies.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub engine_version: String,
    pub command: String,
    pub config: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec_digest: Option<String>,
    /// Snapping residual of every branch vector, physical units.
    pub residuals: Vec<[f64; 2]>,
    pub wall_ms: Vec<f64>,
    /// Output file name to SHA-256 of its bytes.
    pub outputs: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(command: impl Into<String>, config: serde_json::Value) -> Self {
        Self {
            engine_version: ENGINE_VERSION.to_string(),
            command: command.into(),
            config,
            ..Self::default()
        }
    }

    pub fn with_spec(mut self, spec_text: &[u8]) -> Self {
        self.spec_digest = Some(sha256_hex(spec_text));
        self
    }

    pub fn record_output(&mut self, name: impl Into<String>, bytes: &[u8]) {
        self.outputs.insert(name.into(), sha256_hex(bytes));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn manifest_records_outputs() {
        let mut m = RunManifest::new("grid run", serde_json::json!({"cap": 10}));
        m.record_output("a.pgm", b"abc");
        let back: RunManifest = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(back, m);
        assert!(back.engine_version.starts_with("pwt-core"));
    }
}
