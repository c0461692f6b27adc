//! Run manifests: enough provenance to regenerate any output file.
//!
//! Every emitted JSON artifact embeds the manifest of the run that
//! produced it: the subcommand, the full argument list, the seed, a
//! SHA-256 digest per input file, the tool version and the output paths.
//! Nothing time-dependent goes in, so re-running the same command on the
//! same inputs reproduces every output byte for byte.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::WindrankError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    pub tool_version: String,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, argv: Vec<String>, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            argv,
            seed,
            inputs: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: Vec::new(),
        }
    }

    /// Record an input file and its content digest.
    pub fn add_input(&mut self, path: &Path) -> Result<(), WindrankError> {
        let bytes = std::fs::read(path).map_err(|e| WindrankError::io(path, e))?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        Ok(())
    }

    pub fn add_output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digests_are_stable() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("input.csv");
        std::fs::write(&file, b"hello").unwrap();
        let mut a = RunManifest::new("rank", vec!["--data".into(), "input.csv".into()], 7);
        a.add_input(&file).unwrap();
        let mut b = RunManifest::new("rank", vec!["--data".into(), "input.csv".into()], 7);
        b.add_input(&file).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            a.inputs[0].sha256,
            "2cf24dba5fb0a30e26e83b2ac5b9e29e1b161e5c1fa7425e73043362938b9824"
        );
    }
}
