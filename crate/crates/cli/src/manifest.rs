//! Provenance record written next to every artifact.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub timestamp: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: Vec<String>) -> Self {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        RunManifest { tool: "hfree", version: env!("CARGO_PKG_VERSION"), command, inputs: Vec::new(), outputs: Vec::new(), timestamp }
    }

    pub fn add_input(&mut self, path: &Path) {
        let sha256 = std::fs::read(path).map(|b| sha256_hex(&b)).unwrap_or_default();
        self.inputs.push(FileDigest { path: path.display().to_string(), sha256 });
    }

    pub fn add_output(&mut self, name: String, bytes: &[u8]) {
        self.outputs.push(FileDigest { path: name, sha256: sha256_hex(bytes) });
    }
}

/// `<out>.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}
