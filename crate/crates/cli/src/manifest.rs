//! Run manifests: resolved config echo, RNG identifier, per-stage timings,
//! and checksums of every report file.

use crate::config::ResolvedConfig;
use circlaw_core::ensembles::RNG_ALGORITHM;
use circlaw_core::{Error, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub artifact_version: String,
    pub rng_algorithm: String,
    pub config: ResolvedConfig,
    pub status: String,
    /// Stage name to wall-clock milliseconds.
    pub timings_ms: BTreeMap<String, u128>,
    /// File name to SHA-256 of its contents.
    pub checksums: BTreeMap<String, String>,
}

/// Write `contents` to `path` atomically: temp name in the same directory,
/// then rename. Never leaves partial files under the final name.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents)
        .map_err(|e| Error::Numerical(format!("write {}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, path)
        .map_err(|e| Error::Numerical(format!("rename to {}: {e}", path.display())))?;
    Ok(())
}

fn sha256_hex(data: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(data.as_bytes());
    format!("{:x}", hasher.finalize())
}

/// Collects report files and timings for one run and finalizes the manifest.
pub struct RunWriter {
    dir: PathBuf,
    manifest: RunManifest,
    started: Instant,
}

impl RunWriter {
    /// Create the output directory and write a preliminary manifest so that
    /// an interrupted run is visibly incomplete.
    pub fn begin(config: ResolvedConfig) -> Result<Self> {
        let dir = config.output_dir.clone();
        std::fs::create_dir_all(&dir)
            .map_err(|e| Error::Precondition(format!("create {}: {e}", dir.display())))?;
        let manifest = RunManifest {
            schema_version: SCHEMA_VERSION,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            rng_algorithm: RNG_ALGORITHM.to_string(),
            config,
            status: "running".into(),
            timings_ms: BTreeMap::new(),
            checksums: BTreeMap::new(),
        };
        let writer = Self { dir, manifest, started: Instant::now() };
        writer.flush_manifest()?;
        Ok(writer)
    }

    fn flush_manifest(&self) -> Result<()> {
        let body = serde_json::to_string_pretty(&self.manifest)
            .map_err(|e| Error::Numerical(format!("manifest serialization: {e}")))?;
        write_atomic(&self.dir.join("manifest.json"), &body)
    }

    /// Write one report file atomically and record its checksum.
    pub fn emit(&mut self, name: &str, contents: &str) -> Result<()> {
        write_atomic(&self.dir.join(name), contents)?;
        self.manifest.checksums.insert(name.to_string(), sha256_hex(contents));
        Ok(())
    }

    /// Record the elapsed time since the previous stage mark.
    pub fn mark_stage(&mut self, stage: &str) {
        let elapsed = self.started.elapsed().as_millis();
        let prior: u128 = self.manifest.timings_ms.values().sum();
        self.manifest.timings_ms.insert(stage.to_string(), elapsed - prior);
    }

    pub fn finish(mut self) -> Result<()> {
        self.manifest.status = "complete".into();
        self.flush_manifest()
    }
}
