//! Reproducibility manifests: a run's argument vector, seed, tool version,
//! and output checksum, enough to replay it and verify the result.
//!
//! Replaying the recorded `argv` reproduces the checksummed output bit for
//! bit — Monte Carlo subcommands included, because their seeds are explicit
//! arguments with pinned defaults. The timestamp is informational only and
//! deliberately excluded from the checksum.

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Lowercase hex SHA-256 of a string.
pub fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize)]
struct Manifest {
    schema_version: u32,
    subcommand: String,
    /// Exact argument vector, program name excluded.
    argv: Vec<String>,
    /// RNG seed, for subcommands that draw random fixtures or samples.
    seed: Option<u64>,
    version: String,
    /// Wall-clock seconds since the Unix epoch; not part of the checksum.
    timestamp_unix: u64,
    /// `sha256:<hex>` over the canonical (compact) output JSON.
    checksum: String,
}

/// Write the manifest for the current invocation.
pub fn write(
    path: &Path,
    subcommand: &str,
    seed: Option<u64>,
    checksum_hex: &str,
) -> Result<(), String> {
    let manifest = Manifest {
        schema_version: 1,
        subcommand: subcommand.to_string(),
        argv: std::env::args().skip(1).collect(),
        seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        checksum: format!("sha256:{checksum_hex}"),
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(path, text + "\n").map_err(|e| format!("cannot write {}: {e}", path.display()))
}
