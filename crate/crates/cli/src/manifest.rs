//! Run manifests: everything needed to reproduce a sample or solve run
//! bit-exactly (seeds, parameters, and content hashes of the artifacts).

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const NETWORK_FILE: &str = "network.json";
pub const COLLECTION_FILE: &str = "collection.json";
pub const SAMPLE_MANIFEST_FILE: &str = "manifest.json";
pub const SOLVE_MANIFEST_FILE: &str = "solve_manifest.json";
pub const RESULTS_FILE: &str = "results.csv";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleManifest {
    pub tool_version: String,
    pub dataset: PathBuf,
    pub dataset_sha256: String,
    pub undirected: bool,
    pub prob_rule: String,
    pub weights_file: Option<PathBuf>,
    pub weights_sha256: Option<String>,
    pub theta: usize,
    pub lambda: usize,
    pub mu: usize,
    pub seed: u64,
    pub rival_rule: String,
    /// Rival seeds resolved at sample time, dense ids.
    pub rival_dense: Vec<usize>,
    /// The same seeds in the dataset's original ids.
    pub rival_original: Vec<u64>,
    /// Dense id -> original id.
    pub id_map: Vec<u64>,
    pub network_file: String,
    pub collection_file: String,
    pub network_sha256: String,
    pub collection_sha256: String,
    /// Wall-clock time of the sampling run; informational only and not part
    /// of the reproducible surface.
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveManifest {
    pub tool_version: String,
    /// Directory holding the sample manifest and snapshots.
    pub collection_dir: PathBuf,
    pub dataset_sha256: String,
    pub network_sha256: String,
    pub collection_sha256: String,
    pub budgets: Vec<usize>,
    pub methods: Vec<String>,
    pub delta: f64,
    pub alpha: String,
    pub seed: u64,
}

pub fn write_json_pretty<T: Serialize>(value: &T, path: &Path) -> CliResult<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    fs::write(path, bytes).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let bytes = fs::read(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    serde_json::from_slice(&bytes).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}
