//! `solve`: run the configured methods over a persisted collection and write
//! one deterministic CSV row per (method, budget), a JSON report per row,
//! and a solve manifest that reproduces the run bit-exactly.
//!
//! Wall-clock timings are recorded in the JSON reports only; the CSV is
//! fully reproducible from the manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use rivalcast_core::graph::{SeedSet, SocialNetwork};
use rivalcast_core::ris::RRCollection;
use rivalcast_core::solver::SolverReport;
use rivalcast_core::streams::derive_seed;

use crate::args::SolveArgs;
use crate::common::{self, translate_ids};
use crate::error::{CliError, CliResult};
use crate::manifest::{
    read_json, write_json_pretty, SampleManifest, SolveManifest, RESULTS_FILE,
    SAMPLE_MANIFEST_FILE, SOLVE_MANIFEST_FILE,
};

pub const METHODS: [&str; 6] = [
    "modmod1",
    "modmod2",
    "greedy",
    "infmax",
    "maxdegree",
    "random",
];

/// One CSV row. Baselines leave the certificate columns empty.
#[derive(Debug, Serialize, Deserialize)]
pub struct ResultRow {
    pub method: String,
    pub k: usize,
    pub solution_size: usize,
    /// Original node ids joined with `;`.
    pub solution: String,
    pub f_hat: f64,
    pub f_lower: f64,
    pub pi_hat: Option<f64>,
    pub ratio: Option<f64>,
    pub iterations: usize,
}

/// The JSON report written per row: run parameters plus the full solver
/// report (which carries wall-clock time and the iterate history).
#[derive(Debug, Serialize, Deserialize)]
pub struct ReportFile {
    pub method: String,
    pub k: usize,
    pub delta: f64,
    pub alpha: String,
    pub solve_seed: u64,
    pub solution_original: Vec<u64>,
    pub rival_original: Vec<u64>,
    pub report: SolverReport,
}

struct ResolvedRun {
    dir: PathBuf,
    sample: SampleManifest,
    network: SocialNetwork,
    collection: RRCollection,
    budgets: Vec<usize>,
    methods: Vec<String>,
    delta: f64,
    alpha: String,
    seed: u64,
}

fn load_collection_dir(dir: &Path) -> CliResult<(SampleManifest, SocialNetwork, RRCollection)> {
    let sample: SampleManifest = read_json(&dir.join(SAMPLE_MANIFEST_FILE))?;
    let network_path = dir.join(&sample.network_file);
    let collection_path = dir.join(&sample.collection_file);
    // refuse to run on artifacts that do not match their manifest
    let network_hash = common::sha256_file(&network_path)?;
    if network_hash != sample.network_sha256 {
        return Err(CliError::validation(format!(
            "{} does not match its manifest hash",
            network_path.display()
        )));
    }
    let collection_hash = common::sha256_file(&collection_path)?;
    if collection_hash != sample.collection_sha256 {
        return Err(CliError::validation(format!(
            "{} does not match its manifest hash",
            collection_path.display()
        )));
    }
    let (network, profile) = SocialNetwork::read_snapshot(&network_path)?;
    if profile.is_none() {
        return Err(CliError::validation(format!(
            "{} carries no node weights",
            network_path.display()
        )));
    }
    let collection = RRCollection::read_json(&collection_path)?;
    Ok((sample, network, collection))
}

fn resolve(args: &SolveArgs) -> CliResult<ResolvedRun> {
    if let Some(manifest_path) = &args.manifest {
        let solve: SolveManifest = read_json(manifest_path)?;
        // the stored dir is canonical, but fall back to resolving relative
        // to the manifest for trees that were moved as a whole
        let mut candidates = vec![solve.collection_dir.clone()];
        if let Some(parent) = manifest_path.parent() {
            candidates.push(parent.join(&solve.collection_dir));
        }
        let dir = candidates
            .iter()
            .find(|dir| dir.join(SAMPLE_MANIFEST_FILE).is_file())
            .cloned()
            .ok_or_else(|| {
                CliError::io(format!(
                    "collection directory {} from the solve manifest was not found",
                    solve.collection_dir.display()
                ))
            })?;
        let (sample, network, collection) = load_collection_dir(&dir)?;
        for (name, got, want) in [
            ("dataset", &sample.dataset_sha256, &solve.dataset_sha256),
            ("network", &sample.network_sha256, &solve.network_sha256),
            (
                "collection",
                &sample.collection_sha256,
                &solve.collection_sha256,
            ),
        ] {
            if got != want {
                return Err(CliError::validation(format!(
                    "solve manifest {name} hash does not match the collection"
                )));
            }
        }
        Ok(ResolvedRun {
            dir,
            sample,
            network,
            collection,
            budgets: solve.budgets,
            methods: solve.methods,
            delta: solve.delta,
            alpha: solve.alpha,
            seed: solve.seed,
        })
    } else {
        let dir = args.collection.clone().expect("clap enforces the group");
        let (sample, network, collection) = load_collection_dir(&dir)?;
        let seed = args.seed.unwrap_or(sample.seed);
        Ok(ResolvedRun {
            dir,
            sample,
            network,
            collection,
            budgets: args.k.clone(),
            methods: args.method.clone(),
            delta: args.delta,
            alpha: args.alpha.clone(),
            seed,
        })
    }
}

fn run_method(method: &str, k: usize, run: &ResolvedRun, s_r: &SeedSet) -> CliResult<SolverReport> {
    let row_seed = derive_seed(run.seed, &format!("solve/{method}/k={k}"));
    crate::commands::solve_one(
        method,
        k,
        &run.network,
        &run.collection,
        s_r,
        run.delta,
        &run.alpha,
        row_seed,
    )
}

pub fn run(args: &SolveArgs) -> CliResult<()> {
    let run = resolve(args)?;
    if run.budgets.is_empty() {
        return Err(CliError::validation("at least one budget is required"));
    }
    let n = run.network.node_count();
    if let Some(&bad) = run.budgets.iter().find(|&&k| k > n) {
        return Err(CliError::validation(format!(
            "budget {bad} exceeds node count {n}"
        )));
    }
    for method in &run.methods {
        if !METHODS.contains(&method.as_str()) {
            return Err(CliError::validation(format!(
                "unknown method {method:?} (expected one of {METHODS:?})"
            )));
        }
    }

    let s_r = SeedSet::rival(run.sample.rival_dense.iter().copied());
    let reports_dir = args.out.join("reports");
    fs::create_dir_all(&reports_dir)
        .map_err(|e| CliError::io(format!("{}: {e}", reports_dir.display())))?;

    let mut rows = Vec::new();
    for method in &run.methods {
        for &k in &run.budgets {
            let report = run_method(method, k, &run, &s_r)?;
            rows.push(ResultRow {
                method: method.clone(),
                k,
                solution_size: report.solution.len(),
                solution: translate_ids(&report.solution, &run.sample.id_map)
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(";"),
                f_hat: report.f_hat,
                f_lower: report.f_lower,
                pi_hat: report.pi_hat,
                ratio: report.ratio,
                iterations: report.iterations,
            });
            let file = ReportFile {
                method: method.clone(),
                k,
                delta: run.delta,
                alpha: run.alpha.clone(),
                solve_seed: run.seed,
                solution_original: translate_ids(&report.solution, &run.sample.id_map),
                rival_original: run.sample.rival_original.clone(),
                report,
            };
            write_json_pretty(&file, &reports_dir.join(format!("{method}_k{k}.json")))?;
        }
    }

    let csv_path = args.out.join(RESULTS_FILE);
    let mut writer = csv::Writer::from_path(&csv_path)?;
    for row in &rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(|e| CliError::io(e.to_string()))?;

    let solve_manifest = SolveManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        collection_dir: run.dir.canonicalize().unwrap_or_else(|_| run.dir.clone()),
        dataset_sha256: run.sample.dataset_sha256.clone(),
        network_sha256: run.sample.network_sha256.clone(),
        collection_sha256: run.sample.collection_sha256.clone(),
        budgets: run.budgets.clone(),
        methods: run.methods.clone(),
        delta: run.delta,
        alpha: run.alpha.clone(),
        seed: run.seed,
    };
    write_json_pretty(&solve_manifest, &args.out.join(SOLVE_MANIFEST_FILE))?;

    // quick console summary, best f_hat per budget
    let mut best: BTreeMap<usize, (&str, f64)> = BTreeMap::new();
    for row in &rows {
        let entry = best.entry(row.k).or_insert((&row.method, row.f_hat));
        if row.f_hat > entry.1 {
            *entry = (&row.method, row.f_hat);
        }
    }
    println!("wrote {} rows to {}", rows.len(), csv_path.display());
    for (k, (method, f)) in best {
        println!("k={k}: best f_hat {f:.4} ({method})");
    }
    Ok(())
}
