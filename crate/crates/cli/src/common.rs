//! Helpers shared by the subcommands: probability-rule and rival-rule
//! parsing, dataset loading, file hashing, and id translation.

use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use rivalcast_core::benefit::BenefitProfile;
use rivalcast_core::graph::{NodeId, ProbabilityRule, SocialNetwork};
use rivalcast_core::streams::named_stream;

use crate::error::{CliError, CliResult};

pub fn parse_prob_rule(text: &str) -> CliResult<ProbabilityRule> {
    match text {
        "indeg" => Ok(ProbabilityRule::InDegreeReciprocal),
        "explicit" => Ok(ProbabilityRule::ExplicitColumns),
        other => {
            if let Some(value) = other.strip_prefix("const:") {
                let c: f64 = value.parse().map_err(|_| {
                    CliError::validation(format!("bad constant probability {value:?}"))
                })?;
                Ok(ProbabilityRule::Constant(c))
            } else {
                Err(CliError::validation(format!(
                    "unknown probability rule {other:?} (expected indeg, explicit, or const:<p>)"
                )))
            }
        }
    }
}

/// How the rival seed set is chosen. The experiments fix the rival before
/// any sampling happens, so the rule is resolved to concrete ids at sample
/// time and recorded in the manifest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RivalRule {
    TopOutDegree(usize),
    Random(usize),
    /// Original (pre-remap) node ids.
    Ids(Vec<u64>),
}

pub fn parse_rival_rule(text: &str) -> CliResult<RivalRule> {
    if let Some(r) = text.strip_prefix("top:") {
        let r: usize = r
            .parse()
            .map_err(|_| CliError::validation(format!("bad rival count in {text:?}")))?;
        return Ok(RivalRule::TopOutDegree(r));
    }
    if let Some(r) = text.strip_prefix("random:") {
        let r: usize = r
            .parse()
            .map_err(|_| CliError::validation(format!("bad rival count in {text:?}")))?;
        return Ok(RivalRule::Random(r));
    }
    if let Some(list) = text.strip_prefix("ids:") {
        let ids = list
            .split(',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| CliError::validation(format!("bad rival id {t:?}")))
            })
            .collect::<CliResult<Vec<u64>>>()?;
        return Ok(RivalRule::Ids(ids));
    }
    Err(CliError::validation(format!(
        "unknown rival rule {text:?} (expected top:<r>, random:<r>, or ids:<a,b,...>)"
    )))
}

/// Resolve a rival rule to dense node ids.
pub fn resolve_rival(
    rule: &RivalRule,
    network: &SocialNetwork,
    seed: u64,
) -> CliResult<Vec<NodeId>> {
    match rule {
        RivalRule::TopOutDegree(r) => {
            if *r > network.node_count() {
                return Err(CliError::validation(format!(
                    "rival size {r} exceeds node count {}",
                    network.node_count()
                )));
            }
            let mut nodes: Vec<NodeId> = (0..network.node_count()).collect();
            nodes.sort_by(|&a, &b| {
                network
                    .out_degree(b)
                    .cmp(&network.out_degree(a))
                    .then(a.cmp(&b))
            });
            let mut picked: Vec<NodeId> = nodes.into_iter().take(*r).collect();
            picked.sort_unstable();
            Ok(picked)
        }
        RivalRule::Random(r) => {
            if *r > network.node_count() {
                return Err(CliError::validation(format!(
                    "rival size {r} exceeds node count {}",
                    network.node_count()
                )));
            }
            let mut rng = named_stream(seed, "rival");
            let mut picked: Vec<NodeId> = rand_seq_sample(&mut rng, network.node_count(), *r);
            picked.sort_unstable();
            Ok(picked)
        }
        RivalRule::Ids(originals) => originals
            .iter()
            .map(|&orig| {
                network.dense_id(orig).ok_or_else(|| {
                    CliError::validation(format!("rival id {orig} is not a node of the dataset"))
                })
            })
            .collect(),
    }
}

fn rand_seq_sample(rng: &mut impl rand::Rng, n: usize, k: usize) -> Vec<NodeId> {
    rand::seq::index::sample(rng, n, k).into_iter().collect()
}

pub fn translate_ids(dense: &[NodeId], id_map: &[u64]) -> Vec<u64> {
    dense.iter().map(|&u| id_map[u]).collect()
}

pub fn sha256_file(path: impl AsRef<Path>) -> CliResult<String> {
    let bytes = fs::read(path.as_ref())
        .map_err(|e| CliError::io(format!("{}: {e}", path.as_ref().display())))?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    Ok(hex::encode(hasher.finalize()))
}

/// Load a dataset plus its weights, either from a pinned weights file or
/// from the named `weights` stream of the master seed.
pub fn load_instance(
    dataset: &Path,
    undirected: bool,
    prob_rule: &str,
    weights: Option<&Path>,
    seed: u64,
) -> CliResult<(SocialNetwork, BenefitProfile)> {
    let rule = parse_prob_rule(prob_rule)?;
    let (network, stats) = SocialNetwork::load_edge_list(dataset, undirected, rule)?;
    if stats.dropped_self_loops > 0 {
        eprintln!(
            "warning: dropped {} self-loop line(s) from {}",
            stats.dropped_self_loops,
            dataset.display()
        );
    }
    let profile = match weights {
        Some(path) => BenefitProfile::load_weights(path, network.node_count())?,
        None => {
            BenefitProfile::generate_with(network.node_count(), &mut named_stream(seed, "weights"))
        }
    };
    Ok((network, profile))
}

/// Translate a comma list of original ids to dense ids.
pub fn dense_ids(originals: &[u64], network: &SocialNetwork) -> CliResult<Vec<NodeId>> {
    originals
        .iter()
        .map(|&orig| {
            network
                .dense_id(orig)
                .ok_or_else(|| CliError::validation(format!("node id {orig} not in the dataset")))
        })
        .collect()
}
