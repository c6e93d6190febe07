//! `sample`: load a dataset, fix weights and the rival seed set, sample the
//! RR-set collections, and persist everything with a manifest.

use std::fs;
use std::time::Instant;

use rivalcast_core::benefit::BenefitProfile;
use rivalcast_core::graph::SocialNetwork;
use rivalcast_core::ris::RRCollection;
use rivalcast_core::streams::named_stream;

use crate::args::SampleArgs;
use crate::common::{self, parse_prob_rule, parse_rival_rule, resolve_rival};
use crate::error::{CliError, CliResult};
use crate::manifest::{
    write_json_pretty, SampleManifest, COLLECTION_FILE, NETWORK_FILE, SAMPLE_MANIFEST_FILE,
};

pub fn run(args: &SampleArgs) -> CliResult<()> {
    if args.theta == 0 {
        return Err(CliError::validation("theta must be at least 1"));
    }
    let start = Instant::now();
    let rule = parse_prob_rule(&args.prob_rule)?;
    let (network, stats) = SocialNetwork::load_edge_list(&args.dataset, args.undirected, rule)?;
    if stats.dropped_self_loops > 0 {
        eprintln!(
            "warning: dropped {} self-loop line(s) from {}",
            stats.dropped_self_loops,
            args.dataset.display()
        );
    }
    let profile = match &args.weights {
        Some(path) => BenefitProfile::load_weights(path, network.node_count())?,
        None => BenefitProfile::generate_with(
            network.node_count(),
            &mut named_stream(args.seed, "weights"),
        ),
    };
    let rival_rule = parse_rival_rule(&args.rival)?;
    let rival_dense = resolve_rival(&rival_rule, &network, args.seed)?;

    let collection = RRCollection::build(
        &network,
        &profile,
        args.theta,
        args.theta,
        &mut named_stream(args.seed, "w-sampling"),
        &mut named_stream(args.seed, "z-sampling"),
    )?;

    fs::create_dir_all(&args.out)
        .map_err(|e| CliError::io(format!("{}: {e}", args.out.display())))?;
    let network_path = args.out.join(NETWORK_FILE);
    let collection_path = args.out.join(COLLECTION_FILE);
    network.write_snapshot(Some(&profile), &network_path)?;
    collection.write_json(&collection_path)?;

    let manifest = SampleManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        dataset: args.dataset.clone(),
        dataset_sha256: common::sha256_file(&args.dataset)?,
        undirected: args.undirected,
        prob_rule: args.prob_rule.clone(),
        weights_file: args.weights.clone(),
        weights_sha256: match &args.weights {
            Some(path) => Some(common::sha256_file(path)?),
            None => None,
        },
        theta: args.theta,
        lambda: collection.lambda(),
        mu: collection.mu(),
        seed: args.seed,
        rival_rule: args.rival.clone(),
        rival_original: common::translate_ids(&rival_dense, network.original_ids()),
        rival_dense,
        id_map: network.original_ids().to_vec(),
        network_file: NETWORK_FILE.to_string(),
        collection_file: COLLECTION_FILE.to_string(),
        network_sha256: common::sha256_file(&network_path)?,
        collection_sha256: common::sha256_file(&collection_path)?,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    write_json_pretty(&manifest, &args.out.join(SAMPLE_MANIFEST_FILE))?;

    println!(
        "sampled {} w-sets and {} z-sets over {} nodes into {}",
        manifest.lambda,
        manifest.mu,
        network.node_count(),
        args.out.display()
    );
    Ok(())
}
