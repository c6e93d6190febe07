//! `bench`: wall-clock medians of solver runs across RR-set counts.

use std::fs;
use std::time::Instant;

use serde::Serialize;

use rivalcast_core::benefit::BenefitProfile;
use rivalcast_core::graph::{SeedSet, SocialNetwork};
use rivalcast_core::ris::RRCollection;
use rivalcast_core::streams::{derive_seed, named_stream};
use rivalcast_core::synthetic::weighted_cascade_network;

use crate::args::BenchArgs;
use crate::common::{parse_prob_rule, parse_rival_rule, resolve_rival};
use crate::error::{CliError, CliResult};

#[derive(Serialize)]
struct BenchRow {
    theta: usize,
    method: String,
    k: usize,
    runs: usize,
    median_solve_ms: f64,
    f_hat: f64,
}

fn median(mut values: Vec<f64>) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    }
}

pub fn run(args: &BenchArgs) -> CliResult<()> {
    if args.theta.is_empty() {
        return Err(CliError::validation("at least one theta is required"));
    }
    if args.runs == 0 {
        return Err(CliError::validation("runs must be at least 1"));
    }
    let network = match &args.dataset {
        Some(path) => {
            let rule = parse_prob_rule(&args.prob_rule)?;
            let (network, _) = SocialNetwork::load_edge_list(path, args.undirected, rule)?;
            network
        }
        None => weighted_cascade_network(200, 4.0, derive_seed(args.seed, "bench-graph"))?,
    };
    if args.k > network.node_count() {
        return Err(CliError::validation(format!(
            "budget {} exceeds node count {}",
            args.k,
            network.node_count()
        )));
    }
    let profile = BenefitProfile::generate_with(
        network.node_count(),
        &mut named_stream(args.seed, "weights"),
    );
    let rival_rule = parse_rival_rule(&args.rival)?;
    let s_r = SeedSet::rival(resolve_rival(&rival_rule, &network, args.seed)?);

    let mut rows = Vec::new();
    for &theta in &args.theta {
        if theta == 0 {
            return Err(CliError::validation("theta must be at least 1"));
        }
        let collection = RRCollection::build(
            &network,
            &profile,
            theta,
            theta,
            &mut named_stream(args.seed, &format!("bench-w/{theta}")),
            &mut named_stream(args.seed, &format!("bench-z/{theta}")),
        )?;
        for method in &args.method {
            let mut times = Vec::with_capacity(args.runs);
            let mut f_hat = 0.0;
            for run_idx in 0..args.runs {
                let started = Instant::now();
                let report = crate::commands::solve_one(
                    method,
                    args.k,
                    &network,
                    &collection,
                    &s_r,
                    0.1,
                    "alpha2",
                    derive_seed(args.seed, &format!("bench/{method}/{theta}/{run_idx}")),
                )?;
                times.push(started.elapsed().as_secs_f64() * 1e3);
                f_hat = report.f_hat;
            }
            let median_ms = median(times);
            println!(
                "theta={theta} method={method} k={} median {median_ms:.1} ms",
                args.k
            );
            rows.push(BenchRow {
                theta,
                method: method.clone(),
                k: args.k,
                runs: args.runs,
                median_solve_ms: median_ms,
                f_hat,
            });
        }
    }

    if let Some(parent) = args.out.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| CliError::io(format!("{}: {e}", parent.display())))?;
        }
    }
    let mut writer = csv::Writer::from_path(&args.out)?;
    for row in &rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(|e| CliError::io(e.to_string()))?;
    println!("wrote {} rows to {}", rows.len(), args.out.display());
    Ok(())
}
