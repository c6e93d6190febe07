//! `bruteforce`: exhaustively evaluate every positive seed set up to the
//! budget with the exact oracle and print the optimum.

use rivalcast_core::diffusion::{exact_benefit, EXACT_EDGE_LIMIT};
use rivalcast_core::graph::{NodeId, SeedSet};

use crate::args::BruteforceArgs;
use crate::common::{load_instance, parse_rival_rule, resolve_rival, translate_ids};
use crate::error::{CliError, CliResult};

/// Cap on (subsets to evaluate) * 4^m so the command stays interactive.
const COST_LIMIT: f64 = 2e8;

fn count_subsets(n: usize, k: usize) -> f64 {
    let mut total = 0.0;
    let mut level = 1.0; // C(n, 0)
    for i in 0..=k.min(n) {
        total += level;
        level = level * (n - i) as f64 / (i + 1) as f64;
    }
    total
}

pub fn run(args: &BruteforceArgs) -> CliResult<()> {
    let (network, profile) = load_instance(
        &args.dataset,
        args.undirected,
        &args.prob_rule,
        args.weights.as_deref(),
        args.seed,
    )?;
    let n = network.node_count();
    let m = network.edge_count();
    if m > EXACT_EDGE_LIMIT {
        return Err(CliError::validation(format!(
            "instance too large for the exact oracle: {m} edges (limit {EXACT_EDGE_LIMIT})"
        )));
    }
    if n > 20 {
        return Err(CliError::validation(format!(
            "instance too large for subset enumeration: {n} nodes (limit 20)"
        )));
    }
    let cost = count_subsets(n, args.k) * 4f64.powi(m as i32);
    if cost > COST_LIMIT {
        return Err(CliError::validation(format!(
            "enumeration would cost ~{cost:.1e} oracle steps (limit {COST_LIMIT:.0e}); lower k or the graph size"
        )));
    }
    let rival_rule = parse_rival_rule(&args.rival)?;
    let s_r = SeedSet::rival(resolve_rival(&rival_rule, &network, args.seed)?);

    let mut best: Option<(Vec<NodeId>, f64, f64, f64)> = None;
    let mut evaluated = 0usize;
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize > args.k {
            continue;
        }
        let members: Vec<NodeId> = (0..n).filter(|&u| mask & (1 << u) != 0).collect();
        let s_p = SeedSet::positive(members.iter().copied());
        let res = exact_benefit(&network, &profile, &s_p, &s_r)?;
        evaluated += 1;
        if best.as_ref().map_or(true, |(_, f, _, _)| res.f > *f) {
            best = Some((members, res.f, res.w, res.z));
        }
    }
    let (members, f, w, z) = best.expect("the empty set is always evaluated");
    let original = translate_ids(&members, network.original_ids());
    println!(
        "best {}",
        original
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(";")
    );
    println!("f {f}");
    println!("w {w}");
    println!("z {z}");
    println!("evaluated {evaluated}");
    Ok(())
}
