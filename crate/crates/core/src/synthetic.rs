//! Seeded synthetic graph generators for tests, verification runs, and
//! benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::SocialNetwork;

/// A directed graph with exactly `m` distinct edges and both probability
/// maps drawn uniformly from `prob_range`.
pub fn random_network(
    n: usize,
    m: usize,
    prob_range: (f64, f64),
    seed: u64,
) -> Result<SocialNetwork> {
    if n < 2 && m > 0 {
        return Err(Error::InvalidParameter(
            "need at least two nodes to place edges".into(),
        ));
    }
    let max_edges = n * n.saturating_sub(1);
    if m > max_edges {
        return Err(Error::InvalidParameter(format!(
            "{m} edges requested but only {max_edges} ordered pairs exist"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)))
        .collect();
    pairs.shuffle(&mut rng);
    let rows = pairs
        .into_iter()
        .take(m)
        .map(|(s, t)| {
            let pp = rng.gen_range(prob_range.0..=prob_range.1);
            let pr = rng.gen_range(prob_range.0..=prob_range.1);
            (s, t, pp, pr)
        })
        .collect();
    SocialNetwork::new(n, rows)
}

/// A sparse directed graph where each ordered pair becomes an edge with
/// probability `avg_out_degree / (n - 1)`, probabilities set to the
/// reciprocal in-degree of the target (the weighted-cascade convention).
/// Nodes left with no incident edge are connected to their successor so the
/// id range stays dense.
pub fn weighted_cascade_network(n: usize, avg_out_degree: f64, seed: u64) -> Result<SocialNetwork> {
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two nodes".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p_edge = (avg_out_degree / (n - 1) as f64).clamp(0.0, 1.0);
    let mut present = std::collections::BTreeSet::new();
    for s in 0..n {
        for t in 0..n {
            if s != t && rng.gen::<f64>() < p_edge {
                present.insert((s, t));
            }
        }
    }
    let mut touched = vec![false; n];
    for &(s, t) in &present {
        touched[s] = true;
        touched[t] = true;
    }
    for u in 0..n {
        if !touched[u] {
            present.insert((u, (u + 1) % n));
        }
    }
    let mut in_deg = vec![0usize; n];
    for &(_, t) in &present {
        in_deg[t] += 1;
    }
    let rows = present
        .into_iter()
        .map(|(s, t)| {
            let p = 1.0 / in_deg[t] as f64;
            (s, t, p, p)
        })
        .collect();
    SocialNetwork::new(n, rows)
}
