//! Live-edge realizations, forward influence simulation, and ground-truth
//! oracles for the expected overall benefit.
//!
//! A realization keeps each edge independently with its cascade's
//! probability; diffusion from a seed set is then plain reachability over
//! the kept edges. `exact_benefit` enumerates every realization pair on tiny
//! graphs and is the reference the randomized estimators are tested against.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;

use crate::benefit::BenefitProfile;
use crate::error::{Error, Result};
use crate::graph::{Cascade, NodeId, SeedSet, SocialNetwork};

/// Edge budget for the exhaustive oracle: 4^12 ~ 1.7e7 realization pairs.
pub const EXACT_EDGE_LIMIT: usize = 12;
/// The exhaustive oracle tracks reachable sets as 64-bit masks.
pub const EXACT_NODE_LIMIT: usize = 64;

/// A live-edge subgraph sampled from one cascade's probability map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    live: Vec<bool>,
    cascade: Cascade,
}

impl Realization {
    /// Build a realization from an explicit set of live edge indices.
    pub fn from_live_edges(
        network: &SocialNetwork,
        live_edges: &[usize],
        cascade: Cascade,
    ) -> Result<Self> {
        let mut live = vec![false; network.edge_count()];
        for &e in live_edges {
            if e >= live.len() {
                return Err(Error::InvalidParameter(format!(
                    "edge index {e} out of range for {} edges",
                    live.len()
                )));
            }
            live[e] = true;
        }
        Ok(Realization { live, cascade })
    }

    pub fn cascade(&self) -> Cascade {
        self.cascade
    }

    pub fn is_live(&self, edge: usize) -> bool {
        self.live[edge]
    }

    pub fn live_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.live
            .iter()
            .enumerate()
            .filter_map(|(i, &l)| l.then_some(i))
    }

    pub fn live_count(&self) -> usize {
        self.live.iter().filter(|&&l| l).count()
    }
}

/// Keep each edge independently with its probability under `cascade`.
pub fn sample_realization<R: Rng>(
    network: &SocialNetwork,
    cascade: Cascade,
    rng: &mut R,
) -> Realization {
    let live = (0..network.edge_count())
        .map(|e| rng.gen::<f64>() < network.probability(e, cascade))
        .collect();
    Realization { live, cascade }
}

/// Nodes reachable from the seed set over live edges (seeds included).
pub fn reachable_set(
    network: &SocialNetwork,
    realization: &Realization,
    seeds: &SeedSet,
) -> BTreeSet<NodeId> {
    let mut visited = vec![false; network.node_count()];
    let mut queue: VecDeque<NodeId> = VecDeque::new();
    for &s in seeds.members() {
        if !visited[s] {
            visited[s] = true;
            queue.push_back(s);
        }
    }
    let mut reach = BTreeSet::new();
    while let Some(u) = queue.pop_front() {
        reach.insert(u);
        for &(edge, v) in network.out_edges(u) {
            if realization.is_live(edge) && !visited[v] {
                visited[v] = true;
                queue.push_back(v);
            }
        }
    }
    reach
}

/// Overall benefit of one realization pair: `p(u)` for nodes reached only by
/// the positive cascade, `q(u)` for nodes reached by both.
pub fn per_realization_benefit(
    reach_p: &BTreeSet<NodeId>,
    reach_r: &BTreeSet<NodeId>,
    profile: &BenefitProfile,
) -> f64 {
    let mut total = 0.0;
    for &u in reach_p {
        if reach_r.contains(&u) {
            total += profile.q(u);
        } else {
            total += profile.p(u);
        }
    }
    total
}

/// Exact expected overall benefit together with its two components:
/// `w` (expected benefit ignoring the rival) and `z` (expected loss on
/// doubly-activated nodes), with `f = w - z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactBenefit {
    pub f: f64,
    pub w: f64,
    pub z: f64,
}

struct EnumeratedCascade {
    /// (probability, reachable-set mask) per realization with nonzero weight.
    outcomes: Vec<(f64, u64)>,
}

/// Enumerate all 2^m realizations of one cascade, recording the probability
/// and the reachable set of `seeds` as a node mask. Zero-probability masks
/// (edges with probability 1 that are removed) are skipped.
fn enumerate_cascade(
    network: &SocialNetwork,
    seeds: &SeedSet,
    cascade: Cascade,
) -> EnumeratedCascade {
    let m = network.edge_count();
    let n = network.node_count();
    let mut outcomes = Vec::with_capacity(1usize << m);
    let mut visited = vec![false; n];
    let mut stack: Vec<NodeId> = Vec::with_capacity(n);
    for mask in 0u64..(1u64 << m) {
        let mut prob = 1.0;
        for e in 0..m {
            let pe = network.probability(e, cascade);
            prob *= if mask & (1 << e) != 0 { pe } else { 1.0 - pe };
            if prob == 0.0 {
                break;
            }
        }
        if prob == 0.0 {
            continue;
        }
        // reachability over edges present in `mask`
        visited.iter_mut().for_each(|v| *v = false);
        stack.clear();
        for &s in seeds.members() {
            if !visited[s] {
                visited[s] = true;
                stack.push(s);
            }
        }
        let mut reach: u64 = 0;
        while let Some(u) = stack.pop() {
            reach |= 1 << u;
            for &(edge, v) in network.out_edges(u) {
                if mask & (1 << edge) != 0 && !visited[v] {
                    visited[v] = true;
                    stack.push(v);
                }
            }
        }
        outcomes.push((prob, reach));
    }
    EnumeratedCascade { outcomes }
}

/// Exhaustive oracle: sums the overall benefit over every realization pair,
/// weighted by the pair's probability. Cost grows as 4^m, so the edge count
/// is capped at [`EXACT_EDGE_LIMIT`].
pub fn exact_benefit(
    network: &SocialNetwork,
    profile: &BenefitProfile,
    s_p: &SeedSet,
    s_r: &SeedSet,
) -> Result<ExactBenefit> {
    let m = network.edge_count();
    let n = network.node_count();
    if m > EXACT_EDGE_LIMIT {
        return Err(Error::TooLargeForExact {
            what: "edges",
            got: m,
            limit: EXACT_EDGE_LIMIT,
        });
    }
    if n > EXACT_NODE_LIMIT {
        return Err(Error::TooLargeForExact {
            what: "nodes",
            got: n,
            limit: EXACT_NODE_LIMIT,
        });
    }
    s_p.validate(n)?;
    s_r.validate(n)?;

    let positive = enumerate_cascade(network, s_p, Cascade::Positive);
    let rival = enumerate_cascade(network, s_r, Cascade::Rival);

    let mut w = 0.0;
    for &(prob, reach) in &positive.outcomes {
        let mut sum = 0.0;
        let mut bits = reach;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            sum += profile.p(u);
            bits &= bits - 1;
        }
        w += prob * sum;
    }

    let mut f = 0.0;
    let mut z = 0.0;
    for &(prob_p, reach_p) in &positive.outcomes {
        for &(prob_r, reach_r) in &rival.outcomes {
            let weight = prob_p * prob_r;
            let mut benefit = 0.0;
            let mut loss = 0.0;
            let mut bits = reach_p;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                if reach_r & (1 << u) != 0 {
                    benefit += profile.q(u);
                    loss += profile.l(u);
                } else {
                    benefit += profile.p(u);
                }
                bits &= bits - 1;
            }
            f += weight * benefit;
            z += weight * loss;
        }
    }
    Ok(ExactBenefit { f, w, z })
}

/// Monte-Carlo estimate of `f`, `w`, and `z` from independently sampled
/// realization pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McBenefit {
    pub f: f64,
    pub w: f64,
    pub z: f64,
    pub samples: usize,
}

pub fn monte_carlo_benefit<R: Rng>(
    network: &SocialNetwork,
    profile: &BenefitProfile,
    s_p: &SeedSet,
    s_r: &SeedSet,
    samples: usize,
    rng: &mut R,
) -> Result<McBenefit> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be positive".into()));
    }
    s_p.validate(network.node_count())?;
    s_r.validate(network.node_count())?;
    let mut f_sum = 0.0;
    let mut w_sum = 0.0;
    let mut z_sum = 0.0;
    for _ in 0..samples {
        let g = sample_realization(network, Cascade::Positive, rng);
        let g_r = sample_realization(network, Cascade::Rival, rng);
        let reach_p = reachable_set(network, &g, s_p);
        let reach_r = reachable_set(network, &g_r, s_r);
        f_sum += per_realization_benefit(&reach_p, &reach_r, profile);
        w_sum += reach_p.iter().map(|&u| profile.p(u)).sum::<f64>();
        z_sum += reach_p
            .intersection(&reach_r)
            .map(|&u| profile.l(u))
            .sum::<f64>();
    }
    let inv = 1.0 / samples as f64;
    Ok(McBenefit {
        f: f_sum * inv,
        w: w_sum * inv,
        z: z_sum * inv,
        samples,
    })
}

/// Mean of [`per_realization_benefit`] over sampled realization pairs; an
/// unbiased estimator of the expected overall benefit.
pub fn monte_carlo_f<R: Rng>(
    network: &SocialNetwork,
    profile: &BenefitProfile,
    s_p: &SeedSet,
    s_r: &SeedSet,
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    monte_carlo_benefit(network, profile, s_p, s_r, samples, rng).map(|est| est.f)
}

/// Expected influence spread of `seeds` under the positive cascade,
/// estimated by Monte Carlo: the overall benefit with unit `p`, zero `q`,
/// and no rival.
pub fn sigma<R: Rng>(
    network: &SocialNetwork,
    seeds: &SeedSet,
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    let unit = BenefitProfile::unit(network.node_count());
    let no_rival = SeedSet::rival([]);
    monte_carlo_f(network, &unit, seeds, &no_rival, samples, rng)
}
