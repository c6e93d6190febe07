//! Tight modular bounds for submodular coverage objectives.
//!
//! Both RR-set estimators are weighted coverage functions: `b(S) = weight *
//! |{sets S intersects}|`. For such a `b` and an anchor set `X` this module
//! builds
//!
//! - two modular upper bounds (`modular_upper_1`, `modular_upper_2`), both
//!   tight at `X`, built from singleton marginals against `X`, the empty
//!   set, and `V \ {j}`;
//! - a modular lower bound (`modular_lower`) from prefix marginals along a
//!   permutation whose prefix is `X`, also tight at `X`.
//!
//! Marginals are batch-computed from the inverted index in one pass over
//! the sets rather than through repeated oracle evaluations; the naive
//! oracle evaluation is kept as `value_of` and the two routes are checked
//! against each other in the tests.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::ris::RRCollection;

/// A permutation of all nodes whose first `prefix_len` positions hold the
/// anchor set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationOrder {
    order: Vec<NodeId>,
    position: Vec<usize>,
    prefix_len: usize,
}

impl PermutationOrder {
    pub fn new(order: Vec<NodeId>, prefix: &BTreeSet<NodeId>) -> Result<Self> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (i, &u) in order.iter().enumerate() {
            if u >= n || position[u] != usize::MAX {
                return Err(Error::InvalidParameter(
                    "order is not a permutation of the node range".into(),
                ));
            }
            position[u] = i;
        }
        if prefix.len() > n || !prefix.iter().all(|&u| u < n && position[u] < prefix.len()) {
            return Err(Error::PrefixMismatch);
        }
        Ok(PermutationOrder {
            order,
            position,
            prefix_len: prefix.len(),
        })
    }

    pub fn order(&self) -> &[NodeId] {
        &self.order
    }

    pub fn position(&self, u: NodeId) -> usize {
        self.position[u]
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix_len
    }

    fn matches_prefix(&self, x: &BTreeSet<NodeId>) -> bool {
        x.len() == self.prefix_len && x.iter().all(|&u| self.position[u] < self.prefix_len)
    }
}

/// Weighted coverage objective: `b(S) = weight * |{i : sets[i] hits S}|`.
#[derive(Debug, Clone)]
pub struct CoverageOracle {
    node_count: usize,
    weight: f64,
    sets: Vec<Vec<NodeId>>,
    covering: Vec<Vec<u32>>,
    /// Per node: number of sets whose member list is exactly `{j}`, i.e. the
    /// marginal against `V \ {j}` in set counts.
    lone_cover: Vec<u32>,
}

impl CoverageOracle {
    pub fn new(node_count: usize, weight: f64, sets: Vec<Vec<NodeId>>) -> Self {
        let mut covering = vec![Vec::new(); node_count];
        let mut lone_cover = vec![0u32; node_count];
        for (i, members) in sets.iter().enumerate() {
            for &u in members {
                covering[u].push(i as u32);
            }
            if members.len() == 1 {
                lone_cover[members[0]] += 1;
            }
        }
        CoverageOracle {
            node_count,
            weight,
            sets,
            covering,
            lone_cover,
        }
    }

    /// The `w_hat` estimator as a coverage oracle.
    pub fn for_w(collection: &RRCollection) -> Self {
        let sets = collection
            .w_sets()
            .iter()
            .map(|s| s.members.clone())
            .collect();
        let weight = collection.p_total() / collection.lambda() as f64;
        Self::new(collection.node_count(), weight, sets)
    }

    /// The `z_hat` estimator for a fixed rival seed set: only pairs whose
    /// rival side is already covered can contribute, so the oracle keeps
    /// exactly those positive-side member lists. The divisor stays the full
    /// `mu`. With no active pairs (or `l(V) = 0`) the oracle is identically
    /// zero.
    pub fn for_z(collection: &RRCollection, rival_covered: &[bool]) -> Self {
        let sets: Vec<Vec<NodeId>> = collection
            .z_sets()
            .iter()
            .zip(rival_covered)
            .filter(|(_, &active)| active)
            .map(|(s, _)| s.members_p.clone())
            .collect();
        let weight = if collection.mu() == 0 {
            0.0
        } else {
            collection.l_total() / collection.mu() as f64
        };
        Self::new(collection.node_count(), weight, sets)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Direct evaluation of `b(S)`.
    pub fn value_of(&self, s: &BTreeSet<NodeId>) -> f64 {
        let covered = self
            .sets
            .iter()
            .filter(|members| members.iter().any(|u| s.contains(u)))
            .count();
        self.weight * covered as f64
    }

    /// Singleton value `b({u})`.
    pub fn singleton(&self, u: NodeId) -> f64 {
        self.weight * self.covering[u].len() as f64
    }

    /// Per-set count of members inside `x`, and the unique member when the
    /// count is one.
    fn x_cover_stats(&self, x_mask: &[bool]) -> (usize, Vec<u32>, Vec<u32>) {
        let mut covered_by_x = 0usize;
        // sets covered by exactly {j} within x
        let mut unique_cover = vec![0u32; self.node_count];
        // sets containing j and disjoint from x
        let mut free_cover = vec![0u32; self.node_count];
        for members in &self.sets {
            let mut inside = 0usize;
            let mut last = usize::MAX;
            for &u in members {
                if x_mask[u] {
                    inside += 1;
                    last = u;
                }
            }
            if inside > 0 {
                covered_by_x += 1;
                if inside == 1 {
                    unique_cover[last] += 1;
                }
            } else {
                for &u in members {
                    free_cover[u] += 1;
                }
            }
        }
        (covered_by_x, unique_cover, free_cover)
    }
}

/// A modular set function `bound(Y) = base + sum of unit values over Y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModularBound {
    pub base: f64,
    pub unit: Vec<f64>,
}

impl ModularBound {
    pub fn value_of(&self, s: &BTreeSet<NodeId>) -> f64 {
        self.base + s.iter().map(|&u| self.unit[u]).sum::<f64>()
    }

    pub fn node_count(&self) -> usize {
        self.unit.len()
    }
}

fn x_mask(node_count: usize, x: &BTreeSet<NodeId>) -> Vec<bool> {
    let mut mask = vec![false; node_count];
    for &u in x {
        mask[u] = true;
    }
    mask
}

/// First modular upper bound anchored at `X`: removing `j` from `X` costs
/// the marginal against `X \ {j}`, adding `j` outside `X` pays the singleton
/// value. Tight at `X` and an upper bound everywhere.
pub fn modular_upper_1(oracle: &CoverageOracle, x: &BTreeSet<NodeId>) -> ModularBound {
    let n = oracle.node_count();
    let mask = x_mask(n, x);
    let (covered_by_x, unique_cover, _) = oracle.x_cover_stats(&mask);
    let mut unit = vec![0.0; n];
    let mut base = oracle.weight * covered_by_x as f64;
    for u in 0..n {
        if mask[u] {
            let marginal = oracle.weight * unique_cover[u] as f64;
            unit[u] = marginal;
            base -= marginal;
        } else {
            unit[u] = oracle.singleton(u);
        }
    }
    ModularBound { base, unit }
}

/// Second modular upper bound anchored at `X`: removing `j` from `X` costs
/// the marginal against `V \ {j}`, adding `j` outside `X` pays the marginal
/// against `X`. Tight at `X` and an upper bound everywhere.
pub fn modular_upper_2(oracle: &CoverageOracle, x: &BTreeSet<NodeId>) -> ModularBound {
    let n = oracle.node_count();
    let mask = x_mask(n, x);
    let (covered_by_x, _, free_cover) = oracle.x_cover_stats(&mask);
    let mut unit = vec![0.0; n];
    let mut base = oracle.weight * covered_by_x as f64;
    for u in 0..n {
        if mask[u] {
            let marginal = oracle.weight * oracle.lone_cover[u] as f64;
            unit[u] = marginal;
            base -= marginal;
        } else {
            unit[u] = oracle.weight * free_cover[u] as f64;
        }
    }
    ModularBound { base, unit }
}

/// Modular lower bound from prefix marginals along `alpha`: node `alpha(i)`
/// gets `b(S_i) - b(S_{i-1})`, computed in one pass by crediting every set's
/// weight to its earliest member under `alpha`. Tight at the prefix set `X`
/// and a lower bound everywhere.
pub fn modular_lower(
    oracle: &CoverageOracle,
    x: &BTreeSet<NodeId>,
    alpha: &PermutationOrder,
) -> Result<ModularBound> {
    if alpha.order.len() != oracle.node_count() {
        return Err(Error::InvalidParameter(format!(
            "permutation covers {} nodes, oracle has {}",
            alpha.order.len(),
            oracle.node_count()
        )));
    }
    if !alpha.matches_prefix(x) {
        return Err(Error::PrefixMismatch);
    }
    let mut unit = vec![0.0; oracle.node_count()];
    for members in &oracle.sets {
        let earliest = members
            .iter()
            .copied()
            .min_by_key(|&u| alpha.position(u))
            .expect("coverage sets are nonempty");
        unit[earliest] += oracle.weight;
    }
    Ok(ModularBound { base: 0.0, unit })
}

/// How the permutation holding the anchor set is chosen each round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PermutationStrategy {
    /// Shuffle `X` and the rest independently at random.
    Alpha1,
    /// Sort both parts by descending singleton `f_hat`.
    Alpha2,
    /// Sort both parts by descending singleton `w_hat`.
    Alpha3,
    /// Sort both parts by ascending singleton `z_hat`.
    Alpha4,
}

impl PermutationStrategy {
    pub const ALL: [PermutationStrategy; 4] = [
        PermutationStrategy::Alpha1,
        PermutationStrategy::Alpha2,
        PermutationStrategy::Alpha3,
        PermutationStrategy::Alpha4,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PermutationStrategy::Alpha1 => "alpha1",
            PermutationStrategy::Alpha2 => "alpha2",
            PermutationStrategy::Alpha3 => "alpha3",
            PermutationStrategy::Alpha4 => "alpha4",
        }
    }
}

impl std::str::FromStr for PermutationStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha1" => Ok(PermutationStrategy::Alpha1),
            "alpha2" => Ok(PermutationStrategy::Alpha2),
            "alpha3" => Ok(PermutationStrategy::Alpha3),
            "alpha4" => Ok(PermutationStrategy::Alpha4),
            other => Err(Error::InvalidParameter(format!(
                "unknown permutation strategy {other:?} (expected alpha1..alpha4)"
            ))),
        }
    }
}

/// Singleton estimates per node, computed once per collection and reused by
/// every sorted permutation.
#[derive(Debug, Clone)]
pub struct NodeScores {
    pub w: Vec<f64>,
    pub z: Vec<f64>,
    pub f: Vec<f64>,
}

impl NodeScores {
    pub fn singletons(collection: &RRCollection, rival_covered: &[bool]) -> Self {
        let n = collection.node_count();
        let w_unit = collection.p_total() / collection.lambda() as f64;
        let z_unit = if collection.mu() == 0 {
            0.0
        } else {
            collection.l_total() / collection.mu() as f64
        };
        let mut w = vec![0.0; n];
        let mut z = vec![0.0; n];
        for u in 0..n {
            w[u] = w_unit * collection.w_index(u).len() as f64;
            z[u] = z_unit
                * collection
                    .z_index(u)
                    .iter()
                    .filter(|&&i| rival_covered[i as usize])
                    .count() as f64;
        }
        let f = w.iter().zip(&z).map(|(a, b)| a - b).collect();
        NodeScores { w, z, f }
    }
}

/// Build a permutation containing `x` in its first positions, ordering the
/// two parts according to the strategy. Ties break on ascending node id so
/// runs are reproducible.
pub fn build_permutation<R: Rng>(
    strategy: PermutationStrategy,
    x: &BTreeSet<NodeId>,
    scores: &NodeScores,
    rng: &mut R,
) -> PermutationOrder {
    let n = scores.f.len();
    let mut head: Vec<NodeId> = x.iter().copied().collect();
    let mut tail: Vec<NodeId> = (0..n).filter(|u| !x.contains(u)).collect();
    let sort_desc = |part: &mut Vec<NodeId>, key: &[f64]| {
        part.sort_by(|&a, &b| key[b].partial_cmp(&key[a]).unwrap().then(a.cmp(&b)));
    };
    let sort_asc = |part: &mut Vec<NodeId>, key: &[f64]| {
        part.sort_by(|&a, &b| key[a].partial_cmp(&key[b]).unwrap().then(a.cmp(&b)));
    };
    match strategy {
        PermutationStrategy::Alpha1 => {
            head.shuffle(rng);
            tail.shuffle(rng);
        }
        PermutationStrategy::Alpha2 => {
            sort_desc(&mut head, &scores.f);
            sort_desc(&mut tail, &scores.f);
        }
        PermutationStrategy::Alpha3 => {
            sort_desc(&mut head, &scores.w);
            sort_desc(&mut tail, &scores.w);
        }
        PermutationStrategy::Alpha4 => {
            sort_asc(&mut head, &scores.z);
            sort_asc(&mut tail, &scores.z);
        }
    }
    head.extend(tail);
    PermutationOrder::new(head, x).expect("construction keeps x in the prefix")
}
