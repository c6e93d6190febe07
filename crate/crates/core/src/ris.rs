//! Reverse-reachable-set sampling and estimation.
//!
//! `w(S)` is estimated from RR-sets whose root is drawn with probability
//! `p(u)/p(V)`: `w_hat(S) = p(V) * (fraction of RR-sets S intersects)`.
//! `z(S)` is estimated from paired RR-sets rooted with probability
//! `l(u)/l(V)`, each holding one reverse closure per cascade; a pair counts
//! as covered when the positive seeds hit the positive-side closure AND the
//! rival seeds hit the rival-side closure. Both estimators are unbiased, and
//! Hoeffding's inequality turns them into two-sided confidence bounds.
//!
//! Reverse closures are grown lazily: a coin is flipped per incoming edge
//! the first time it is traversed, which is distributed identically to
//! sampling a full realization up front but costs only the closure's size.

use std::collections::VecDeque;
use std::fs;
use std::io::Write;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::benefit::BenefitProfile;
use crate::error::{Error, Result};
use crate::graph::{Cascade, NodeId, SeedSet, SocialNetwork};

/// An RR-set for the `w` estimator: everything that reaches `root` in one
/// sampled positive-cascade realization. Members are sorted and always
/// include the root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedRRSet {
    pub root: NodeId,
    pub members: Vec<NodeId>,
}

/// A paired RR-set for the `z` estimator: two independent reverse closures
/// from the same root, one per cascade.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairedRRSet {
    pub root: NodeId,
    pub members_p: Vec<NodeId>,
    pub members_r: Vec<NodeId>,
}

fn contains_any(sorted_members: &[NodeId], seeds: &SeedSet) -> bool {
    // scan the smaller side
    if seeds.len() <= sorted_members.len() {
        seeds
            .members()
            .iter()
            .any(|u| sorted_members.binary_search(u).is_ok())
    } else {
        sorted_members.iter().any(|u| seeds.contains(*u))
    }
}

/// Draws RR-sets for a fixed network and profile. Root selection uses a
/// cumulative-sum table built once, with binary search per draw.
pub struct RrSampler<'a> {
    network: &'a SocialNetwork,
    p_cdf: Vec<f64>,
    p_total: f64,
    l_cdf: Option<Vec<f64>>,
    l_total: f64,
}

fn cumulative(weights: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    weights
        .iter()
        .map(|w| {
            acc += w;
            acc
        })
        .collect()
}

fn sample_index<R: Rng>(cdf: &[f64], total: f64, rng: &mut R) -> usize {
    let x = rng.gen::<f64>() * total;
    cdf.partition_point(|&c| c <= x).min(cdf.len() - 1)
}

fn reverse_closure<R: Rng>(
    network: &SocialNetwork,
    cascade: Cascade,
    root: NodeId,
    rng: &mut R,
) -> Vec<NodeId> {
    let mut visited = vec![false; network.node_count()];
    visited[root] = true;
    let mut members = vec![root];
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &(edge, src) in network.in_edges(v) {
            if !visited[src] && rng.gen::<f64>() < network.probability(edge, cascade) {
                visited[src] = true;
                members.push(src);
                queue.push_back(src);
            }
        }
    }
    members.sort_unstable();
    members
}

impl<'a> RrSampler<'a> {
    pub fn new(network: &'a SocialNetwork, profile: &BenefitProfile) -> Result<Self> {
        if profile.len() != network.node_count() {
            return Err(Error::InvalidParameter(format!(
                "profile covers {} nodes, network has {}",
                profile.len(),
                network.node_count()
            )));
        }
        if profile.p_total() <= 0.0 {
            return Err(Error::DegenerateProfile("p(V) must be positive"));
        }
        let l_cdf = if profile.l_total() > 0.0 {
            Some(cumulative(profile.l_values()))
        } else {
            None
        };
        Ok(RrSampler {
            network,
            p_cdf: cumulative(profile.p_values()),
            p_total: profile.p_total(),
            l_cdf,
            l_total: profile.l_total(),
        })
    }

    /// One RR-set for `w`: root ~ `p(u)/p(V)`, reverse closure under the
    /// positive cascade.
    pub fn weighted_rr<R: Rng>(&self, rng: &mut R) -> WeightedRRSet {
        let root = sample_index(&self.p_cdf, self.p_total, rng);
        let members = reverse_closure(self.network, Cascade::Positive, root, rng);
        WeightedRRSet { root, members }
    }

    /// One paired RR-set for `z`: root ~ `l(u)/l(V)`, then two independent
    /// reverse closures. Errors when `l(V) = 0`; callers must then skip the
    /// `z` estimator entirely (`z` is identically zero).
    pub fn paired_rr<R: Rng>(&self, rng: &mut R) -> Result<PairedRRSet> {
        let cdf = self
            .l_cdf
            .as_ref()
            .ok_or(Error::DegenerateProfile("l(V) = 0: z is identically zero"))?;
        let root = sample_index(cdf, self.l_total, rng);
        let members_p = reverse_closure(self.network, Cascade::Positive, root, rng);
        let members_r = reverse_closure(self.network, Cascade::Rival, root, rng);
        Ok(PairedRRSet {
            root,
            members_p,
            members_r,
        })
    }
}

/// Two-sided Hoeffding bounds around the estimates, each side holding with
/// probability at least `1 - delta/4` (so `f` bounds hold with `1 - delta/2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceBounds {
    pub w_hat: f64,
    pub w_upper: f64,
    pub w_lower: f64,
    pub z_hat: f64,
    pub z_upper: f64,
    pub z_lower: f64,
    pub f_hat: f64,
    pub f_upper: f64,
    pub f_lower: f64,
}

#[derive(Serialize, Deserialize)]
struct CollectionSnapshot {
    node_count: usize,
    p_total: f64,
    l_total: f64,
    w_sets: Vec<WeightedRRSet>,
    z_sets: Vec<PairedRRSet>,
}

/// A frozen pair of RR-set collections with inverted node-to-set indexes.
/// Everything downstream (estimates, bounds, solvers) reads from one
/// immutable collection, so a whole run is reproducible and monotonicity
/// arguments about the estimated objective hold exactly.
#[derive(Debug, Clone)]
pub struct RRCollection {
    node_count: usize,
    p_total: f64,
    l_total: f64,
    w_sets: Vec<WeightedRRSet>,
    z_sets: Vec<PairedRRSet>,
    w_index: Vec<Vec<u32>>,
    z_index: Vec<Vec<u32>>,
}

impl RRCollection {
    /// Sample `lambda` RR-sets for `w` and `mu` paired RR-sets for `z` from
    /// independent streams. When `l(V) = 0` the `z` collection is left empty
    /// and the estimator is pinned at zero.
    pub fn build<R1: Rng, R2: Rng>(
        network: &SocialNetwork,
        profile: &BenefitProfile,
        lambda: usize,
        mu: usize,
        rng_w: &mut R1,
        rng_z: &mut R2,
    ) -> Result<Self> {
        if lambda == 0 {
            return Err(Error::InvalidParameter("lambda must be at least 1".into()));
        }
        let sampler = RrSampler::new(network, profile)?;
        let degenerate_l = profile.l_total() == 0.0;
        if mu == 0 && !degenerate_l {
            return Err(Error::InvalidParameter(
                "mu must be at least 1 when l(V) > 0".into(),
            ));
        }
        let w_sets: Vec<WeightedRRSet> = (0..lambda).map(|_| sampler.weighted_rr(rng_w)).collect();
        let z_sets: Vec<PairedRRSet> = if degenerate_l {
            Vec::new()
        } else {
            (0..mu)
                .map(|_| sampler.paired_rr(rng_z))
                .collect::<Result<_>>()?
        };
        Self::from_parts(
            network.node_count(),
            profile.p_total(),
            profile.l_total(),
            w_sets,
            z_sets,
        )
    }

    /// Assemble a collection from already-sampled sets, validating the
    /// structural invariants and rebuilding the inverted indexes.
    pub fn from_parts(
        node_count: usize,
        p_total: f64,
        l_total: f64,
        w_sets: Vec<WeightedRRSet>,
        z_sets: Vec<PairedRRSet>,
    ) -> Result<Self> {
        if w_sets.is_empty() {
            return Err(Error::InvalidParameter("lambda must be at least 1".into()));
        }
        if z_sets.is_empty() && l_total > 0.0 {
            return Err(Error::InvalidParameter(
                "mu must be at least 1 when l(V) > 0".into(),
            ));
        }
        let check_members = |root: NodeId, members: &[NodeId]| -> Result<()> {
            if members.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidParameter(
                    "RR-set members must be strictly ascending".into(),
                ));
            }
            if members.binary_search(&root).is_err() {
                return Err(Error::InvalidParameter(format!(
                    "RR-set does not contain its root {root}"
                )));
            }
            if let Some(&last) = members.last() {
                if last >= node_count {
                    return Err(Error::NodeOutOfRange {
                        id: last,
                        nodes: node_count,
                    });
                }
            }
            Ok(())
        };
        let mut w_index = vec![Vec::new(); node_count];
        for (i, set) in w_sets.iter().enumerate() {
            check_members(set.root, &set.members)?;
            for &u in &set.members {
                w_index[u].push(i as u32);
            }
        }
        let mut z_index = vec![Vec::new(); node_count];
        for (i, set) in z_sets.iter().enumerate() {
            check_members(set.root, &set.members_p)?;
            check_members(set.root, &set.members_r)?;
            for &u in &set.members_p {
                z_index[u].push(i as u32);
            }
        }
        Ok(RRCollection {
            node_count,
            p_total,
            l_total,
            w_sets,
            z_sets,
            w_index,
            z_index,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Number of `w` RR-sets.
    pub fn lambda(&self) -> usize {
        self.w_sets.len()
    }

    /// Number of paired `z` RR-sets.
    pub fn mu(&self) -> usize {
        self.z_sets.len()
    }

    pub fn p_total(&self) -> f64 {
        self.p_total
    }

    pub fn l_total(&self) -> f64 {
        self.l_total
    }

    pub fn w_sets(&self) -> &[WeightedRRSet] {
        &self.w_sets
    }

    pub fn z_sets(&self) -> &[PairedRRSet] {
        &self.z_sets
    }

    /// Indexes of `w` RR-sets containing each node.
    pub fn w_index(&self, u: NodeId) -> &[u32] {
        &self.w_index[u]
    }

    /// Indexes of `z` RR-sets whose positive-side closure contains each node.
    pub fn z_index(&self, u: NodeId) -> &[u32] {
        &self.z_index[u]
    }

    /// Per-`z`-set flag: does the rival seed set hit the rival-side closure?
    /// Computed once per `(collection, rival)` pair and reused everywhere.
    pub fn rival_coverage(&self, s_r: &SeedSet) -> Vec<bool> {
        self.z_sets
            .iter()
            .map(|set| contains_any(&set.members_r, s_r))
            .collect()
    }

    /// `w_hat(S) = p(V) * |{i : S hits w-set i}| / lambda`.
    pub fn estimate_w(&self, s_p: &SeedSet) -> f64 {
        let covered = self
            .w_sets
            .iter()
            .filter(|set| contains_any(&set.members, s_p))
            .count();
        self.p_total * covered as f64 / self.w_sets.len() as f64
    }

    /// `z_hat(S) = l(V) * |{i : S hits z-set i's positive side and the rival
    /// hits its rival side}| / mu`; identically zero when `l(V) = 0`.
    pub fn estimate_z(&self, s_p: &SeedSet, s_r: &SeedSet) -> f64 {
        if self.z_sets.is_empty() {
            return 0.0;
        }
        let covered = self
            .z_sets
            .iter()
            .filter(|set| contains_any(&set.members_p, s_p) && contains_any(&set.members_r, s_r))
            .count();
        self.l_total * covered as f64 / self.z_sets.len() as f64
    }

    /// `f_hat = w_hat - z_hat`.
    pub fn estimate_f(&self, s_p: &SeedSet, s_r: &SeedSet) -> f64 {
        self.estimate_w(s_p) - self.estimate_z(s_p, s_r)
    }

    /// Hoeffding slack on `w_hat`: `p(V) * sqrt(ln(4/delta) / (2 lambda))`.
    pub fn w_slack(&self, delta: f64) -> f64 {
        self.p_total * ((4.0 / delta).ln() / (2.0 * self.w_sets.len() as f64)).sqrt()
    }

    /// Hoeffding slack on `z_hat`; zero when the `z` estimator is exact
    /// because `l(V) = 0`.
    pub fn z_slack(&self, delta: f64) -> f64 {
        if self.z_sets.is_empty() {
            0.0
        } else {
            self.l_total * ((4.0 / delta).ln() / (2.0 * self.z_sets.len() as f64)).sqrt()
        }
    }

    /// Two-sided bounds on `w`, `z`, and `f` at confidence `1 - delta`.
    pub fn confidence_bounds(
        &self,
        s_p: &SeedSet,
        s_r: &SeedSet,
        delta: f64,
    ) -> Result<ConfidenceBounds> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidDelta(delta));
        }
        let w_hat = self.estimate_w(s_p);
        let z_hat = self.estimate_z(s_p, s_r);
        let sw = self.w_slack(delta);
        let sz = self.z_slack(delta);
        Ok(ConfidenceBounds {
            w_hat,
            w_upper: w_hat + sw,
            w_lower: w_hat - sw,
            z_hat,
            z_upper: z_hat + sz,
            z_lower: z_hat - sz,
            f_hat: w_hat - z_hat,
            f_upper: (w_hat + sw) - (z_hat - sz),
            f_lower: (w_hat - sw) - (z_hat + sz),
        })
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let snap = CollectionSnapshot {
            node_count: self.node_count,
            p_total: self.p_total,
            l_total: self.l_total,
            w_sets: self.w_sets.clone(),
            z_sets: self.z_sets.clone(),
        };
        let bytes = serde_json::to_vec(&snap).map_err(|source| Error::Json {
            path: path.to_path_buf(),
            source,
        })?;
        let mut file = fs::File::create(path)?;
        file.write_all(&bytes)?;
        Ok(())
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = fs::read(path)
            .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
        let snap: CollectionSnapshot =
            serde_json::from_slice(&bytes).map_err(|source| Error::Json {
                path: path.to_path_buf(),
                source,
            })?;
        Self::from_parts(
            snap.node_count,
            snap.p_total,
            snap.l_total,
            snap.w_sets,
            snap.z_sets,
        )
    }
}
