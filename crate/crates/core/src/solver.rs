//! Seed-set solvers over a frozen RR-set collection.
//!
//! The main routine alternates between a tight modular lower bound of the
//! `w` estimator and a tight modular upper bound of the `z` estimator,
//! exactly maximizing their difference each round; the estimated objective
//! of the iterates never decreases, so the procedure terminates at a
//! fixpoint (or at the iteration cap). A per-instance approximation ratio
//! is certified from Hoeffding bounds at the returned set and a modular
//! upper bound on the optimum.
//!
//! All solver decisions are made on the frozen estimates; no fresh samples
//! are drawn mid-run.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    build_permutation, modular_lower, modular_upper_1, modular_upper_2, CoverageOracle,
    ModularBound, NodeScores, PermutationStrategy,
};
use crate::error::{Error, Result};
use crate::graph::{NodeId, SeedSet, SocialNetwork};
use crate::ris::RRCollection;
use crate::streams::named_stream;

/// Which modular upper bound replaces the `z` estimator each round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UpperBoundVariant {
    ModMod1,
    ModMod2,
}

impl UpperBoundVariant {
    pub fn name(&self) -> &'static str {
        match self {
            UpperBoundVariant::ModMod1 => "modmod1",
            UpperBoundVariant::ModMod2 => "modmod2",
        }
    }
}

impl std::str::FromStr for UpperBoundVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "modmod1" => Ok(UpperBoundVariant::ModMod1),
            "modmod2" => Ok(UpperBoundVariant::ModMod2),
            other => Err(Error::InvalidParameter(format!(
                "unknown upper bound variant {other:?} (expected modmod1 or modmod2)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Maximum positive seed-set size.
    pub k: usize,
    pub variant: UpperBoundVariant,
    pub strategy: PermutationStrategy,
    /// Confidence parameter: bounds and the certificate hold with
    /// probability at least `1 - delta`.
    pub delta: f64,
    pub max_iterations: usize,
    /// Master seed for the solver's internal streams (random permutations).
    pub seed: u64,
}

impl SolverConfig {
    pub fn new(k: usize) -> Self {
        SolverConfig {
            k,
            variant: UpperBoundVariant::ModMod2,
            strategy: PermutationStrategy::Alpha2,
            delta: 0.1,
            max_iterations: 100,
            seed: 0,
        }
    }

    fn validate(&self, node_count: usize) -> Result<()> {
        if self.k > node_count {
            return Err(Error::InvalidParameter(format!(
                "budget {} exceeds node count {node_count}",
                self.k
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter(
                "max_iterations must be at least 1".into(),
            ));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidDelta(self.delta));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterateRecord {
    pub set: Vec<NodeId>,
    pub f_hat: f64,
}

/// Everything a run produced, serializable as a JSON report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverReport {
    pub method: String,
    /// Chosen positive seed set, ascending ids.
    pub solution: Vec<NodeId>,
    /// Rival seed set the run was evaluated against.
    pub rival: Vec<NodeId>,
    pub f_hat: f64,
    /// `w_lower - z_upper` at the solution.
    pub f_lower: f64,
    /// Certified upper bound on the optimum: `pi_hat` plus both Hoeffding
    /// slack terms. Only solver methods that certify a ratio set this.
    pub f_upper_opt: Option<f64>,
    pub pi_hat: Option<f64>,
    /// Which upper-bound variant produced the tighter `pi_hat`.
    pub pi_binding: Option<String>,
    /// Data-dependent approximation ratio `f_lower / f_upper_opt`.
    pub ratio: Option<f64>,
    pub iterations: usize,
    pub iterate_history: Vec<IterateRecord>,
    pub wall_time_ms: f64,
    pub notes: Vec<String>,
}

const NOTE_DELTA: &str = "delta is interpreted on (0,1); bounds hold with probability 1-delta";
const NOTE_LOCAL_MAX: &str =
    "fixpoint reached by plain iteration; local maximality over all permutations is not certified";

/// Exactly maximize `gain(Y) - cost(Y)` over `|Y| <= k`: keep the nodes with
/// the largest nonnegative net unit values, stopping at the first negative
/// one. Ties break on ascending id. Returns the set (ascending) and the
/// achieved objective value including both base terms.
pub fn modular_max(gain: &ModularBound, cost: &ModularBound, k: usize) -> (Vec<NodeId>, f64) {
    let n = gain.unit.len();
    debug_assert_eq!(n, cost.unit.len());
    let mut net: Vec<(NodeId, f64)> = (0..n).map(|u| (u, gain.unit[u] - cost.unit[u])).collect();
    net.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    let mut chosen = Vec::new();
    let mut value = gain.base - cost.base;
    for &(u, v) in net.iter().take(k) {
        if v < 0.0 {
            break;
        }
        chosen.push(u);
        value += v;
    }
    chosen.sort_unstable();
    (chosen, value)
}

struct Estimators {
    w: CoverageOracle,
    z: CoverageOracle,
    scores: NodeScores,
}

impl Estimators {
    fn build(collection: &RRCollection, s_r: &SeedSet) -> Result<Self> {
        s_r.validate(collection.node_count())?;
        let rival_covered = collection.rival_coverage(s_r);
        let w = CoverageOracle::for_w(collection);
        let z = CoverageOracle::for_z(collection, &rival_covered);
        let scores = NodeScores::singletons(collection, &rival_covered);
        Ok(Estimators { w, z, scores })
    }

    fn f_hat(&self, s: &BTreeSet<NodeId>) -> f64 {
        self.w.value_of(s) - self.z.value_of(s)
    }
}

fn pi_upper_with<R: Rng>(
    est: &Estimators,
    x: &BTreeSet<NodeId>,
    k: usize,
    strategy: PermutationStrategy,
    rng: &mut R,
) -> (f64, UpperBoundVariant) {
    let alpha = build_permutation(strategy, x, &est.scores, rng);
    let h_z = modular_lower(&est.z, x, &alpha).expect("alpha was built around x");
    let m1 = modular_upper_1(&est.w, x);
    let m2 = modular_upper_2(&est.w, x);
    let v1 = modular_max(&m1, &h_z, k).1;
    let v2 = modular_max(&m2, &h_z, k).1;
    if v1 <= v2 {
        (v1, UpperBoundVariant::ModMod1)
    } else {
        (v2, UpperBoundVariant::ModMod2)
    }
}

/// Modular upper bound on the best achievable estimated objective over all
/// sets of size at most `k`, anchored at `x`. Returns the bound and which
/// upper-bound variant was binding.
pub fn pi_upper(
    collection: &RRCollection,
    s_r: &SeedSet,
    x: &BTreeSet<NodeId>,
    config: &SolverConfig,
) -> Result<(f64, UpperBoundVariant)> {
    config.validate(collection.node_count())?;
    let est = Estimators::build(collection, s_r)?;
    let mut rng = named_stream(config.seed, "pi-alpha");
    Ok(pi_upper_with(&est, x, config.k, config.strategy, &mut rng))
}

/// The data-dependent approximation ratio for a finished report, recomputed
/// from its solution: `(w_lower - z_upper) / (pi_hat + slack_w + slack_z)`.
pub fn approximation_certificate(
    collection: &RRCollection,
    report: &SolverReport,
    config: &SolverConfig,
) -> Result<f64> {
    let s_p = SeedSet::positive(report.solution.iter().copied());
    let s_r = SeedSet::rival(report.rival.iter().copied());
    let bounds = collection.confidence_bounds(&s_p, &s_r, config.delta)?;
    let x: BTreeSet<NodeId> = report.solution.iter().copied().collect();
    let (pi, _) = pi_upper(collection, &s_r, &x, config)?;
    let denominator = pi + collection.w_slack(config.delta) + collection.z_slack(config.delta);
    if denominator <= 0.0 {
        return Err(Error::DegenerateCertificate(denominator));
    }
    Ok(bounds.f_lower / denominator)
}

/// The iterative modular-difference procedure. Starting from the empty set,
/// each round anchors both bounds at the current iterate and exactly
/// maximizes their difference; the estimated objective of the iterates is
/// non-decreasing. Terminates on a fixpoint, a revisited iterate, or the
/// iteration cap, returning the best iterate seen together with its
/// certificate.
pub fn modular_modular(
    collection: &RRCollection,
    s_r: &SeedSet,
    config: &SolverConfig,
) -> Result<SolverReport> {
    config.validate(collection.node_count())?;
    let start = Instant::now();
    let est = Estimators::build(collection, s_r)?;
    let mut alpha_rng = named_stream(config.seed, "alpha");

    let mut current: BTreeSet<NodeId> = BTreeSet::new();
    let mut history = vec![IterateRecord {
        set: Vec::new(),
        f_hat: 0.0,
    }];
    let mut visited: BTreeSet<Vec<NodeId>> = BTreeSet::from([Vec::new()]);
    let mut best_set: BTreeSet<NodeId> = BTreeSet::new();
    let mut best_f = 0.0;
    let mut iterations = 0;

    while iterations < config.max_iterations {
        iterations += 1;
        let alpha = build_permutation(config.strategy, &current, &est.scores, &mut alpha_rng);
        let lower_w = modular_lower(&est.w, &current, &alpha)?;
        let upper_z = match config.variant {
            UpperBoundVariant::ModMod1 => modular_upper_1(&est.z, &current),
            UpperBoundVariant::ModMod2 => modular_upper_2(&est.z, &current),
        };
        let (next_vec, _) = modular_max(&lower_w, &upper_z, config.k);
        let next: BTreeSet<NodeId> = next_vec.iter().copied().collect();
        let f_next = est.f_hat(&next);
        history.push(IterateRecord {
            set: next_vec.clone(),
            f_hat: f_next,
        });
        if f_next > best_f {
            best_f = f_next;
            best_set = next.clone();
        }
        if next == current {
            break;
        }
        // ties in the objective can revisit an earlier iterate and cycle
        if !visited.insert(next_vec) {
            break;
        }
        current = next;
    }

    let solution: Vec<NodeId> = best_set.iter().copied().collect();
    let s_p = SeedSet::positive(solution.iter().copied());
    let cb = collection.confidence_bounds(&s_p, s_r, config.delta)?;
    let mut pi_rng = named_stream(config.seed, "pi-alpha");
    let (pi, binding) = pi_upper_with(&est, &best_set, config.k, config.strategy, &mut pi_rng);
    let denominator = pi + collection.w_slack(config.delta) + collection.z_slack(config.delta);
    if denominator <= 0.0 {
        return Err(Error::DegenerateCertificate(denominator));
    }

    Ok(SolverReport {
        method: config.variant.name().to_string(),
        solution,
        rival: s_r.to_vec(),
        f_hat: best_f,
        f_lower: cb.f_lower,
        f_upper_opt: Some(denominator),
        pi_hat: Some(pi),
        pi_binding: Some(binding.name().to_string()),
        ratio: Some(cb.f_lower / denominator),
        iterations,
        iterate_history: history,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        notes: vec![NOTE_DELTA.to_string(), NOTE_LOCAL_MAX.to_string()],
    })
}

/// Greedy coverage selection shared by the full-objective greedy and the
/// `w`-only InfMax baseline. Covered sets are retired incrementally, so each
/// step costs the total size of the sets the new seed covers.
fn coverage_greedy(
    collection: &RRCollection,
    rival_covered: &[bool],
    k: usize,
    use_z: bool,
) -> (Vec<NodeId>, Vec<IterateRecord>) {
    let n = collection.node_count();
    let w_unit = collection.p_total() / collection.lambda() as f64;
    let z_unit = if collection.mu() == 0 {
        0.0
    } else {
        collection.l_total() / collection.mu() as f64
    };
    let mut cnt_w: Vec<u32> = (0..n).map(|u| collection.w_index(u).len() as u32).collect();
    let mut cnt_z: Vec<u32> = (0..n)
        .map(|u| {
            collection
                .z_index(u)
                .iter()
                .filter(|&&i| rival_covered[i as usize])
                .count() as u32
        })
        .collect();
    let mut covered_w = vec![false; collection.lambda()];
    let mut covered_z = vec![false; collection.mu()];
    let mut covered_w_total = 0u32;
    let mut covered_z_total = 0u32;
    let mut selected = vec![false; n];
    let mut solution = Vec::new();
    let mut history = vec![IterateRecord {
        set: Vec::new(),
        f_hat: 0.0,
    }];

    for _ in 0..k {
        let mut best: Option<(NodeId, f64)> = None;
        for u in 0..n {
            if selected[u] {
                continue;
            }
            let gain =
                w_unit * cnt_w[u] as f64 - if use_z { z_unit * cnt_z[u] as f64 } else { 0.0 };
            if best.map_or(true, |(_, b)| gain > b) {
                best = Some((u, gain));
            }
        }
        let Some((u, gain)) = best else { break };
        if gain < 0.0 {
            break;
        }
        selected[u] = true;
        solution.push(u);
        for &i in collection.w_index(u) {
            let i = i as usize;
            if !covered_w[i] {
                covered_w[i] = true;
                covered_w_total += 1;
                for &v in &collection.w_sets()[i].members {
                    cnt_w[v] -= 1;
                }
            }
        }
        for &i in collection.z_index(u) {
            let i = i as usize;
            if rival_covered[i] && !covered_z[i] {
                covered_z[i] = true;
                covered_z_total += 1;
                for &v in &collection.z_sets()[i].members_p {
                    cnt_z[v] -= 1;
                }
            }
        }
        let f_now = w_unit * covered_w_total as f64 - z_unit * covered_z_total as f64;
        let mut set = solution.clone();
        set.sort_unstable();
        history.push(IterateRecord { set, f_hat: f_now });
    }
    solution.sort_unstable();
    (solution, history)
}

/// Greedy on the full estimated objective: repeatedly add the node with the
/// largest marginal `f_hat` gain, stopping early once the best marginal is
/// negative.
pub fn greedy(
    collection: &RRCollection,
    s_r: &SeedSet,
    k: usize,
    delta: f64,
) -> Result<SolverReport> {
    if k > collection.node_count() {
        return Err(Error::InvalidParameter(format!(
            "budget {k} exceeds node count {}",
            collection.node_count()
        )));
    }
    let start = Instant::now();
    s_r.validate(collection.node_count())?;
    let rival_covered = collection.rival_coverage(s_r);
    let (solution, history) = coverage_greedy(collection, &rival_covered, k, true);
    let s_p = SeedSet::positive(solution.iter().copied());
    let cb = collection.confidence_bounds(&s_p, s_r, delta)?;
    let f_hat = history.last().map_or(0.0, |r| r.f_hat);
    Ok(SolverReport {
        method: "greedy".to_string(),
        iterations: solution.len(),
        solution,
        rival: s_r.to_vec(),
        f_hat,
        f_lower: cb.f_lower,
        f_upper_opt: None,
        pi_hat: None,
        pi_binding: None,
        ratio: None,
        iterate_history: history,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        notes: vec![NOTE_DELTA.to_string()],
    })
}

/// `k` nodes drawn uniformly without replacement.
pub fn baseline_random<R: Rng>(network: &SocialNetwork, k: usize, rng: &mut R) -> SeedSet {
    let k = k.min(network.node_count());
    let picked = rand::seq::index::sample(rng, network.node_count(), k);
    SeedSet::positive(picked.into_iter())
}

/// The `k` nodes with the largest out-degree, ties on ascending id.
pub fn baseline_maxdegree(network: &SocialNetwork, k: usize) -> SeedSet {
    let mut nodes: Vec<NodeId> = (0..network.node_count()).collect();
    nodes.sort_by(|&a, &b| {
        network
            .out_degree(b)
            .cmp(&network.out_degree(a))
            .then(a.cmp(&b))
    });
    SeedSet::positive(nodes.into_iter().take(k))
}

/// Greedy on the `w` estimator alone, ignoring the rival's disturbance.
pub fn baseline_infmax(collection: &RRCollection, k: usize) -> SeedSet {
    let rival_covered = vec![false; collection.mu()];
    let (solution, _) = coverage_greedy(collection, &rival_covered, k, false);
    SeedSet::positive(solution)
}

/// Wrap an externally chosen seed set in a report so baseline rows carry the
/// same estimate and lower bound as solver rows. Baselines do not certify a
/// ratio.
pub fn evaluate_seed_set(
    collection: &RRCollection,
    s_r: &SeedSet,
    seeds: &SeedSet,
    delta: f64,
    method: &str,
) -> Result<SolverReport> {
    let start = Instant::now();
    seeds.validate(collection.node_count())?;
    let cb = collection.confidence_bounds(seeds, s_r, delta)?;
    let solution = seeds.to_vec();
    Ok(SolverReport {
        method: method.to_string(),
        solution: solution.clone(),
        rival: s_r.to_vec(),
        f_hat: cb.f_hat,
        f_lower: cb.f_lower,
        f_upper_opt: None,
        pi_hat: None,
        pi_binding: None,
        ratio: None,
        iterations: 0,
        iterate_history: vec![IterateRecord {
            set: solution,
            f_hat: cb.f_hat,
        }],
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        notes: vec![NOTE_DELTA.to_string()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benefit::BenefitProfile;

    fn bound(base: f64, unit: Vec<f64>) -> ModularBound {
        ModularBound { base, unit }
    }

    #[test]
    fn modular_max_sort_and_cut() {
        let gain = bound(0.0, vec![3.0, 2.0, -1.0]);
        let cost = bound(0.0, vec![0.0, 0.0, 0.0]);
        let (set, value) = modular_max(&gain, &cost, 2);
        assert_eq!(set, vec![0, 1]);
        assert!((value - 5.0).abs() < 1e-12);
    }

    #[test]
    fn modular_max_stops_on_negative() {
        let gain = bound(1.0, vec![-0.5, -2.0]);
        let cost = bound(0.25, vec![0.5, 0.0]);
        let (set, value) = modular_max(&gain, &cost, 2);
        assert!(set.is_empty());
        assert!((value - 0.75).abs() < 1e-12);
    }

    #[test]
    fn modular_max_matches_brute_force() {
        use rand::Rng;
        let mut rng = crate::streams::named_stream(1, "mm");
        for _ in 0..50 {
            let n = rng.gen_range(1..=6);
            let k = rng.gen_range(0..=n);
            let gain = bound(
                rng.gen_range(-1.0..1.0),
                (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            );
            let cost = bound(
                rng.gen_range(-1.0..1.0),
                (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            );
            let (_, got) = modular_max(&gain, &cost, k);
            let mut best = f64::NEG_INFINITY;
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize > k {
                    continue;
                }
                let s: BTreeSet<NodeId> = (0..n).filter(|&u| mask & (1 << u) != 0).collect();
                best = best.max(gain.value_of(&s) - cost.value_of(&s));
            }
            assert!((got - best).abs() < 1e-9, "got {got}, brute {best}");
        }
    }

    fn small_instance(seed: u64) -> (RRCollection, SeedSet) {
        let g = crate::synthetic::random_network(6, 9, (0.2, 0.9), seed).unwrap();
        let profile = BenefitProfile::generate(6, seed);
        let col = RRCollection::build(
            &g,
            &profile,
            300,
            300,
            &mut named_stream(seed, "w"),
            &mut named_stream(seed, "z"),
        )
        .unwrap();
        (col, SeedSet::rival([1, 4]))
    }

    #[test]
    fn zero_budget_returns_empty_in_one_iteration() {
        let (col, s_r) = small_instance(2);
        let report = modular_modular(&col, &s_r, &SolverConfig::new(0)).unwrap();
        assert!(report.solution.is_empty());
        assert_eq!(report.f_hat, 0.0);
        assert_eq!(report.iterations, 1);
    }

    #[test]
    fn iterates_never_decrease_and_budget_respected() {
        for seed in 0..6u64 {
            let (col, s_r) = small_instance(seed);
            for variant in [UpperBoundVariant::ModMod1, UpperBoundVariant::ModMod2] {
                let config = SolverConfig {
                    variant,
                    seed,
                    ..SolverConfig::new(3)
                };
                let report = modular_modular(&col, &s_r, &config).unwrap();
                assert!(report.solution.len() <= 3);
                assert!(report.iterations <= config.max_iterations);
                for pair in report.iterate_history.windows(2) {
                    assert!(pair[1].f_hat >= pair[0].f_hat - 1e-9);
                }
                assert_eq!(
                    report.ratio,
                    Some(report.f_lower / report.f_upper_opt.unwrap())
                );
            }
        }
    }

    #[test]
    fn no_rival_floor_is_best_singleton() {
        let (col, _) = small_instance(7);
        let s_r = SeedSet::rival([]);
        let config = SolverConfig::new(3);
        let report = modular_modular(&col, &s_r, &config).unwrap();
        let best_singleton = (0..col.node_count())
            .map(|u| col.estimate_f(&SeedSet::positive([u]), &s_r))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(report.f_hat >= best_singleton - 1e-9);
    }

    #[test]
    fn greedy_trivial_cases() {
        let (col, s_r) = small_instance(3);
        let r1 = greedy(&col, &s_r, 1, 0.1).unwrap();
        assert_eq!(r1.solution.len(), 1);
        let best_singleton = (0..col.node_count())
            .map(|u| col.estimate_f(&SeedSet::positive([u]), &s_r))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((r1.f_hat - best_singleton).abs() < 1e-9);

        // all-negative singletons: nothing selected
        let g = SocialNetwork::new(2, vec![(0, 1, 0.5, 0.5)]).unwrap();
        let profile = BenefitProfile::from_values(vec![0.1, 0.1], vec![-2.0, -2.0]).unwrap();
        let col = RRCollection::build(
            &g,
            &profile,
            500,
            500,
            &mut named_stream(9, "w"),
            &mut named_stream(9, "z"),
        )
        .unwrap();
        let everywhere = SeedSet::rival([0, 1]);
        let r = greedy(&col, &everywhere, 2, 0.1).unwrap();
        assert!(
            r.solution.is_empty(),
            "expected empty greedy solution, got {:?} (f_hat {})",
            r.solution,
            r.f_hat
        );
        assert_eq!(r.f_hat, 0.0);
    }

    #[test]
    fn greedy_history_is_non_decreasing() {
        let (col, s_r) = small_instance(11);
        let report = greedy(&col, &s_r, 4, 0.1).unwrap();
        for pair in report.iterate_history.windows(2) {
            assert!(pair[1].f_hat >= pair[0].f_hat - 1e-9);
        }
    }

    #[test]
    fn baselines_behave() {
        let g = crate::synthetic::random_network(7, 12, (0.2, 0.9), 5).unwrap();
        // star center: give node 3 max out-degree by construction
        let mut rows: Vec<(usize, usize, f64, f64)> = Vec::new();
        for t in 0..7 {
            if t != 3 {
                rows.push((3, t, 0.5, 0.5));
            }
        }
        rows.push((0, 1, 0.5, 0.5));
        let star = SocialNetwork::new(7, rows).unwrap();
        let md = baseline_maxdegree(&star, 1);
        assert_eq!(md.to_vec(), vec![3]);

        let mut rng = named_stream(4, "rand-base");
        let a = baseline_random(&g, 3, &mut rng);
        let mut rng = named_stream(4, "rand-base");
        let b = baseline_random(&g, 3, &mut rng);
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn infmax_equals_greedy_when_q_is_p() {
        let g = crate::synthetic::random_network(6, 10, (0.2, 0.9), 8).unwrap();
        let p: Vec<f64> = (0..6).map(|u| 0.2 + 0.1 * u as f64).collect();
        let profile = BenefitProfile::from_values(p.clone(), p).unwrap();
        let col = RRCollection::build(
            &g,
            &profile,
            400,
            400,
            &mut named_stream(10, "w"),
            &mut named_stream(10, "z"),
        )
        .unwrap();
        let s_r = SeedSet::rival([0]);
        let inf = baseline_infmax(&col, 3);
        let gr = greedy(&col, &s_r, 3, 0.1).unwrap();
        assert_eq!(inf.to_vec(), gr.solution);
    }

    #[test]
    fn pi_upper_dominates_every_feasible_estimate() {
        let (col, s_r) = small_instance(12);
        let config = SolverConfig::new(2);
        let report = modular_modular(&col, &s_r, &config).unwrap();
        let x: BTreeSet<NodeId> = report.solution.iter().copied().collect();
        let (pi, _) = pi_upper(&col, &s_r, &x, &config).unwrap();
        let n = col.node_count();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize > config.k {
                continue;
            }
            let s = SeedSet::positive((0..n).filter(|&u| mask & (1 << u) != 0));
            assert!(pi >= col.estimate_f(&s, &s_r) - 1e-9);
        }
        // deterministic recomputation
        let (pi2, _) = pi_upper(&col, &s_r, &x, &config).unwrap();
        assert_eq!(pi, pi2);
    }

    #[test]
    fn pi_upper_with_zero_z_at_empty_anchor_is_top_k_singleton_sum() {
        // q = p kills the z collection, so pi at the empty anchor reduces to
        // the k largest singleton w estimates
        let g = crate::synthetic::random_network(6, 10, (0.2, 0.9), 21).unwrap();
        let p: Vec<f64> = (0..6).map(|u| 0.3 + 0.1 * u as f64).collect();
        let profile = BenefitProfile::from_values(p.clone(), p).unwrap();
        let col = RRCollection::build(
            &g,
            &profile,
            400,
            400,
            &mut named_stream(22, "w"),
            &mut named_stream(22, "z"),
        )
        .unwrap();
        let s_r = SeedSet::rival([0]);
        let config = SolverConfig::new(3);
        let (pi, _) = pi_upper(&col, &s_r, &BTreeSet::new(), &config).unwrap();
        let mut singles: Vec<f64> = (0..6)
            .map(|u| col.estimate_w(&SeedSet::positive([u])))
            .collect();
        singles.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let expect: f64 = singles.iter().take(3).sum();
        assert!((pi - expect).abs() < 1e-9, "pi {pi} vs top-k sum {expect}");
    }

    #[test]
    fn certificate_matches_report_and_is_bounded() {
        let (col, s_r) = small_instance(13);
        let config = SolverConfig::new(2);
        let report = modular_modular(&col, &s_r, &config).unwrap();
        let ratio = approximation_certificate(&col, &report, &config).unwrap();
        assert!((ratio - report.ratio.unwrap()).abs() < 1e-12);
        // numerator <= f_hat <= pi <= denominator makes the ratio at most 1
        if report.f_lower <= report.f_upper_opt.unwrap() {
            assert!(ratio <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn budget_larger_than_n_rejected() {
        let (col, s_r) = small_instance(14);
        let err = modular_modular(&col, &s_r, &SolverConfig::new(99)).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }
}
