//! Structural counterexamples for the overall-benefit objective, verified
//! against the exhaustive oracle: the objective is neither monotone nor
//! submodular nor supermodular in the positive seed set.

use std::collections::BTreeSet;

use rivalcast_core::benefit::BenefitProfile;
use rivalcast_core::diffusion::exact_benefit;
use rivalcast_core::graph::{NodeId, SeedSet, SocialNetwork};

/// Five nodes, deterministic positive edges, rival pinned to a sink node
/// with no out-edges, and q < -p everywhere.
///
/// Node 0 reaches {0,1,2,3}; node 4 reaches {4,2,3}; node 1 is the rival
/// seed and a sink.
fn witness_instance() -> (SocialNetwork, BenefitProfile, SeedSet) {
    let rows = vec![
        (0, 1, 1.0, 1.0),
        (0, 2, 1.0, 1.0),
        (0, 3, 1.0, 1.0),
        (4, 2, 1.0, 1.0),
        (4, 3, 1.0, 1.0),
    ];
    let network = SocialNetwork::new(5, rows).unwrap();
    let profile = BenefitProfile::constant(5, 1.0, -2.0).unwrap();
    (network, profile, SeedSet::rival([1]))
}

fn f(
    network: &SocialNetwork,
    profile: &BenefitProfile,
    s_r: &SeedSet,
    s: &BTreeSet<NodeId>,
) -> f64 {
    exact_benefit(network, profile, &SeedSet::positive(s.iter().copied()), s_r)
        .unwrap()
        .f
}

fn subsets(n: usize) -> Vec<BTreeSet<NodeId>> {
    (0u32..(1 << n))
        .map(|mask| (0..n).filter(|&u| mask & (1 << u) != 0).collect())
        .collect()
}

#[test]
fn single_node_instance_is_not_monotone() {
    let network = SocialNetwork::new(1, vec![]).unwrap();
    let profile = BenefitProfile::from_values(vec![1.0], vec![-0.5]).unwrap();
    let s_r = SeedSet::rival([0]);
    let seeded = exact_benefit(&network, &profile, &SeedSet::positive([0]), &s_r).unwrap();
    let empty = exact_benefit(&network, &profile, &SeedSet::positive([]), &s_r).unwrap();
    assert!((seeded.f - (-0.5)).abs() < 1e-12);
    assert_eq!(empty.f, 0.0);
    assert!(seeded.f < empty.f, "adding the node must lower the benefit");
}

#[test]
fn deterministic_instance_violates_submodularity_and_supermodularity() {
    let (network, profile, s_r) = witness_instance();
    let all = subsets(5);
    let mut submodular_violation = None;
    let mut supermodular_violation = None;
    for s in &all {
        for t in &all {
            if !s.is_subset(t) {
                continue;
            }
            for u in 0..5usize {
                if t.contains(&u) {
                    continue;
                }
                let mut s_u = s.clone();
                s_u.insert(u);
                let mut t_u = t.clone();
                t_u.insert(u);
                let small = f(&network, &profile, &s_r, &s_u) - f(&network, &profile, &s_r, s);
                let large = f(&network, &profile, &s_r, &t_u) - f(&network, &profile, &s_r, t);
                if small < large - 1e-9 && submodular_violation.is_none() {
                    submodular_violation = Some((s.clone(), t.clone(), u, small, large));
                }
                if small > large + 1e-9 && supermodular_violation.is_none() {
                    supermodular_violation = Some((s.clone(), t.clone(), u, small, large));
                }
            }
        }
    }
    let sub = submodular_violation.expect("expected a submodularity violation");
    let sup = supermodular_violation.expect("expected a supermodularity violation");
    println!(
        "submodularity violated at S={:?} T={:?} u={} ({} < {})",
        sub.0, sub.1, sub.2, sub.3, sub.4
    );
    println!(
        "supermodularity violated at S={:?} T={:?} u={} ({} > {})",
        sup.0, sup.1, sup.2, sup.3, sup.4
    );
}

/// The hand-checkable quadruples behind the brute-force search above.
#[test]
fn witness_quadruples_by_hand() {
    let (network, profile, s_r) = witness_instance();
    let fv = |ids: &[NodeId]| f(&network, &profile, &s_r, &ids.iter().copied().collect());

    // marginal of the rival-covered sink node 1:
    // against the empty set it costs q = -2, against {0} it costs nothing
    assert!((fv(&[1]) - (-2.0)).abs() < 1e-12);
    assert!((fv(&[0]) - 1.0).abs() < 1e-12);
    assert!((fv(&[0, 1]) - 1.0).abs() < 1e-12);
    let small = fv(&[1]) - 0.0;
    let large = fv(&[0, 1]) - fv(&[0]);
    assert!(small < large, "marginal grew: not submodular");

    // marginal of node 4 (covers 2 and 3): worth 3 alone, only 1 after 0
    assert!((fv(&[4]) - 3.0).abs() < 1e-12);
    assert!((fv(&[0, 4]) - 2.0).abs() < 1e-12);
    let small = fv(&[4]) - 0.0;
    let large = fv(&[0, 4]) - fv(&[0]);
    assert!(small > large, "marginal shrank: not supermodular");
}

/// With q = p the rival causes no disturbance and f collapses to w.
#[test]
fn no_disturbance_collapses_to_w() {
    for seed in 0..10u64 {
        let network = rivalcast_core::synthetic::random_network(5, 7, (0.2, 0.9), seed).unwrap();
        let p: Vec<f64> = (0..5).map(|u| 0.1 + 0.15 * u as f64).collect();
        let profile = BenefitProfile::from_values(p.clone(), p).unwrap();
        let s_r = SeedSet::rival([0, 2]);
        for s in subsets(5) {
            let res = exact_benefit(
                &network,
                &profile,
                &SeedSet::positive(s.iter().copied()),
                &s_r,
            )
            .unwrap();
            assert!((res.f - res.w).abs() < 1e-9);
        }
    }
}
