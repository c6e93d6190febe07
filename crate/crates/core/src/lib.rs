//! Benefit-aware influence maximization under a rival cascade.
//!
//! Two independent cascades diffuse over a shared directed graph under the
//! independent-cascade model: a positive cascade we seed, and a rival
//! cascade with a fixed seed set. A node reached only by the positive
//! cascade yields its benefit `p(u)`; a node reached by both yields the
//! disturbed benefit `q(u) <= p(u)`. The expected overall benefit `f` of a
//! positive seed set is neither monotone nor submodular, but it decomposes
//! as `f = w - z` with both `w` and `z` monotone submodular.
//!
//! The crate provides:
//!
//! - [`graph`] / [`benefit`]: the network, probability maps, and weights;
//! - [`diffusion`]: realization sampling and exhaustive/Monte-Carlo oracles;
//! - [`ris`]: reverse-reachable-set estimators for `w` and `z` with
//!   Hoeffding confidence bounds;
//! - [`bounds`]: tight modular upper/lower bounds for coverage objectives;
//! - [`solver`]: the iterative modular-difference solver, greedy and
//!   heuristic baselines, and a per-instance approximation certificate.

pub mod benefit;
pub mod bounds;
pub mod diffusion;
pub mod error;
pub mod graph;
pub mod ris;
pub mod solver;
pub mod streams;
pub mod synthetic;

pub use benefit::BenefitProfile;
pub use error::{Error, Result};
pub use graph::{Cascade, LoadStats, NodeId, ProbabilityRule, SeedSet, SocialNetwork};
pub use ris::RRCollection;
pub use solver::{SolverConfig, SolverReport};
