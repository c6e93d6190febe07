pub mod bench;
pub mod bruteforce;
pub mod evaluate;
pub mod sample;
pub mod solve;
pub mod verify;

use rivalcast_core::bounds::PermutationStrategy;
use rivalcast_core::graph::{SeedSet, SocialNetwork};
use rivalcast_core::ris::RRCollection;
use rivalcast_core::solver::{self, SolverConfig, SolverReport, UpperBoundVariant};
use rivalcast_core::streams::named_stream;

use crate::error::{CliError, CliResult};

/// Run one named method on a prepared instance. `seed` drives the method's
/// internal streams only; baselines draw from a stream named after it.
#[allow(clippy::too_many_arguments)]
pub fn solve_one(
    method: &str,
    k: usize,
    network: &SocialNetwork,
    collection: &RRCollection,
    s_r: &SeedSet,
    delta: f64,
    alpha: &str,
    seed: u64,
) -> CliResult<SolverReport> {
    let strategy: PermutationStrategy = alpha.parse()?;
    let config = |variant| SolverConfig {
        k,
        variant,
        strategy,
        delta,
        max_iterations: 100,
        seed,
    };
    let report = match method {
        "modmod1" => solver::modular_modular(collection, s_r, &config(UpperBoundVariant::ModMod1))?,
        "modmod2" => solver::modular_modular(collection, s_r, &config(UpperBoundVariant::ModMod2))?,
        "greedy" => solver::greedy(collection, s_r, k, delta)?,
        "infmax" => {
            let seeds = solver::baseline_infmax(collection, k);
            solver::evaluate_seed_set(collection, s_r, &seeds, delta, "infmax")?
        }
        "maxdegree" => {
            let seeds = solver::baseline_maxdegree(network, k);
            solver::evaluate_seed_set(collection, s_r, &seeds, delta, "maxdegree")?
        }
        "random" => {
            let mut rng = named_stream(seed, "random-baseline");
            let seeds = solver::baseline_random(network, k, &mut rng);
            solver::evaluate_seed_set(collection, s_r, &seeds, delta, "random")?
        }
        other => {
            return Err(CliError::validation(format!(
                "unknown method {other:?} (expected one of {:?})",
                solve::METHODS
            )))
        }
    };
    Ok(report)
}
