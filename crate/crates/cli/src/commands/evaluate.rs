//! `evaluate`: print `f`, `w`, and `z` for a fixed seed-set pair, either
//! exactly (tiny graphs) or by Monte Carlo.

use rivalcast_core::diffusion::{exact_benefit, monte_carlo_benefit};
use rivalcast_core::graph::SeedSet;
use rivalcast_core::streams::named_stream;

use crate::args::EvaluateArgs;
use crate::common::{dense_ids, load_instance};
use crate::error::{CliError, CliResult};

enum Mode {
    Exact,
    MonteCarlo(usize),
}

fn parse_mode(text: &str) -> CliResult<Mode> {
    if text == "exact" {
        return Ok(Mode::Exact);
    }
    if let Some(samples) = text.strip_prefix("mc:") {
        let samples: usize = samples
            .parse()
            .map_err(|_| CliError::validation(format!("bad sample count in {text:?}")))?;
        if samples == 0 {
            return Err(CliError::validation("sample count must be positive"));
        }
        return Ok(Mode::MonteCarlo(samples));
    }
    Err(CliError::validation(format!(
        "unknown mode {text:?} (expected exact or mc:<samples>)"
    )))
}

pub fn run(args: &EvaluateArgs) -> CliResult<()> {
    let mode = parse_mode(&args.mode)?;
    let (network, profile) = load_instance(
        &args.dataset,
        args.undirected,
        &args.prob_rule,
        args.weights.as_deref(),
        args.seed,
    )?;
    let s_p = SeedSet::positive(dense_ids(&args.sp, &network)?);
    let s_r = SeedSet::rival(dense_ids(&args.sr, &network)?);
    let (f, w, z) = match mode {
        Mode::Exact => {
            let exact = exact_benefit(&network, &profile, &s_p, &s_r)?;
            (exact.f, exact.w, exact.z)
        }
        Mode::MonteCarlo(samples) => {
            let mut rng = named_stream(args.seed, "evaluate-mc");
            let est = monte_carlo_benefit(&network, &profile, &s_p, &s_r, samples, &mut rng)?;
            (est.f, est.w, est.z)
        }
    };
    println!("f {f}");
    println!("w {w}");
    println!("z {z}");
    Ok(())
}
