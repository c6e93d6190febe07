//! `verify`: oracle-backed checks of the randomized machinery on instances
//! small enough for the exhaustive oracle, printed as one JSON line per
//! property. Exit code 0 when every property passes, 1 otherwise.

use rand::Rng;
use serde::Serialize;
use serde_json::json;

use rivalcast_core::benefit::BenefitProfile;
use rivalcast_core::bounds::ModularBound;
use rivalcast_core::diffusion::exact_benefit;
use rivalcast_core::graph::{NodeId, SeedSet};
use rivalcast_core::ris::RRCollection;
use rivalcast_core::solver::{modular_max, modular_modular, SolverConfig};
use rivalcast_core::streams::named_stream;
use rivalcast_core::synthetic::random_network;

use crate::args::VerifyArgs;
use crate::error::{CliError, CliResult};

#[derive(Serialize)]
struct PropertyResult {
    property: &'static str,
    pass: bool,
    stat: serde_json::Value,
}

fn emit(result: &PropertyResult) -> CliResult<()> {
    println!("{}", serde_json::to_string(result)?);
    Ok(())
}

fn se(scale: f64, prob: f64, draws: usize) -> f64 {
    scale * (prob * (1.0 - prob) / draws as f64).sqrt()
}

/// Estimator error in standard-error units against the exact oracle over
/// random seed-set pairs. The corrupt hook biases `w_hat` upward and must
/// make this check fail.
fn estimator_error(args: &VerifyArgs) -> CliResult<PropertyResult> {
    let n = 6;
    let g = random_network(
        n,
        9,
        (0.2, 0.9),
        rivalcast_core::streams::derive_seed(args.seed, "verify-graph"),
    )
    .map_err(CliError::from)?;
    let profile = BenefitProfile::generate_with(n, &mut named_stream(args.seed, "verify-weights"));
    let col = RRCollection::build(
        &g,
        &profile,
        args.theta,
        args.theta,
        &mut named_stream(args.seed, "verify-w"),
        &mut named_stream(args.seed, "verify-z"),
    )?;
    let mut rng = named_stream(args.seed, "verify-pairs");
    let mut worst: f64 = 0.0;
    let mut exact_mismatches = 0usize;
    let mut pass = true;
    for _ in 0..args.trials {
        let s_p = SeedSet::positive((0..n).filter(|_| rng.gen::<f64>() < 0.4));
        let s_r = SeedSet::rival((0..n).filter(|_| rng.gen::<f64>() < 0.3));
        let exact = exact_benefit(&g, &profile, &s_p, &s_r)?;
        let mut w_hat = col.estimate_w(&s_p);
        if args.corrupt_estimator {
            w_hat += 0.05 * profile.p_total();
        }
        let z_hat = col.estimate_z(&s_p, &s_r);
        let f_hat = w_hat - z_hat;
        let se_w = se(profile.p_total(), exact.w / profile.p_total(), args.theta);
        let se_z = if profile.l_total() > 0.0 {
            se(profile.l_total(), exact.z / profile.l_total(), args.theta)
        } else {
            0.0
        };
        let se_f = (se_w * se_w + se_z * se_z).sqrt();
        for (est, truth, se_val) in [
            (w_hat, exact.w, se_w),
            (z_hat, exact.z, se_z),
            (f_hat, exact.f, se_f),
        ] {
            let err = (est - truth).abs();
            if se_val == 0.0 {
                // a zero-variance estimate must match exactly
                if err > 1e-9 {
                    pass = false;
                    exact_mismatches += 1;
                }
            } else {
                let units = err / se_val;
                worst = worst.max(units);
                if units > 3.0 {
                    pass = false;
                }
            }
        }
    }
    Ok(PropertyResult {
        property: "estimator_error",
        pass,
        stat: json!({
            "trials": args.trials,
            "theta": args.theta,
            "max_error_in_se_units": worst,
            "exact_mismatches": exact_mismatches,
            "limit": 3.0,
            "corrupted": args.corrupt_estimator,
        }),
    })
}

/// The certified ratio must lower-bound the true quality of the returned
/// set in at least a `1 - delta` fraction of independent collections.
fn certificate_coverage(args: &VerifyArgs) -> CliResult<PropertyResult> {
    let n = 6;
    let g = random_network(
        n,
        8,
        (0.2, 0.9),
        rivalcast_core::streams::derive_seed(args.seed, "verify-cert-graph"),
    )
    .map_err(CliError::from)?;
    let profile =
        BenefitProfile::generate_with(n, &mut named_stream(args.seed, "verify-cert-weights"));
    let s_r = SeedSet::rival([0, 3]);
    let k = args.k.min(n);

    // exhaustive true optimum over all feasible sets
    let mut max_f = f64::NEG_INFINITY;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize > k {
            continue;
        }
        let s = SeedSet::positive((0..n).filter(|&u| mask & (1 << u) != 0));
        max_f = max_f.max(exact_benefit(&g, &profile, &s, &s_r)?.f);
    }

    let mut holds = 0usize;
    for trial in 0..args.trials {
        let col = RRCollection::build(
            &g,
            &profile,
            args.theta,
            args.theta,
            &mut named_stream(args.seed, &format!("verify-cert-w/{trial}")),
            &mut named_stream(args.seed, &format!("verify-cert-z/{trial}")),
        )?;
        let config = SolverConfig {
            k,
            delta: args.delta,
            seed: trial as u64,
            ..SolverConfig::new(k)
        };
        let report = modular_modular(&col, &s_r, &config)?;
        let true_f = exact_benefit(
            &g,
            &profile,
            &SeedSet::positive(report.solution.iter().copied()),
            &s_r,
        )?
        .f;
        if true_f >= report.ratio.unwrap_or(f64::NEG_INFINITY) * max_f - 1e-9 {
            holds += 1;
        }
    }
    let fraction = holds as f64 / args.trials as f64;
    Ok(PropertyResult {
        property: "certificate_coverage",
        pass: fraction >= 1.0 - args.delta,
        stat: json!({
            "trials": args.trials,
            "holds": holds,
            "fraction": fraction,
            "required": 1.0 - args.delta,
            "exhaustive_max_f": max_f,
        }),
    })
}

/// The modular maximizer must match exhaustive subset enumeration exactly.
fn modular_max_exactness(args: &VerifyArgs) -> CliResult<PropertyResult> {
    let mut rng = named_stream(args.seed, "verify-modmax");
    let cases = 200usize;
    let mut worst_gap: f64 = 0.0;
    let mut pass = true;
    for _ in 0..cases {
        let n = rng.gen_range(1..=10usize);
        let k = rng.gen_range(0..=n);
        let random_bound = |rng: &mut rand_chacha::ChaCha8Rng| ModularBound {
            base: rng.gen_range(-1.0..1.0),
            unit: (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        };
        let gain = random_bound(&mut rng);
        let cost = random_bound(&mut rng);
        let (_, got) = modular_max(&gain, &cost, k);
        let mut best = f64::NEG_INFINITY;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize > k {
                continue;
            }
            let s: std::collections::BTreeSet<NodeId> =
                (0..n).filter(|&u| mask & (1 << u) != 0).collect();
            best = best.max(gain.value_of(&s) - cost.value_of(&s));
        }
        let gap = (got - best).abs();
        worst_gap = worst_gap.max(gap);
        if gap > 1e-9 {
            pass = false;
        }
    }
    Ok(PropertyResult {
        property: "modular_max_exactness",
        pass,
        stat: json!({ "cases": cases, "worst_gap": worst_gap, "limit": 1e-9 }),
    })
}

pub fn run(args: &VerifyArgs) -> CliResult<i32> {
    if args.trials == 0 {
        return Err(CliError::validation("trials must be at least 1"));
    }
    if args.theta == 0 {
        return Err(CliError::validation("theta must be at least 1"));
    }
    if !(args.delta > 0.0 && args.delta < 1.0) {
        return Err(CliError::validation(format!(
            "delta must lie in (0, 1), got {}",
            args.delta
        )));
    }
    let results = [
        estimator_error(args)?,
        certificate_coverage(args)?,
        modular_max_exactness(args)?,
    ];
    let mut all_pass = true;
    for result in &results {
        emit(result)?;
        all_pass &= result.pass;
    }
    println!(
        "{}",
        serde_json::to_string(&json!({
            "summary": if all_pass { "pass" } else { "fail" },
            "properties": results.len(),
        }))?
    );
    Ok(if all_pass { 0 } else { 1 })
}
