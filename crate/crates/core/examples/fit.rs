//! ML and MPS fits of PGDUS-IW to the relief-times data and to a simulated
//! sample.
//!
//! `cargo run --release --example fit`

use pgdus::datasets::relief_times;
use pgdus::estimation::{fit_mle, fit_mps, profile_gamma_mle, FitResult};
use pgdus::gof::info_criteria;
use pgdus::{Lifetime, Params};

fn show(label: &str, fit: &FitResult) -> pgdus::Result<()> {
    let p = fit.params().expect("inverse Weibull fit");
    let ic = info_criteria(fit)?;
    println!(
        "{label:<18} {}: lambda {:.5} theta {:.5} gamma {:.5}  objective {:.5}  AICc {:.4}  converged {}",
        fit.method, p.lambda, p.theta, p.gamma, fit.objective, ic.aicc, fit.converged
    );
    Ok(())
}

fn main() -> pgdus::Result<()> {
    let data = relief_times();
    let ml = fit_mle(&data, None)?;
    show("relief times", &ml)?;
    show("relief times", &fit_mps(&data, None)?)?;
    let p = ml.params().unwrap();
    println!("closed-form gamma at the ML point: {:.8}", profile_gamma_mle(p.lambda, p.theta, &data)?);

    let truth = Params::new(1.0, 0.6, 0.3)?;
    let sim = truth.sample(500, 42)?;
    show("simulated n=500", &fit_mle(&sim, Some(truth))?)?;
    show("simulated n=500", &fit_mps(&sim, Some(truth))?)?;
    Ok(())
}
