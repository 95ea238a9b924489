//! Stress-strength reliability: closed forms, Monte Carlo check and
//! estimation from simulated samples.
//!
//! `cargo run --release --example stress_strength`

use pgdus::reliability::{
    estimate_r_mle, estimate_r_mps, estimate_rck_mle, mc_oracle_r, r_multi, r_single, MultiComponentSpec,
    StressStrengthParams, TwoSample,
};
use pgdus::{Lifetime, Sample};

fn main() -> pgdus::Result<()> {
    println!("R(gamma1 = 2, gamma2 = 1) = {:.6}", r_single(2.0, 1.0)?);
    let params = StressStrengthParams::new(1.0, 1.0, 2.0, 1.0)?;
    for (c, k) in [(1, 1), (1, 3), (2, 3), (3, 3)] {
        let spec = MultiComponentSpec::new(c, k)?;
        let exact = r_multi(spec, 2.0, 1.0)?;
        let mc = mc_oracle_r(&params, Some(spec), 200_000, 1)?;
        println!("R({c},{k}) = {exact:.6}  Monte Carlo {mc:.6}");
    }

    let data = TwoSample::new(params.strength().sample(200, 10)?, params.stress().sample(200, 11)?);
    let ml = estimate_r_mle(&data)?;
    let mps = estimate_r_mps(&data)?;
    println!("estimated R: ML {:.4}  MPS {:.4}  (truth {:.4})", ml.r_hat, mps.r_hat, 2.0 / 3.0);
    println!("swapped samples, ML: {:.4}", estimate_r_mle(&data.swapped())?.r_hat);

    let spec = MultiComponentSpec::new(2, 3)?;
    let strength: Vec<Sample> = (0..3).map(|j| params.strength().sample(100, 20 + j)).collect::<Result<_, _>>()?;
    let stress = params.stress().sample(100, 30)?;
    let fit = estimate_rck_mle(&strength, &stress, spec)?;
    println!("estimated R(2,3): {:.4}  (truth {:.4})", fit.r_hat, r_multi(spec, 2.0, 1.0)?);
    Ok(())
}
