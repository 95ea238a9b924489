//! Evaluates PGDUS-IW and the other transformed baselines on a grid.
//!
//! `cargo run --example evaluate`

use pgdus::dist::{Baseline, Lifetime, Params, PgdusModel};

fn main() -> pgdus::Result<()> {
    let p = Params::new(1.0, 0.6, 0.3)?;
    println!("PGDUS-IW{:?}", p.to_array());
    println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "t", "cdf", "sf", "pdf", "hazard");
    for t in [0.1, 0.3, 0.6, 1.0, 2.0, 5.0, 20.0] {
        println!(
            "{t:>8.2} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            p.cdf(t),
            p.sf(t),
            p.pdf(t),
            p.hazard(t)?
        );
    }
    println!("median = {:.6}", p.quantile(0.5)?);

    let others = [
        ("pgdus-w", PgdusModel::new(Baseline::weibull(2.0, 1.0)?, 1.5)?),
        ("pgdus-l", PgdusModel::new(Baseline::lomax(3.0, 2.0)?, 1.5)?),
        ("pgdus-ik", PgdusModel::new(Baseline::inverse_kumaraswamy(2.0, 3.0)?, 1.5)?),
        ("pgdus-e", PgdusModel::new(Baseline::exponential(1.0)?, 1.5)?),
    ];
    for (name, m) in &others {
        println!("{name:<9} cdf(1) = {:.6}  pdf(1) = {:.6}  q(0.9) = {:.6}", m.cdf(1.0), m.pdf(1.0), m.quantile(0.9)?);
    }
    Ok(())
}
