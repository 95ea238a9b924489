//! Moments, entropies and extropy of PGDUS-IW.
//!
//! `cargo run --release --example properties`

use pgdus::dist::Params;
use pgdus::properties::{extropy, raw_moment, renyi_entropy, MomentMethod};

fn main() -> pgdus::Result<()> {
    for p in [Params::new(5.0, 1.0, 1.0)?, Params::new(5.0, 1.0, 2.0)?, Params::new(4.0, 0.6, 0.3)?] {
        println!("params {:?}", p.to_array());
        for s in 1..=3 {
            let quad = raw_moment(&p, s, MomentMethod::Quadrature)?;
            match raw_moment(&p, s, MomentMethod::Series) {
                Ok(series) => println!("  E[T^{s}] = {quad:.10} (series {series:.10})"),
                Err(_) => println!("  E[T^{s}] = {quad:.10}"),
            }
        }
        for delta in [0.5, 2.0, 3.0] {
            println!("  Renyi({delta}) = {:.8}", renyi_entropy(&p, delta)?);
        }
        println!("  extropy = {:.8}", extropy(&p)?);
    }
    match raw_moment(&Params::new(1.0, 1.0, 1.0)?, 1, MomentMethod::Quadrature) {
        Err(e) => println!("lambda = 1: {e}"),
        Ok(v) => println!("unexpected mean {v}"),
    }
    Ok(())
}
