//! Order-statistic distributions of PGDUS-IW against simulation.
//!
//! `cargo run --release --example order_statistics`

use pgdus::properties::{order_stat_cdf, order_stat_pdf, OrderStatSpec};
use pgdus::rng::stream;
use pgdus::{Lifetime, Params};

fn main() -> pgdus::Result<()> {
    let p = Params::new(1.0, 0.6, 0.3)?;
    let n = 5;
    let draws = 100_000;
    let mut rng = stream(7, &[]);
    let samples: Vec<Vec<f64>> = (0..draws)
        .map(|_| {
            let mut v = p.draw(n, &mut rng)?;
            v.sort_by(f64::total_cmp);
            Ok(v)
        })
        .collect::<pgdus::Result<_>>()?;
    let t = 1.0;
    println!("P(T_(r:{n}) <= {t}) at {:?}", p.to_array());
    for r in 1..=n as u32 {
        let spec = OrderStatSpec::new(r, n as u32)?;
        let mc = samples.iter().filter(|v| v[r as usize - 1] <= t).count() as f64 / draws as f64;
        println!(
            "  r = {r}: exact {:.5}  simulated {mc:.5}  density {:.5}",
            order_stat_cdf(&p, spec, t),
            order_stat_pdf(&p, spec, t)
        );
    }
    Ok(())
}
