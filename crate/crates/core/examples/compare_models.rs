//! Ranks the four three-parameter PGDUS families on the relief-times data.
//!
//! Run with `cargo run --release --example compare_models [B]`.

use pgdus::datasets::relief_times;
use pgdus::estimation::Method;
use pgdus::gof::{compare_models, GofOptions};
use pgdus::BaselineKind;

fn main() -> pgdus::Result<()> {
    let bootstrap = std::env::args()
        .nth(1)
        .map(|b| b.parse().expect("bootstrap count"))
        .unwrap_or(500);
    let data = relief_times();
    let models = [
        BaselineKind::InverseWeibull,
        BaselineKind::Weibull,
        BaselineKind::Lomax,
        BaselineKind::InverseKumaraswamy,
    ];
    let options = GofOptions {
        bootstrap,
        ..Default::default()
    };
    let ranked = compare_models(&data, &models, &[Method::Ml], &options)?;

    println!(
        "{:<4} {:<10} {:>9} {:>9} {:>7} {:>7} {:>7} {:>7} {:>7} {:>7}  params",
        "rank", "model", "AICc", "BICc", "KS", "p", "AD", "p", "CvM", "p"
    );
    for row in &ranked {
        match &row.report {
            Some(r) => println!(
                "{:<4} {:<10} {:>9.4} {:>9.4} {:>7.4} {:>7.3} {:>7.4} {:>7.3} {:>7.4} {:>7.3}  {:?}",
                row.rank,
                row.model,
                r.aicc,
                r.bicc,
                r.ks_stat,
                r.ks_p.unwrap_or(f64::NAN),
                r.ad_stat,
                r.ad_p.unwrap_or(f64::NAN),
                r.cvm_stat,
                r.cvm_p.unwrap_or(f64::NAN),
                r.fit.model.to_vec(),
            ),
            None => println!("{:<4} {:<10} failed: {}", row.rank, row.model, row.error.as_deref().unwrap_or("")),
        }
    }
    Ok(())
}
