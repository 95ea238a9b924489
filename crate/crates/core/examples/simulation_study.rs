//! Bias / MSE study of the ML and MPS estimators at `(1, 0.6, 0.3)`.
//!
//! `cargo run --release --example simulation_study [replications] [n...]`

use pgdus::simulation::{run_study, StudySpec};

fn main() -> pgdus::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("positive integer"))
        .collect();
    let mut spec = StudySpec::default();
    if let Some((&reps, sizes)) = args.split_first() {
        spec.replications = reps;
        if !sizes.is_empty() {
            spec.sample_sizes = sizes.to_vec();
        }
    }
    let started = std::time::Instant::now();
    let result = run_study(&spec)?;
    print!("{}", result.to_csv());
    eprintln!("{:.1?} elapsed", started.elapsed());
    Ok(())
}
