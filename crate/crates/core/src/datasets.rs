//! Bundled data.

use crate::sample::Sample;

/// CSV text of the relief-times data: hours of relief for 20 patients
/// receiving an analgesic.
pub const RELIEF_TIMES_CSV: &str = include_str!("../data/relief_times.csv");

/// The relief-times data as a [`Sample`].
pub fn relief_times() -> Sample {
    Sample::from_csv_str(RELIEF_TIMES_CSV, "relief times").expect("bundled data is valid")
}
