//! Monte Carlo bias / MSE studies of the PGDUS-IW estimators.
//!
//! Replicate `r` of method `m` at sample size index `j` draws its data from
//! the stream `(seed, m, j, r)` and seeds the optimiser restarts with
//! `(seed, m, j, r, 1)`, so replicates share no generator state and the
//! study is a deterministic function of its spec.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::dist::{BaselineKind, Lifetime, Params};
use crate::error::{Error, Result};
use crate::estimation::{fit_model, FitOptions, Method, MIN_FIT_SIZE};
use crate::rng::{derive_seed, stream};
use crate::sample::Sample;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudySpec {
    pub true_params: Params,
    pub sample_sizes: Vec<usize>,
    pub replications: usize,
    pub methods: Vec<Method>,
    pub seed: u64,
}

impl Default for StudySpec {
    /// 1000 replications at `(1, 0.6, 0.3)` for `n = 50, 100, 150, 350`
    /// by both methods.
    fn default() -> Self {
        Self {
            true_params: Params {
                lambda: 1.0,
                theta: 0.6,
                gamma: 0.3,
            },
            sample_sizes: vec![50, 100, 150, 350],
            replications: 1000,
            methods: Method::BOTH.to_vec(),
            seed: 2024,
        }
    }
}

impl StudySpec {
    pub fn validate(&self) -> Result<()> {
        Params::new(self.true_params.lambda, self.true_params.theta, self.true_params.gamma)?;
        if self.replications == 0 {
            return Err(Error::Domain("replications must be at least 1".into()));
        }
        if self.methods.is_empty() || self.sample_sizes.is_empty() {
            return Err(Error::Domain("study needs at least one method and one size".into()));
        }
        if let Some(&n) = self.sample_sizes.iter().find(|&&n| n < MIN_FIT_SIZE) {
            return Err(Error::SampleTooSmall {
                required: MIN_FIT_SIZE,
                actual: n,
            });
        }
        Ok(())
    }
}

/// Mean, bias and MSE of a list of estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    pub bias: f64,
    pub mse: f64,
}

/// `mean`, `bias = mean - truth` and `mse = mean((x - truth)^2)`.
pub fn bias_mse(estimates: &[f64], truth: f64) -> Result<Summary> {
    if estimates.is_empty() {
        return Err(Error::EmptySample);
    }
    let n = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / n;
    let mse = estimates.iter().map(|x| (x - truth).powi(2)).sum::<f64>() / n;
    Ok(Summary {
        mean,
        bias: mean - truth,
        mse,
    })
}

/// One `(method, n, parameter)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    pub method: Method,
    pub n: usize,
    pub parameter: String,
    pub truth: f64,
    pub mean: f64,
    pub bias: f64,
    pub mse: f64,
    /// Replicates excluded because the fit failed, did not converge or
    /// ended on the edge of the search box.
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyResult {
    pub spec: StudySpec,
    pub rows: Vec<StudyRow>,
    /// Raw estimates `(lambda, theta, gamma)` of the converged replicates,
    /// per `(method, n)` in row order.
    #[serde(skip)]
    pub estimates: Vec<((Method, usize), Vec<[f64; 3]>)>,
}

impl StudyResult {
    pub fn row(&self, method: Method, n: usize, parameter: &str) -> Option<&StudyRow> {
        self.rows
            .iter()
            .find(|r| r.method == method && r.n == n && r.parameter == parameter)
    }

    /// Raw estimates for one `(method, n)` cell.
    pub fn estimates(&self, method: Method, n: usize) -> Option<&[[f64; 3]]> {
        self.estimates
            .iter()
            .find(|(key, _)| *key == (method, n))
            .map(|(_, v)| v.as_slice())
    }

    /// CSV with columns `method,n,parameter,mean,bias,mse,failures`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,n,parameter,mean,bias,mse,failures\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{:.6},{:.6},{:.6},{}",
                r.method, r.n, r.parameter, r.mean, r.bias, r.mse, r.failures
            );
        }
        out
    }
}

const PARAMETERS: [&str; 3] = ["lambda", "theta", "gamma"];

fn replicate(spec: &StudySpec, mi: usize, ni: usize, r: usize) -> Option<[f64; 3]> {
    let path = [mi as u64, ni as u64, r as u64];
    let n = spec.sample_sizes[ni];
    let mut rng = stream(spec.seed, &path);
    let sample = Sample::new(spec.true_params.draw(n, &mut rng).ok()?).ok()?;
    let options = FitOptions {
        seed: derive_seed(spec.seed, &[mi as u64, ni as u64, r as u64, 1]),
        ..FitOptions::default()
    };
    let fit = fit_model(&sample, BaselineKind::InverseWeibull, spec.methods[mi], None, &options).ok()?;
    if !fit.converged || fit.on_boundary {
        return None;
    }
    let p = fit.params()?;
    Some(p.to_array())
}

/// Runs every `(method, n)` cell of the study.
pub fn run_study(spec: &StudySpec) -> Result<StudyResult> {
    spec.validate()?;
    let truth = spec.true_params.to_array();
    let mut rows = Vec::new();
    let mut estimates = Vec::new();
    for (mi, &method) in spec.methods.iter().enumerate() {
        for (ni, &n) in spec.sample_sizes.iter().enumerate() {
            let fits: Vec<Option<[f64; 3]>> = (0..spec.replications)
                .into_par_iter()
                .map(|r| replicate(spec, mi, ni, r))
                .collect();
            let ok: Vec<[f64; 3]> = fits.into_iter().flatten().collect();
            let failures = spec.replications - ok.len();
            for (j, name) in PARAMETERS.iter().enumerate() {
                let values: Vec<f64> = ok.iter().map(|e| e[j]).collect();
                let s = bias_mse(&values, truth[j]).unwrap_or(Summary {
                    mean: f64::NAN,
                    bias: f64::NAN,
                    mse: f64::NAN,
                });
                rows.push(StudyRow {
                    method,
                    n,
                    parameter: name.to_string(),
                    truth: truth[j],
                    mean: s.mean,
                    bias: s.bias,
                    mse: s.mse,
                    failures,
                });
            }
            estimates.push(((method, n), ok));
        }
    }
    Ok(StudyResult {
        spec: spec.clone(),
        rows,
        estimates,
    })
}
