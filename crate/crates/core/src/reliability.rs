//! Stress-strength reliability for PGDUS-IW components sharing `(lambda, theta)`.
//!
//! With strength `T1 ~ PGDUS-IW(lambda, theta, gamma1)` and stress
//! `T2 ~ PGDUS-IW(lambda, theta, gamma2)`,
//! `R = P(T2 < T1) = gamma1 / (gamma1 + gamma2)`. A system of `k` strength
//! components that survives when at least `c` of them exceed a common stress
//! has
//!
//! ```text
//! R_{c,k} = sum_{l=c}^{k} sum_{p=0}^{l} C(k,l) C(l,p) (-1)^p gamma2 / (gamma1 (k+p-l) + gamma2).
//! ```
//!
//! Estimation treats `(lambda, theta)` as unknown. For each candidate
//! `(lambda, theta)` the two exponents are profiled out, in closed form for
//! ML and by a one-dimensional root solve for MPS, and the outer search runs
//! over `(ln lambda, ln theta)` only.

use rayon::prelude::*;
use rand::distributions::Open01;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dist::{Lifetime, Params};
use crate::error::{check_positive, Error, Result};
use crate::estimation::{
    heuristic_start, log_likelihood, maximize_log_params, profile_gamma_mle, profile_gamma_mps,
    sum_ln_spacings, FitOptions, Method,
};
use crate::properties::binomial;
use crate::rng::stream;
use crate::sample::Sample;
use crate::BaselineKind;

/// Largest `k` accepted by [`MultiComponentSpec`].
pub const MAX_COMPONENTS: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StressStrengthParams {
    pub lambda: f64,
    pub theta: f64,
    /// Strength exponent.
    pub gamma1: f64,
    /// Stress exponent.
    pub gamma2: f64,
}

impl StressStrengthParams {
    pub fn new(lambda: f64, theta: f64, gamma1: f64, gamma2: f64) -> Result<Self> {
        check_positive("lambda", lambda)?;
        check_positive("theta", theta)?;
        check_positive("gamma1", gamma1)?;
        check_positive("gamma2", gamma2)?;
        Ok(Self {
            lambda,
            theta,
            gamma1,
            gamma2,
        })
    }

    pub fn strength(&self) -> Params {
        Params {
            lambda: self.lambda,
            theta: self.theta,
            gamma: self.gamma1,
        }
    }

    pub fn stress(&self) -> Params {
        Params {
            lambda: self.lambda,
            theta: self.theta,
            gamma: self.gamma2,
        }
    }

    /// Exchanges the strength and stress exponents.
    pub fn swapped(&self) -> Self {
        Self {
            gamma1: self.gamma2,
            gamma2: self.gamma1,
            ..*self
        }
    }
}

/// At least `c` of `k` strength components must exceed the stress.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiComponentSpec {
    c: u32,
    k: u32,
}

impl MultiComponentSpec {
    pub fn new(c: u32, k: u32) -> Result<Self> {
        if c < 1 || c > k || k > MAX_COMPONENTS {
            return Err(Error::Domain(format!(
                "need 1 <= c <= k <= {MAX_COMPONENTS}, got c = {c}, k = {k}"
            )));
        }
        Ok(Self { c, k })
    }

    /// The single-component system.
    pub fn single() -> Self {
        Self { c: 1, k: 1 }
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

/// Independent strength and stress samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSample {
    pub strength: Sample,
    pub stress: Sample,
}

impl TwoSample {
    pub fn new(strength: Sample, stress: Sample) -> Self {
        Self { strength, stress }
    }

    pub fn swapped(&self) -> Self {
        Self {
            strength: self.stress.clone(),
            stress: self.strength.clone(),
        }
    }
}

/// `gamma1 / (gamma1 + gamma2)`.
pub fn r_single(gamma1: f64, gamma2: f64) -> Result<f64> {
    check_positive("gamma1", gamma1)?;
    check_positive("gamma2", gamma2)?;
    Ok(gamma1 / (gamma1 + gamma2))
}

/// Neumaier-compensated sum; also returns the sum of magnitudes.
fn compensated_sum(terms: impl IntoIterator<Item = f64>) -> (f64, f64) {
    let (mut sum, mut comp, mut magnitude) = (0.0f64, 0.0f64, 0.0f64);
    for x in terms {
        let t = sum + x;
        comp += if sum.abs() >= x.abs() {
            (sum - t) + x
        } else {
            (x - t) + sum
        };
        sum = t;
        magnitude += x.abs();
    }
    (sum + comp, magnitude)
}

/// Multi-component reliability `R_{c,k}`.
///
/// The alternating double sum is accumulated with compensated summation.
/// When the term magnitudes are large enough that rounding could exceed
/// `1e-10` (large `k`), each inner sum over `p` is replaced by its
/// equivalent positive form `(gamma2/gamma1) B(k - l + gamma2/gamma1, l + 1)`.
///
/// Fails with [`Error::Cancellation`] if the result leaves `[0, 1]` by more
/// than `1e-10`.
pub fn r_multi(spec: MultiComponentSpec, gamma1: f64, gamma2: f64) -> Result<f64> {
    check_positive("gamma1", gamma1)?;
    check_positive("gamma2", gamma2)?;
    let (c, k) = (spec.c, spec.k);
    let terms = (c..=k).flat_map(|l| {
        (0..=l).map(move |p| {
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(k, l) * binomial(l, p) * gamma2
                / (gamma1 * (k + p - l) as f64 + gamma2)
        })
    });
    let (mut r, magnitude) = compensated_sum(terms);
    if magnitude * f64::EPSILON > 1e-12 {
        r = r_multi_beta(spec, gamma1, gamma2);
    }
    if !(-1e-10..=1.0 + 1e-10).contains(&r) {
        return Err(Error::Cancellation(r));
    }
    Ok(r.clamp(0.0, 1.0))
}

fn r_multi_beta(spec: MultiComponentSpec, gamma1: f64, gamma2: f64) -> f64 {
    use statrs::function::beta::ln_beta;
    let ratio = gamma2 / gamma1;
    let k = spec.k;
    (spec.c..=k)
        .map(|l| {
            binomial(k, l) * ratio * ln_beta((k - l) as f64 + ratio, l as f64 + 1.0).exp()
        })
        .sum()
}

/// Joint log-likelihood of the two samples with shared `(lambda, theta)`.
pub fn two_sample_loglik(params: &StressStrengthParams, data: &TwoSample) -> f64 {
    log_likelihood(&params.strength(), &data.strength) + log_likelihood(&params.stress(), &data.stress)
}

/// Sum of the two mean log-spacings.
pub fn two_sample_log_ps(params: &StressStrengthParams, data: &TwoSample) -> f64 {
    mean_ln_ps(&params.strength(), &data.strength) + mean_ln_ps(&params.stress(), &data.stress)
}

fn mean_ln_ps(p: &Params, s: &Sample) -> f64 {
    sum_ln_spacings(p, s.sorted()) / (s.len() + 1) as f64
}

/// A stress-strength fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityFit {
    /// Point estimate of `R` or `R_{c,k}`.
    pub r_hat: f64,
    pub params: StressStrengthParams,
    pub spec: MultiComponentSpec,
    pub method: Method,
    /// Maximised joint objective.
    pub objective: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Best exponent for one sample at fixed `(lambda, theta)`.
fn inner_gamma(lambda: f64, theta: f64, s: &Sample, method: Method) -> Result<f64> {
    match method {
        Method::Ml => profile_gamma_mle(lambda, theta, s),
        Method::Mps => profile_gamma_mps(&Params::new(lambda, theta, 1.0)?.as_model(), s),
    }
}

fn profiled(lambda: f64, theta: f64, data: &TwoSample, method: Method) -> Result<(StressStrengthParams, f64)> {
    let g1 = inner_gamma(lambda, theta, &data.strength, method)?;
    let g2 = inner_gamma(lambda, theta, &data.stress, method)?;
    let p = StressStrengthParams::new(lambda, theta, g1, g2)?;
    let value = match method {
        Method::Ml => two_sample_loglik(&p, data),
        Method::Mps => two_sample_log_ps(&p, data),
    };
    Ok((p, value))
}

/// Fits the shared-baseline model to two samples and returns `R_{c,k}`
/// at the estimate (`R` for the single-component spec).
pub fn estimate(
    data: &TwoSample,
    spec: MultiComponentSpec,
    method: Method,
    options: &FitOptions,
) -> Result<ReliabilityFit> {
    let (n, m) = (data.strength.len(), data.stress.len());
    if n < 2 || m < 2 || n + m < 5 {
        return Err(Error::SampleTooSmall {
            required: 5,
            actual: n + m,
        });
    }
    let pooled = Sample::pooled([&data.strength, &data.stress])?;
    let start = &heuristic_start(BaselineKind::InverseWeibull, &pooled)[..2];

    let objective = |x: &[f64]| match profiled(x[0].exp(), x[1].exp(), data, method) {
        Ok((_, v)) => v,
        Err(_) => f64::NEG_INFINITY,
    };
    let (x, _, iterations, converged) = maximize_log_params(objective, start, options);
    let (params, objective) = profiled(x[0].exp(), x[1].exp(), data, method)?;
    Ok(ReliabilityFit {
        r_hat: r_multi(spec, params.gamma1, params.gamma2)?,
        params,
        spec,
        method,
        objective,
        converged: converged && objective.is_finite(),
        iterations,
    })
}

/// ML estimate of `R`.
pub fn estimate_r_mle(data: &TwoSample) -> Result<ReliabilityFit> {
    estimate(data, MultiComponentSpec::single(), Method::Ml, &FitOptions::default())
}

/// MPS estimate of `R`.
pub fn estimate_r_mps(data: &TwoSample) -> Result<ReliabilityFit> {
    estimate(data, MultiComponentSpec::single(), Method::Mps, &FitOptions::default())
}

/// Pools `k` equal-size strength samples into one block and checks the
/// stress sample has the same size.
pub fn pool_components(strength: &[Sample], stress: &Sample, spec: MultiComponentSpec) -> Result<TwoSample> {
    if strength.len() != spec.k as usize {
        return Err(Error::ShapeMismatch(format!(
            "expected {} strength samples, got {}",
            spec.k,
            strength.len()
        )));
    }
    let n = stress.len();
    if let Some(bad) = strength.iter().find(|s| s.len() != n) {
        return Err(Error::ShapeMismatch(format!(
            "strength sample of size {} does not match stress size {n}",
            bad.len()
        )));
    }
    let pooled = Sample::with_label(
        strength.iter().flat_map(|s| s.values().iter().copied()).collect(),
        "pooled strength",
    )?;
    Ok(TwoSample::new(pooled, stress.clone()))
}

/// ML estimate of `R_{c,k}` from `k` strength samples and one stress
/// sample, all of size `N`.
pub fn estimate_rck_mle(strength: &[Sample], stress: &Sample, spec: MultiComponentSpec) -> Result<ReliabilityFit> {
    let data = pool_components(strength, stress, spec)?;
    estimate(&data, spec, Method::Ml, &FitOptions::default())
}

/// MPS estimate of `R_{c,k}`; the pooled strength observations form one
/// spacings block.
pub fn estimate_rck_mps(strength: &[Sample], stress: &Sample, spec: MultiComponentSpec) -> Result<ReliabilityFit> {
    let data = pool_components(strength, stress, spec)?;
    estimate(&data, spec, Method::Mps, &FitOptions::default())
}

const MC_CHUNK: usize = 1 << 16;

/// Monte Carlo frequency of "at least `c` of `k` strengths exceed the
/// stress" over `n_draws` simulated systems. Chunk `j` of draws uses the
/// stream `(seed, j)`.
pub fn mc_oracle_r(
    params: &StressStrengthParams,
    spec: Option<MultiComponentSpec>,
    n_draws: usize,
    seed: u64,
) -> Result<f64> {
    if n_draws == 0 {
        return Err(Error::Domain("need at least one draw".into()));
    }
    let spec = spec.unwrap_or_else(MultiComponentSpec::single);
    let (strength, stress) = (params.strength(), params.stress());
    let chunks = n_draws.div_ceil(MC_CHUNK);
    let hits: usize = (0..chunks)
        .into_par_iter()
        .map(|j| {
            let mut rng = stream(seed, &[j as u64]);
            let len = MC_CHUNK.min(n_draws - j * MC_CHUNK);
            let mut hits = 0;
            for _ in 0..len {
                let t2 = stress.quantile(rng.sample(Open01)).expect("open unit draw");
                let survivors = (0..spec.k)
                    .filter(|_| strength.quantile(rng.sample(Open01)).expect("open unit draw") > t2)
                    .count();
                if survivors >= spec.c as usize {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    Ok(hits as f64 / n_draws as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn single_component_values() {
        assert_eq!(r_single(1.3, 1.3).unwrap(), 0.5);
        assert_eq!(r_single(1.0, 3.0).unwrap(), 0.25);
        assert!(r_single(0.0, 1.0).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(MultiComponentSpec::new(0, 3).is_err());
        assert!(MultiComponentSpec::new(4, 3).is_err());
        assert!(MultiComponentSpec::new(1, 31).is_err());
        assert!(MultiComponentSpec::new(30, 30).is_ok());
    }

    #[test]
    fn multi_reduces_to_single() {
        for &(g1, g2) in &[(1.0, 1.0), (2.0, 1.0), (0.3, 2.7)] {
            let r = r_multi(MultiComponentSpec::single(), g1, g2).unwrap();
            assert_relative_eq!(r, r_single(g1, g2).unwrap(), max_relative = 1e-15);
        }
    }

    #[test]
    fn multi_matches_beta_form() {
        for k in 1..=8 {
            for c in 1..=k {
                for &(g1, g2) in &[(0.3, 1.0), (1.0, 1.0), (2.7, 0.3)] {
                    let spec = MultiComponentSpec::new(c, k).unwrap();
                    let alt = r_multi(spec, g1, g2).unwrap();
                    assert!((alt - r_multi_beta(spec, g1, g2)).abs() < 1e-12, "c={c} k={k}");
                }
            }
        }
    }

    #[test]
    fn multi_is_accurate_for_large_k() {
        let spec = MultiComponentSpec::new(10, 30).unwrap();
        let r = r_multi(spec, 1.0, 1.0).unwrap();
        // equal exponents: the number of strengths above the stress is
        // uniform on 0..=k
        assert_relative_eq!(r, 21.0 / 31.0, max_relative = 1e-12);
    }

    #[test]
    fn multi_nonincreasing_in_c() {
        for k in 1..=8 {
            let mut prev = 1.0;
            for c in 1..=k {
                let r = r_multi(MultiComponentSpec::new(c, k).unwrap(), 2.7, 0.3).unwrap();
                assert!(r <= prev + 1e-14);
                prev = r;
            }
        }
    }

    #[test]
    fn oracle_is_deterministic() {
        let p = StressStrengthParams::new(1.0, 1.0, 2.0, 1.0).unwrap();
        let a = mc_oracle_r(&p, None, 100_000, 5).unwrap();
        assert_eq!(a, mc_oracle_r(&p, None, 100_000, 5).unwrap());
        assert!((a - 2.0 / 3.0).abs() < 3.0 * (2.0f64 / 9.0 / 1e5).sqrt());
    }

    #[test]
    fn loglik_is_additive() {
        let p = StressStrengthParams::new(1.0, 0.6, 2.0, 0.5).unwrap();
        let data = TwoSample::new(
            p.strength().sample(30, 1).unwrap(),
            p.stress().sample(20, 2).unwrap(),
        );
        let direct = log_likelihood(&p.strength(), &data.strength) + log_likelihood(&p.stress(), &data.stress);
        assert!((two_sample_loglik(&p, &data) - direct).abs() < 1e-10);
        assert!(two_sample_loglik(&p, &data).is_finite());
    }

    #[test]
    fn ml_estimate_satisfies_profile_identities() {
        let p = StressStrengthParams::new(1.0, 1.0, 2.0, 1.0).unwrap();
        let data = TwoSample::new(
            p.strength().sample(100, 11).unwrap(),
            p.stress().sample(100, 12).unwrap(),
        );
        let fit = estimate_r_mle(&data).unwrap();
        let e = fit.params;
        assert_relative_eq!(e.gamma1, profile_gamma_mle(e.lambda, e.theta, &data.strength).unwrap(), max_relative = 1e-12);
        assert_relative_eq!(e.gamma2, profile_gamma_mle(e.lambda, e.theta, &data.stress).unwrap(), max_relative = 1e-12);
        assert!(fit.converged);

        let swapped = estimate_r_mle(&data.swapped()).unwrap();
        assert!((swapped.r_hat - (1.0 - fit.r_hat)).abs() <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn rck_checks_shapes() {
        let p = StressStrengthParams::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let a = p.strength().sample(10, 1).unwrap();
        let b = p.strength().sample(11, 2).unwrap();
        let stress = p.stress().sample(10, 3).unwrap();
        let spec = MultiComponentSpec::new(1, 2).unwrap();
        assert!(matches!(estimate_rck_mle(&[a.clone(), b], &stress, spec), Err(Error::ShapeMismatch(_))));
        assert!(matches!(estimate_rck_mle(&[a], &stress, spec), Err(Error::ShapeMismatch(_))));
    }
}
