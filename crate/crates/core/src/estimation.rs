//! Maximum likelihood (ML) and maximum product of spacings (MPS) estimation.
//!
//! Both objectives are maximised over the log of every parameter with a
//! multi-start Nelder-Mead simplex, which keeps all parameters positive
//! without a constrained solver. Starting points come from a moment-style
//! heuristic plus lognormally jittered restarts drawn from a seeded stream,
//! so a fit is a deterministic function of `(sample, options)`.
//!
//! For ML the exponent `gamma` has a closed-form maximiser given the baseline
//! parameters,
//!
//! ```text
//! gamma_hat = n / (n ln(e-1) - sum_i ln(exp(F_base(t_i)) - 1)),
//! ```
//!
//! which holds for every baseline. After the simplex stops, `gamma` is reset
//! to this value; the log-likelihood is concave in `gamma`, so this can only
//! raise the objective, and the returned fit satisfies the identity exactly.
//! The log-PS is concave in `gamma` as well and MPS fits get the same
//! treatment through [`profile_gamma_mps`].

use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::dist::{ln_dus, ln_one_minus_exp, BaselineKind, Lifetime, Params, PgdusModel};
use crate::error::{Error, Result};
use crate::optimize::NelderMead;
use crate::rng::stream;
use crate::sample::Sample;

/// Smallest sample accepted by the three-parameter fits.
pub const MIN_FIT_SIZE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "ML")]
    Ml,
    #[serde(rename = "MPS")]
    Mps,
}

impl Method {
    pub const BOTH: [Method; 2] = [Method::Ml, Method::Mps];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Ml => "ML",
            Method::Mps => "MPS",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ml" | "mle" => Ok(Method::Ml),
            "mps" => Ok(Method::Mps),
            other => Err(Error::Parse(format!("unknown method `{other}`"))),
        }
    }
}

/// Outcome of a fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: PgdusModel,
    /// Maximised objective: log-likelihood for ML, log-PS for MPS.
    pub objective: f64,
    /// Log-likelihood at the estimate (equal to `objective` for ML).
    pub log_likelihood: f64,
    pub method: Method,
    /// The simplex collapsed at a finite optimum.
    pub converged: bool,
    /// Some log-parameter ended on the edge of the search box: the supremum
    /// lies along a degenerate direction and the estimate is arbitrary there.
    pub on_boundary: bool,
    pub iterations: usize,
    pub n: usize,
}

impl FitResult {
    /// PGDUS-IW parameters, if this fit is of that family.
    pub fn params(&self) -> Option<Params> {
        self.model.as_iw()
    }

    pub fn param_count(&self) -> usize {
        self.model.param_count()
    }
}

/// Optimiser settings shared by every fit.
#[derive(Debug, Clone, Copy)]
pub struct FitOptions {
    /// Jittered restarts in addition to the heuristic start.
    pub restarts: usize,
    /// Standard deviation of the multiplicative lognormal jitter.
    pub jitter: f64,
    pub seed: u64,
    pub simplex: NelderMead,
    /// Search box for every log-parameter: `[-bound, bound]`.
    pub log_bound: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            restarts: 4,
            jitter: 0.5,
            seed: 0x5eed,
            simplex: NelderMead::default(),
            log_bound: 25.0,
        }
    }
}

/// `sum_i ln f(t_i)`, summed over the sorted sample so the value does not
/// depend on input order.
pub fn log_likelihood<M: Lifetime + ?Sized>(model: &M, s: &Sample) -> f64 {
    s.sorted().iter().map(|&t| model.ln_pdf(t)).sum()
}

/// Closed-form ML estimate of `gamma` for PGDUS-IW with `(lambda, theta)`
/// held fixed.
pub fn profile_gamma_mle(lambda: f64, theta: f64, s: &Sample) -> Result<f64> {
    let p = Params::new(lambda, theta, 1.0)?;
    profile_gamma(&p.as_model(), s)
}

/// Closed-form ML estimate of `gamma` for any baseline, holding the
/// baseline parameters of `model` fixed.
///
/// Fails with [`Error::DegenerateSample`] when the denominator
/// `n ln(e-1) - sum ln(exp(F_base) - 1)` is within `n * 1e-12` of zero,
/// i.e. every observation sits where the baseline CDF is 1 to working
/// precision.
pub fn profile_gamma(model: &PgdusModel, s: &Sample) -> Result<f64> {
    let n = s.len() as f64;
    // ln(e-1) - ln(exp(F) - 1) = -ln DUS(F) >= 0, summed without cancellation
    let denom: f64 = s
        .sorted()
        .iter()
        .map(|&t| -ln_dus(model.baseline.ln_cdf(t)))
        .sum();
    if !(denom > n * 1e-12) || !denom.is_finite() {
        return Err(Error::DegenerateSample(format!(
            "closed-form gamma denominator is {denom:e}"
        )));
    }
    Ok(n / denom)
}

/// MPS estimate of `gamma` holding the baseline parameters of `model` fixed.
///
/// With `L_i = ln DUS(F_base(t_(i)))` the PGDUS CDF is `exp(gamma L_i)`, and
/// every log-spacing is concave in `gamma`, so the maximiser is the unique
/// root of the derivative
///
/// ```text
/// L_1 + sum_{i=2}^{n} [L_i + c_i / expm1(gamma c_i)] + d / expm1(gamma d),
/// c_i = L_i - L_(i-1),  d = -L_n.
/// ```
///
/// A zero `c_i` (tie) contributes `L_i + 1 / gamma`, the derivative of the
/// log-density that replaces the spacing. Solved by safeguarded Newton.
pub fn profile_gamma_mps(model: &PgdusModel, s: &Sample) -> Result<f64> {
    let logs: Vec<f64> = s.sorted().iter().map(|&t| ln_dus(model.baseline.ln_cdf(t))).collect();
    let last = logs[logs.len() - 1];
    if !logs[0].is_finite() || !(last < 0.0) {
        return Err(Error::DegenerateSample(format!(
            "baseline CDF is 0 or 1 at the sample extremes (ln DUS in [{:e}, {last:e}])",
            logs[0]
        )));
    }
    // derivative and second derivative of the log-PS in gamma
    let slope = |g: f64| {
        let gap = |c: f64| {
            let x = g * c;
            if x < 1e-8 {
                (1.0 / g - 0.5 * c, -1.0 / (g * g))
            } else if x < 700.0 {
                let em1 = x.exp_m1();
                (c / em1, -c * c * (em1 + 1.0) / (em1 * em1))
            } else {
                (0.0, 0.0)
            }
        };
        let (mut d1, mut d2) = gap(-last);
        d1 += logs[0];
        for w in logs.windows(2) {
            let (a, b) = gap(w[1] - w[0]);
            d1 += w[1] + a;
            d2 += b;
        }
        (d1, d2)
    };
    let start = profile_gamma(model, s)?;
    let (mut lo, mut hi) = (start, start);
    while slope(lo).0 <= 0.0 {
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(Error::DegenerateSample("MPS gamma below representable range".into()));
        }
    }
    while slope(hi).0 >= 0.0 {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::DegenerateSample("MPS gamma above representable range".into()));
        }
    }
    let mut g = start.clamp(lo, hi);
    for _ in 0..200 {
        let (d1, d2) = slope(g);
        if d1 > 0.0 {
            lo = g;
        } else {
            hi = g;
        }
        let newton = g - d1 / d2;
        let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - g).abs() <= 1e-15 * g || hi - lo <= 1e-15 * hi {
            return Ok(next);
        }
        g = next;
    }
    Ok(g)
}

/// The `n + 1` spacings `F(t_(i)) - F(t_(i-1))` with `F(t_(0)) = 0` and
/// `F(t_(n+1)) = 1`.
pub fn spacings<M: Lifetime + ?Sized>(model: &M, s: &Sample) -> Vec<f64> {
    let mut prev = 0.0;
    let mut out: Vec<f64> = s
        .sorted()
        .iter()
        .map(|&t| {
            let c = model.cdf(t);
            let d = c - prev;
            prev = c;
            d
        })
        .collect();
    out.push(1.0 - prev);
    out
}

/// Log of a single spacing between sorted neighbours `a <= b`, formed from
/// whichever of the CDF or the survival function keeps relative accuracy.
/// A tie is replaced by the density at the tied point.
fn ln_spacing<M: Lifetime + ?Sized>(model: &M, a: f64, b: f64) -> f64 {
    if a == b {
        return model.ln_pdf(b);
    }
    let ln_fb = model.ln_cdf(b);
    if ln_fb <= -std::f64::consts::LN_2 {
        ln_fb + ln_one_minus_exp(model.ln_cdf(a) - ln_fb)
    } else {
        let ln_sa = model.ln_sf(a);
        ln_sa + ln_one_minus_exp(model.ln_sf(b) - ln_sa)
    }
}

/// `(1 / (n + 1)) sum_{i=1}^{n+1} ln S_i` over the sorted sample.
pub fn log_product_spacings<M: Lifetime + ?Sized>(model: &M, s: &Sample) -> Result<f64> {
    if s.len() < 2 {
        return Err(Error::SampleTooSmall {
            required: 2,
            actual: s.len(),
        });
    }
    Ok(sum_ln_spacings(model, s.sorted()) / (s.len() + 1) as f64)
}

/// `sum_{i=1}^{n+1} ln S_i` for an already sorted slice.
pub(crate) fn sum_ln_spacings<M: Lifetime + ?Sized>(model: &M, sorted: &[f64]) -> f64 {
    let n = sorted.len();
    let mut total = model.ln_cdf(sorted[0]) + model.ln_sf(sorted[n - 1]);
    for w in sorted.windows(2) {
        total += ln_spacing(model, w[0], w[1]);
    }
    total
}

/// Starting point for a fit: baseline parameters followed by `gamma = 1`.
pub(crate) fn heuristic_start(kind: BaselineKind, s: &Sample) -> Vec<f64> {
    let logs: Vec<f64> = s.sorted().iter().map(|t| t.ln()).collect();
    let n = logs.len() as f64;
    let mean = logs.iter().sum::<f64>() / n;
    let var = logs.iter().map(|l| (l - mean).powi(2)).sum::<f64>() / n;
    // sd of a Gumbel-type log-lifetime is pi / (sqrt(6) * shape)
    let shape = if var > 0.0 {
        (1.282_549_830_161_864 / var.sqrt()).clamp(0.05, 50.0)
    } else {
        1.0
    };
    let median = s.median();
    let base = match kind {
        BaselineKind::InverseWeibull | BaselineKind::Weibull => vec![shape, median],
        BaselineKind::Lomax => vec![2.0, median],
        BaselineKind::InverseKumaraswamy => {
            let b = -std::f64::consts::LN_2 / (-(-shape * median.ln_1p()).exp()).ln_1p();
            vec![shape, b.clamp(1e-6, 1e6)]
        }
        BaselineKind::Exponential => vec![1.0 / s.sorted().iter().sum::<f64>() * n],
    };
    let mut v = base;
    v.push(1.0);
    v
}

/// Log-distance from the box edge below which an optimum counts as on it.
const EDGE: f64 = 1e-3;

/// Multi-start simplex maximisation of `objective` over log-parameters.
/// Returns `(best log-parameters, best value, iterations, converged)`.
pub(crate) fn maximize_log_params<F>(
    objective: F,
    start: &[f64],
    options: &FitOptions,
) -> (Vec<f64>, f64, usize, bool)
where
    F: Fn(&[f64]) -> f64,
{
    let bound = options.log_bound;
    let neg = |x: &[f64]| {
        if x.iter().any(|v| v.abs() > bound) {
            return f64::INFINITY;
        }
        let v = objective(x);
        if v.is_finite() {
            -v
        } else {
            f64::INFINITY
        }
    };
    let start_log: Vec<f64> = start.iter().map(|v| v.ln().clamp(-bound, bound)).collect();

    let mut rng = stream(options.seed, &[start.len() as u64]);
    let normal = Normal::new(0.0, options.jitter.max(0.0)).expect("finite jitter");
    let mut starts = vec![start_log.clone()];
    for _ in 0..options.restarts {
        starts.push(
            start_log
                .iter()
                .map(|x| (x + normal.sample(&mut rng)).clamp(-bound, bound))
                .collect(),
        );
    }

    let mut best: Option<(Vec<f64>, f64, usize, bool)> = None;
    for x0 in &starts {
        let m = options.simplex.minimize(neg, x0);
        // polish from the best vertex once; a collapsed simplex can stall
        let m = if m.value.is_finite() {
            let again = options.simplex.minimize(neg, &m.x);
            if again.value <= m.value {
                crate::optimize::Minimum {
                    iterations: m.iterations + again.iterations,
                    ..again
                }
            } else {
                m
            }
        } else {
            m
        };
        let value = -m.value;
        if best.as_ref().is_none_or(|b| value > b.1) {
            best = Some((m.x, value, m.iterations, m.converged));
        }
    }
    best.expect("at least one start")
}

/// Whether a log-parameter point sits on the edge of the search box.
pub(crate) fn on_box_edge(x: &[f64], options: &FitOptions) -> bool {
    x.iter().any(|v| v.abs() > options.log_bound - EDGE)
}

fn objective_value(model: &PgdusModel, s: &Sample, method: Method) -> f64 {
    match method {
        Method::Ml => log_likelihood(model, s),
        Method::Mps => sum_ln_spacings(model, s.sorted()) / (s.len() + 1) as f64,
    }
}

/// Fits a PGDUS model with the given baseline family by ML or MPS.
pub fn fit_model(
    s: &Sample,
    kind: BaselineKind,
    method: Method,
    init: Option<&PgdusModel>,
    options: &FitOptions,
) -> Result<FitResult> {
    if s.len() < MIN_FIT_SIZE {
        return Err(Error::SampleTooSmall {
            required: MIN_FIT_SIZE,
            actual: s.len(),
        });
    }
    let start = match init {
        Some(m) if m.kind() == kind => m.to_vec(),
        Some(m) => {
            return Err(Error::ShapeMismatch(format!(
                "initial model is {} but fitting {}",
                m.kind(),
                kind
            )))
        }
        None => heuristic_start(kind, s),
    };

    let objective = |x: &[f64]| {
        let v: Vec<f64> = x.iter().map(|l| l.exp()).collect();
        match PgdusModel::from_vec(kind, &v) {
            Ok(m) => objective_value(&m, s, method),
            Err(_) => f64::NEG_INFINITY,
        }
    };
    let (x, mut value, iterations, mut converged) = maximize_log_params(objective, &start, options);
    let on_boundary = on_box_edge(&x, options);
    let v: Vec<f64> = x.iter().map(|l| l.exp()).collect();
    let mut model = PgdusModel::from_vec(kind, &v)?;

    if value.is_finite() {
        // a degenerate sample here means the simplex ran into the edge of the
        // parameter box; the simplex point stands
        let gamma = match method {
            Method::Ml => profile_gamma(&model, s),
            Method::Mps => profile_gamma_mps(&model, s),
        };
        if let Ok(profiled) = gamma.and_then(|g| model.with_gamma(g)) {
            let pv = objective_value(&profiled, s, method);
            // the profiled exponent is exact; ties within rounding go its way
            if pv >= value - 1e-12 * value.abs().max(1.0) {
                model = profiled;
                value = pv;
            }
        }
    }
    if !value.is_finite() {
        converged = false;
    }
    Ok(FitResult {
        model,
        objective: value,
        log_likelihood: log_likelihood(&model, s),
        method,
        converged,
        on_boundary,
        iterations,
        n: s.len(),
    })
}

/// ML fit of PGDUS-IW with default options.
pub fn fit_mle(s: &Sample, init: Option<Params>) -> Result<FitResult> {
    let init = init.map(PgdusModel::from);
    fit_model(
        s,
        BaselineKind::InverseWeibull,
        Method::Ml,
        init.as_ref(),
        &FitOptions::default(),
    )
}

/// MPS fit of PGDUS-IW with default options.
pub fn fit_mps(s: &Sample, init: Option<Params>) -> Result<FitResult> {
    let init = init.map(PgdusModel::from);
    fit_model(
        s,
        BaselineKind::InverseWeibull,
        Method::Mps,
        init.as_ref(),
        &FitOptions::default(),
    )
}

/// Fit of a competing PGDUS family with default options.
pub fn fit_competitor(s: &Sample, kind: BaselineKind, method: Method) -> Result<FitResult> {
    fit_model(s, kind, method, None, &FitOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::relief_times;
    use crate::dist::{Baseline, LN_E_M1};
    use approx::assert_relative_eq;

    fn p(l: f64, th: f64, g: f64) -> Params {
        Params::new(l, th, g).unwrap()
    }

    #[test]
    fn detects_optimum_on_box_edge() {
        let options = FitOptions {
            log_bound: 3.0,
            ..FitOptions::default()
        };
        let (x, ..) = maximize_log_params(|x: &[f64]| x[0] - (x[1] - 0.5).powi(2), &[1.0, 1.0], &options);
        assert!(on_box_edge(&x, &options));
        let (x, ..) = maximize_log_params(|x: &[f64]| -(x[0] - 1.0).powi(2) - (x[1] - 0.5).powi(2), &[1.0, 1.0], &options);
        assert!((x[0] - 1.0).abs() < 1e-6);
        assert!(!on_box_edge(&x, &options));
    }

    fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        while b - a > 1e-12 {
            let (c, d) = (b - phi * (b - a), a + phi * (b - a));
            if f(c) > f(d) {
                b = d;
            } else {
                a = c;
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn mps_gamma_matches_direct_search() {
        let truth = p(1.3, 0.8, 0.6);
        for (n, seed) in [(5, 1), (40, 2), (300, 3)] {
            let s = truth.sample(n, seed).unwrap();
            for at in [p(1.3, 0.8, 1.0), p(0.7, 1.5, 1.0), p(3.0, 0.4, 1.0)] {
                let g = profile_gamma_mps(&at.as_model(), &s).unwrap();
                let lps = |x: f64| sum_ln_spacings(&at.with_gamma(x.exp()).unwrap(), s.sorted());
                let want = golden_max(lps, -15.0, 15.0).exp();
                assert_relative_eq!(g, want, max_relative = 1e-7);
            }
        }
        let tied = Sample::new(vec![0.5, 0.9, 0.9, 1.4, 2.0, 2.0, 2.0, 3.5]).unwrap();
        let at = p(1.1, 1.2, 1.0);
        let g = profile_gamma_mps(&at.as_model(), &tied).unwrap();
        let lps = |x: f64| sum_ln_spacings(&at.with_gamma(x.exp()).unwrap(), tied.sorted());
        assert_relative_eq!(g, golden_max(lps, -15.0, 15.0).exp(), max_relative = 1e-7);
    }

    #[test]
    fn mps_fit_is_stationary_in_gamma() {
        let s = p(1.0, 0.6, 0.3).sample(80, 4).unwrap();
        let fit = fit_mps(&s, None).unwrap();
        let g = profile_gamma_mps(&fit.model, &s).unwrap();
        assert_relative_eq!(fit.params().unwrap().gamma, g, max_relative = 1e-9);
    }

    #[test]
    fn single_observation_likelihood() {
        let s = Sample::new(vec![1.0]).unwrap();
        let par = p(1.0, 1.0, 1.0);
        assert_eq!(log_likelihood(&par, &s), par.ln_pdf(1.0));
    }

    #[test]
    fn likelihood_is_product_of_densities() {
        let s = Sample::new(vec![0.4, 1.1, 2.5]).unwrap();
        let par = p(1.3, 0.8, 0.6);
        let prod: f64 = s.values().iter().map(|&t| par.pdf(t)).product();
        assert_relative_eq!(log_likelihood(&par, &s).exp(), prod, max_relative = 1e-10);

        let data = relief_times();
        let direct: f64 = data.values().iter().map(|&t| par.pdf(t).ln()).sum();
        assert!((log_likelihood(&par, &data) - direct).abs() < 1e-10);
    }

    #[test]
    fn profile_gamma_single_point() {
        let s = Sample::new(vec![2.0]).unwrap();
        let g = profile_gamma_mle(1.0, 2.0, &s).unwrap();
        let expected = 1.0 / (LN_E_M1 - ((1.0f64 / std::f64::consts::E).exp() - 1.0).ln());
        assert_relative_eq!(g, expected, max_relative = 1e-13);
    }

    #[test]
    fn profile_gamma_guards_degenerate_denominator() {
        // F_IW(t) = 1 to working precision at every observation
        let s = Sample::new(vec![1e300, 1e301, 1e302]).unwrap();
        assert!(matches!(
            profile_gamma_mle(1.0, 1.0, &s),
            Err(Error::DegenerateSample(_))
        ));
    }

    #[test]
    fn profile_gamma_is_stationary_point() {
        let s = p(1.0, 0.6, 0.3).sample(80, 3).unwrap();
        for &(l, th) in &[(1.0, 0.6), (2.0, 1.5), (0.7, 0.2)] {
            let g = profile_gamma_mle(l, th, &s).unwrap();
            let h = 1e-5 * g;
            let up = log_likelihood(&p(l, th, g + h), &s);
            let down = log_likelihood(&p(l, th, g - h), &s);
            let slope = (up - down) / (2.0 * h);
            assert!(slope.abs() < 1e-6 * s.len() as f64, "slope {slope}");
        }
    }

    #[test]
    fn spacings_sum_to_one() {
        let s = p(1.0, 0.6, 0.3).sample(40, 9).unwrap();
        for par in [p(1.0, 0.6, 0.3), p(3.0, 5.0, 2.0), p(0.2, 0.01, 9.0)] {
            let sp = spacings(&par, &s);
            assert_eq!(sp.len(), 41);
            assert!(sp.iter().all(|&x| x >= 0.0));
            assert!((sp.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn two_point_log_product_spacings() {
        let par = p(1.4, 0.7, 0.5);
        let s = Sample::new(vec![1.4, 0.7]).unwrap();
        let (f1, f2) = (par.cdf(0.7), par.cdf(1.4));
        let expected = (f1.ln() + (f2 - f1).ln() + (1.0 - f2).ln()) / 3.0;
        assert_relative_eq!(log_product_spacings(&par, &s).unwrap(), expected, max_relative = 1e-12);
        assert!(log_product_spacings(&par, &Sample::new(vec![1.0]).unwrap()).is_err());
    }

    #[test]
    fn ties_keep_log_ps_finite() {
        let par = p(1.0, 0.6, 0.3);
        let s = Sample::new(vec![0.5, 1.0, 1.0, 2.0, 3.5]).unwrap();
        assert!(log_product_spacings(&par, &s).unwrap().is_finite());
        let fit = fit_mps(&s, None).unwrap();
        assert!(fit.objective.is_finite());
    }

    #[test]
    fn log_ps_finite_at_truth() {
        let par = p(1.0, 0.6, 0.3);
        let s = par.sample(200, 21).unwrap();
        assert!(log_product_spacings(&par, &s).unwrap().is_finite());
    }

    #[test]
    fn fits_reject_tiny_samples() {
        let s = Sample::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(fit_mle(&s, None), Err(Error::SampleTooSmall { .. })));
        assert!(matches!(fit_mps(&s, None), Err(Error::SampleTooSmall { .. })));
    }

    #[test]
    fn mle_satisfies_closed_form_gamma() {
        let s = p(1.0, 0.6, 0.3).sample(150, 4).unwrap();
        let fit = fit_mle(&s, None).unwrap();
        assert!(fit.converged);
        let est = fit.params().unwrap();
        let g = profile_gamma_mle(est.lambda, est.theta, &s).unwrap();
        assert_relative_eq!(est.gamma, g, max_relative = 1e-5);
        assert_eq!(fit.objective, fit.log_likelihood);
    }

    #[test]
    fn fit_is_invariant_to_order() {
        let s = p(1.0, 0.6, 0.3).sample(60, 8).unwrap();
        let mut rev = s.values().to_vec();
        rev.reverse();
        let r = Sample::new(rev).unwrap();
        assert_eq!(fit_mle(&s, None).unwrap(), fit_mle(&r, None).unwrap());
        assert_eq!(fit_mps(&s, None).unwrap(), fit_mps(&r, None).unwrap());
    }

    #[test]
    fn fit_is_deterministic() {
        let s = p(1.0, 0.6, 0.3).sample(60, 8).unwrap();
        assert_eq!(fit_mle(&s, None).unwrap(), fit_mle(&s, None).unwrap());
    }

    #[test]
    fn relief_times_fit_converges() {
        let data = relief_times();
        let fit = fit_mle(&data, None).unwrap();
        assert!(fit.converged && fit.objective.is_finite());
        let est = fit.params().unwrap();
        let g = profile_gamma_mle(est.lambda, est.theta, &data).unwrap();
        assert_relative_eq!(est.gamma, g, max_relative = 1e-5);
        for kind in [
            BaselineKind::Weibull,
            BaselineKind::Lomax,
            BaselineKind::InverseKumaraswamy,
        ] {
            let fit = fit_competitor(&data, kind, Method::Ml).unwrap();
            assert!(fit.converged, "{kind}");
            assert!(fit.objective.is_finite());
        }
    }

    #[test]
    fn init_must_match_family() {
        let s = p(1.0, 0.6, 0.3).sample(30, 1).unwrap();
        let w = PgdusModel::new(Baseline::weibull(1.0, 1.0).unwrap(), 1.0).unwrap();
        assert!(fit_model(&s, BaselineKind::InverseWeibull, Method::Ml, Some(&w), &FitOptions::default()).is_err());
    }
}
