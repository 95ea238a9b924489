//! Goodness of fit: EDF statistics, parametric-bootstrap p-values,
//! small-sample information criteria and model ranking.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::dist::{BaselineKind, Lifetime, PgdusModel};
use crate::error::{Error, Result};
use crate::estimation::{fit_model, FitOptions, FitResult, Method};
use crate::rng::{derive_seed, stream};
use crate::sample::Sample;

/// Smallest bootstrap size accepted by [`bootstrap_pvalue`].
pub const MIN_BOOTSTRAP: usize = 100;

/// Default bootstrap size.
pub const DEFAULT_BOOTSTRAP: usize = 500;

/// Empirical CDF: fraction of observations `<= t`.
pub fn ecdf(s: &Sample, t: f64) -> f64 {
    let sorted = s.sorted();
    sorted.partition_point(|&x| x <= t) as f64 / sorted.len() as f64
}

/// Kolmogorov-Smirnov distance `sup |F_n - F|`.
pub fn ks_statistic<M: Lifetime + ?Sized>(s: &Sample, model: &M) -> f64 {
    let n = s.len() as f64;
    s.sorted()
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let f = model.cdf(t);
            let i = i as f64;
            ((i + 1.0) / n - f).max(f - i / n)
        })
        .fold(0.0, f64::max)
}

/// Anderson-Darling statistic `A^2`.
///
/// Fails with [`Error::InfiniteStatistic`] when some fitted CDF value is 0
/// or 1 to machine precision.
pub fn ad_statistic<M: Lifetime + ?Sized>(s: &Sample, model: &M) -> Result<f64> {
    let sorted = s.sorted();
    let n = sorted.len();
    let mut total = 0.0;
    for i in 0..n {
        let ln_f = model.ln_cdf(sorted[i]);
        let ln_s = model.ln_sf(sorted[n - 1 - i]);
        if !ln_f.is_finite() || !ln_s.is_finite() {
            let t = if ln_f.is_finite() { sorted[n - 1 - i] } else { sorted[i] };
            return Err(Error::InfiniteStatistic(t));
        }
        total += (2 * i + 1) as f64 * (ln_f + ln_s);
    }
    Ok(-(n as f64) - total / n as f64)
}

/// Cramér-von Mises statistic `W^2`.
pub fn cvm_statistic<M: Lifetime + ?Sized>(s: &Sample, model: &M) -> f64 {
    let n = s.len() as f64;
    let sum: f64 = s
        .sorted()
        .iter()
        .enumerate()
        .map(|(i, &t)| (model.cdf(t) - (2.0 * i as f64 + 1.0) / (2.0 * n)).powi(2))
        .sum();
    1.0 / (12.0 * n) + sum
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Statistic {
    #[serde(rename = "KS")]
    Ks,
    #[serde(rename = "AD")]
    Ad,
    #[serde(rename = "CVM")]
    Cvm,
}

impl Statistic {
    pub const ALL: [Statistic; 3] = [Statistic::Ks, Statistic::Ad, Statistic::Cvm];

    pub fn compute<M: Lifetime + ?Sized>(self, s: &Sample, model: &M) -> Result<f64> {
        match self {
            Statistic::Ks => Ok(ks_statistic(s, model)),
            Statistic::Ad => ad_statistic(s, model),
            Statistic::Cvm => Ok(cvm_statistic(s, model)),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistic::Ks => "KS",
            Statistic::Ad => "AD",
            Statistic::Cvm => "CVM",
        })
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ks" => Ok(Statistic::Ks),
            "ad" => Ok(Statistic::Ad),
            "cvm" => Ok(Statistic::Cvm),
            other => Err(Error::Parse(format!("unknown statistic `{other}`"))),
        }
    }
}

/// The three EDF statistics of one fitted model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdfStatistics {
    pub ks: f64,
    pub ad: f64,
    pub cvm: f64,
}

impl EdfStatistics {
    /// An infinite AD statistic is kept as `+inf` rather than an error.
    pub fn compute<M: Lifetime + ?Sized>(s: &Sample, model: &M) -> Self {
        Self {
            ks: ks_statistic(s, model),
            ad: ad_statistic(s, model).unwrap_or(f64::INFINITY),
            cvm: cvm_statistic(s, model),
        }
    }

    pub fn get(&self, stat: Statistic) -> f64 {
        match stat {
            Statistic::Ks => self.ks,
            Statistic::Ad => self.ad,
            Statistic::Cvm => self.cvm,
        }
    }
}

/// Parametric-bootstrap p-values for all three statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapPValues {
    pub ks: f64,
    pub ad: f64,
    pub cvm: f64,
    /// Replicates requested.
    pub replicates: usize,
    /// Replicates dropped because the refit failed.
    pub failures: usize,
}

impl BootstrapPValues {
    pub fn get(&self, stat: Statistic) -> f64 {
        match stat {
            Statistic::Ks => self.ks,
            Statistic::Ad => self.ad,
            Statistic::Cvm => self.cvm,
        }
    }
}

/// Parametric bootstrap around an existing fit.
///
/// Replicate `b` draws `n` observations from the fitted model using the
/// stream `(seed, b)`, refits the same family by the same method and
/// records the three statistics. Each p-value is
/// `(1 + #{boot >= observed}) / (B' + 1)` over the `B'` successful
/// replicates.
pub fn bootstrap_fit(
    s: &Sample,
    fit: &FitResult,
    replicates: usize,
    seed: u64,
    options: &FitOptions,
) -> Result<BootstrapPValues> {
    if replicates < MIN_BOOTSTRAP {
        return Err(Error::Domain(format!(
            "bootstrap needs at least {MIN_BOOTSTRAP} replicates, got {replicates}"
        )));
    }
    let observed = EdfStatistics::compute(s, &fit.model);
    let kind = fit.model.kind();
    let n = s.len();
    let boots: Vec<Option<EdfStatistics>> = (0..replicates)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream(seed, &[b as u64]);
            let values = fit.model.draw(n, &mut rng).ok()?;
            let resample = Sample::new(values).ok()?;
            let opts = FitOptions {
                seed: derive_seed(seed, &[b as u64, 1]),
                ..*options
            };
            let refit = fit_model(&resample, kind, fit.method, None, &opts).ok()?;
            Some(EdfStatistics::compute(&resample, &refit.model))
        })
        .collect();
    let ok: Vec<EdfStatistics> = boots.into_iter().flatten().collect();
    let failures = replicates - ok.len();
    let p = |stat: Statistic| {
        let obs = observed.get(stat);
        let exceed = ok.iter().filter(|b| b.get(stat) >= obs).count();
        (1 + exceed) as f64 / (ok.len() + 1) as f64
    };
    Ok(BootstrapPValues {
        ks: p(Statistic::Ks),
        ad: p(Statistic::Ad),
        cvm: p(Statistic::Cvm),
        replicates,
        failures,
    })
}

/// Fits `kind` by `method` and returns the bootstrap p-value of `stat`.
pub fn bootstrap_pvalue(
    s: &Sample,
    kind: BaselineKind,
    method: Method,
    stat: Statistic,
    replicates: usize,
    seed: u64,
) -> Result<f64> {
    let options = FitOptions::default();
    let fit = fit_model(s, kind, method, None, &options)?;
    Ok(bootstrap_fit(s, &fit, replicates, seed, &options)?.get(stat))
}

/// Information criteria of a fit, all computed from its log-likelihood.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfoCriteria {
    pub aic: f64,
    pub bic: f64,
    pub aicc: f64,
    pub bicc: f64,
}

/// AIC, BIC and their small-sample corrections
/// `AICc = AIC + 2k(k+1)/(n-k-1)`, `BICc = BIC + k ln(n) (k+1)/(n-k-1)`.
pub fn info_criteria(fit: &FitResult) -> Result<InfoCriteria> {
    criteria_from(fit.log_likelihood, fit.param_count(), fit.n)
}

pub fn criteria_from(log_likelihood: f64, k: usize, n: usize) -> Result<InfoCriteria> {
    if n <= k + 1 {
        return Err(Error::SampleTooSmall {
            required: k + 2,
            actual: n,
        });
    }
    let (kf, nf) = (k as f64, n as f64);
    let ratio = (kf + 1.0) / (nf - kf - 1.0);
    let aic = -2.0 * log_likelihood + 2.0 * kf;
    let bic = -2.0 * log_likelihood + kf * nf.ln();
    Ok(InfoCriteria {
        aic,
        bic,
        aicc: aic + 2.0 * kf * ratio,
        bicc: bic + kf * nf.ln() * ratio,
    })
}

/// Everything reported for one fitted model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub model: String,
    pub method: Method,
    pub ks_stat: f64,
    pub ad_stat: f64,
    pub cvm_stat: f64,
    /// `None` when no bootstrap was requested.
    pub ks_p: Option<f64>,
    pub ad_p: Option<f64>,
    pub cvm_p: Option<f64>,
    pub bootstrap_failures: usize,
    pub aic: f64,
    pub bic: f64,
    pub aicc: f64,
    pub bicc: f64,
    pub fit: FitResult,
}

#[derive(Debug, Clone, Copy)]
pub struct GofOptions {
    /// Bootstrap replicates; 0 skips the p-values.
    pub bootstrap: usize,
    pub seed: u64,
    pub fit: FitOptions,
}

impl Default for GofOptions {
    fn default() -> Self {
        Self {
            bootstrap: DEFAULT_BOOTSTRAP,
            seed: 0x5eed,
            fit: FitOptions::default(),
        }
    }
}

/// Fits one model and assembles its report.
pub fn assess(
    s: &Sample,
    kind: BaselineKind,
    method: Method,
    options: &GofOptions,
) -> Result<GofReport> {
    let fit = fit_model(s, kind, method, None, &options.fit)?;
    report_for(s, fit, options)
}

/// Report for an existing fit.
pub fn report_for(s: &Sample, fit: FitResult, options: &GofOptions) -> Result<GofReport> {
    let stats = EdfStatistics::compute(s, &fit.model);
    let ic = info_criteria(&fit)?;
    let boot = if options.bootstrap > 0 {
        Some(bootstrap_fit(s, &fit, options.bootstrap, options.seed, &options.fit)?)
    } else {
        None
    };
    Ok(GofReport {
        model: fit.model.kind().model_name().to_string(),
        method: fit.method,
        ks_stat: stats.ks,
        ad_stat: stats.ad,
        cvm_stat: stats.cvm,
        ks_p: boot.as_ref().map(|b| b.ks),
        ad_p: boot.as_ref().map(|b| b.ad),
        cvm_p: boot.as_ref().map(|b| b.cvm),
        bootstrap_failures: boot.as_ref().map_or(0, |b| b.failures),
        aic: ic.aic,
        bic: ic.bic,
        aicc: ic.aicc,
        bicc: ic.bicc,
        fit,
    })
}

/// One row of a model comparison. Exactly one of `report` and `error` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranked {
    pub rank: usize,
    pub model: String,
    pub method: Method,
    pub report: Option<GofReport>,
    pub error: Option<String>,
}

/// Fits every `(model, method)` pair and ranks them by AICc ascending.
/// Pairs that fail to fit are ranked last, in input order, with the error
/// message attached.
pub fn compare_models(
    s: &Sample,
    models: &[BaselineKind],
    methods: &[Method],
    options: &GofOptions,
) -> Result<Vec<Ranked>> {
    if models.len() < 2 {
        return Err(Error::Domain("model comparison needs at least two models".into()));
    }
    let mut rows: Vec<Ranked> = Vec::new();
    for &kind in models {
        for &method in methods {
            let outcome = assess(s, kind, method, options);
            rows.push(Ranked {
                rank: 0,
                model: kind.model_name().to_string(),
                method,
                error: outcome.as_ref().err().map(|e| e.to_string()),
                report: outcome.ok(),
            });
        }
    }
    rows.sort_by(|a, b| match (&a.report, &b.report) {
        (Some(x), Some(y)) => x.aicc.total_cmp(&y.aicc),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    });
    for (i, row) in rows.iter_mut().enumerate() {
        row.rank = i + 1;
    }
    Ok(rows)
}

/// Evenly spaced evaluation grid from `0.8 min` to `1.2 max`.
pub fn plot_grid(s: &Sample, points: usize) -> Vec<f64> {
    let (lo, hi) = (0.8 * s.min(), 1.2 * s.max());
    let step = (hi - lo) / (points.max(2) - 1) as f64;
    (0..points).map(|i| lo + step * i as f64).collect()
}

/// Fitted CDF and PDF columns of `models` on `grid`.
pub fn fitted_curves(models: &[PgdusModel], grid: &[f64]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let cdfs = models
        .iter()
        .map(|m| grid.iter().map(|&t| m.cdf(t)).collect())
        .collect();
    let pdfs = models
        .iter()
        .map(|m| grid.iter().map(|&t| m.pdf(t)).collect())
        .collect();
    (cdfs, pdfs)
}
