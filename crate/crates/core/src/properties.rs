//! Distributional summaries of PGDUS-IW: raw moments, Rényi entropy,
//! extropy and order-statistic distributions.
//!
//! Quadrature is the canonical evaluator. The double-series form of the raw
//! moments is available for integer `gamma` as an independent cross-check.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::{gamma as gamma_fn, ln_gamma};

use crate::dist::{Lifetime, Params, LN_E_M1};
use crate::error::{Error, Result};
use crate::quadrature::integrate_positive;

const QUAD_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MomentMethod {
    Quadrature,
    Series,
}

/// `E[T^s]`. Exists only for `s < lambda`.
pub fn raw_moment(p: &Params, s: u32, method: MomentMethod) -> Result<f64> {
    if s == 0 {
        return Err(Error::Domain("moment order must be positive".into()));
    }
    if s as f64 >= p.lambda {
        return Err(Error::MomentDoesNotExist {
            order: s,
            shape: p.lambda,
        });
    }
    match method {
        MomentMethod::Quadrature => {
            let s = s as i32;
            integrate_positive(&|t: f64| t.powi(s) * p.pdf(t), p, QUAD_TOL)
        }
        MomentMethod::Series => raw_moment_series(p, s),
    }
}

/// Series form of the raw moment for integer `gamma`:
///
/// ```text
/// gamma theta^s / (e-1)^gamma * sum_{m>=0} sum_{k=0}^{gamma-1}
///     (-1)^k C(gamma-1, k) (gamma-k)^m / m! * Gamma(1 - s/lambda) / (m+1)^(1 - s/lambda)
/// ```
///
/// It comes from expanding `exp(u) (exp(u) - 1)^(gamma-1)` binomially and
/// then as a power series in `u = F_IW(t)`. The outer sum stops once three
/// consecutive terms fall below `1e-12` of the partial sum.
fn raw_moment_series(p: &Params, s: u32) -> Result<f64> {
    let g = p.gamma.round();
    if (p.gamma - g).abs() > 1e-12 || g < 1.0 {
        return Err(Error::SeriesInapplicable(p.gamma));
    }
    let g = g as u32;
    let a = 1.0 - s as f64 / p.lambda;
    let gamma_a = gamma_fn(a);
    let binom: Vec<f64> = (0..g).map(|k| binomial(g - 1, k)).collect();

    let mut sum = 0.0;
    let mut small = 0;
    for m in 0..10_000u32 {
        let ln_m_fact = ln_gamma(m as f64 + 1.0);
        let inner: f64 = (0..g)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let w = ((g - k) as f64).ln() * m as f64 - ln_m_fact;
                sign * binom[k as usize] * w.exp()
            })
            .sum();
        let term = inner * gamma_a / (m as f64 + 1.0).powf(a);
        sum += term;
        if term.abs() < 1e-12 * sum.abs() {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
    }
    Ok(p.gamma * p.theta.powi(s as i32) * (-p.gamma * LN_E_M1).exp() * sum)
}

pub(crate) fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn ln_binomial(n: u32, k: u32) -> f64 {
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// `∫ f(t)^delta dt`.
fn density_power_integral(p: &Params, delta: f64, tol: f64) -> Result<f64> {
    // f(t) ~ t^-(lambda+1) in the upper tail
    if delta * (p.lambda + 1.0) <= 1.0 {
        return Err(Error::Divergent(format!(
            "f^{delta} is not integrable for lambda = {}",
            p.lambda
        )));
    }
    integrate_positive(&|t: f64| (delta * p.ln_pdf(t)).exp(), p, tol)
}

/// Rényi entropy `ln(∫ f^delta dt) / (1 - delta)`.
pub fn renyi_entropy(p: &Params, delta: f64) -> Result<f64> {
    if !(delta > 0.0) || delta == 1.0 || !delta.is_finite() {
        return Err(Error::Domain(format!(
            "Rényi order must be positive and different from 1, got {delta}"
        )));
    }
    let integral = density_power_integral(p, delta, QUAD_TOL)?;
    Ok(integral.ln() / (1.0 - delta))
}

/// Extropy `-½ ∫ f² dt`.
pub fn extropy(p: &Params) -> Result<f64> {
    extropy_with_tolerance(p, QUAD_TOL)
}

/// Extropy at an explicit relative quadrature tolerance.
pub fn extropy_with_tolerance(p: &Params, tol: f64) -> Result<f64> {
    Ok(-0.5 * density_power_integral(p, 2.0, tol)?)
}

/// Rank `r` within a sample of size `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderStatSpec {
    r: u32,
    n: u32,
}

impl OrderStatSpec {
    pub fn new(r: u32, n: u32) -> Result<Self> {
        if r == 0 || r > n {
            return Err(Error::Domain(format!(
                "order statistic rank must satisfy 1 <= r <= n, got r = {r}, n = {n}"
            )));
        }
        Ok(Self { r, n })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// CDF of the `r`-th order statistic, as the binomial tail
/// `sum_{k=r}^{n} C(n,k) F^k (1-F)^(n-k)`.
pub fn order_stat_cdf(p: &Params, spec: OrderStatSpec, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let ln_f = p.ln_cdf(t);
    let ln_s = p.ln_sf(t);
    (spec.r..=spec.n)
        .map(|k| {
            let term = ln_binomial(spec.n, k)
                + mul_ln(k as f64, ln_f)
                + mul_ln((spec.n - k) as f64, ln_s);
            term.exp()
        })
        .sum::<f64>()
        .min(1.0)
}

/// The same CDF in its expanded polynomial form
/// `(e-1)^(-n gamma) sum_k C(n,k) G^(gamma k) ((e-1)^gamma - G^gamma)^(n-k)`,
/// with `G = exp(exp(-(t/theta)^-lambda)) - 1`.
pub fn order_stat_cdf_expanded(p: &Params, spec: OrderStatSpec, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let u = (-(t / p.theta).powf(-p.lambda)).exp();
    let g = u.exp_m1();
    let total = (LN_E_M1 * p.gamma).exp();
    let gg = g.powf(p.gamma);
    let norm = (LN_E_M1 * p.gamma * spec.n as f64).exp();
    (spec.r..=spec.n)
        .map(|k| binomial(spec.n, k) * gg.powi(k as i32) * (total - gg).powi((spec.n - k) as i32))
        .sum::<f64>()
        / norm
}

/// Density of the `r`-th order statistic:
///
/// ```text
/// n! / ((r-1)! (n-r)!) * gamma lambda theta^lambda / (e-1)^(n gamma)
///   * t^-(lambda+1) exp(-z) exp(exp(-z)) G^(gamma r - 1) ((e-1)^gamma - G^gamma)^(n-r)
/// ```
///
/// evaluated in log space with `z = (t/theta)^-lambda`.
pub fn order_stat_pdf(p: &Params, spec: OrderStatSpec, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let (r, n) = (spec.r as f64, spec.n as f64);
    let z = p.z(t);
    if z == f64::INFINITY {
        return 0.0;
    }
    let ln_g = p.ln_dus_numerator(t);
    // ln((e-1)^gamma - G^gamma) = gamma ln(e-1) + ln S(t)
    let ln_rest = p.gamma * LN_E_M1 + p.ln_sf(t);
    let ln_coef = ln_gamma(n + 1.0) - ln_gamma(r) - ln_gamma(n - r + 1.0);
    let v = ln_coef + p.gamma.ln() + p.lambda.ln() + p.lambda * p.theta.ln()
        - n * p.gamma * LN_E_M1
        - (p.lambda + 1.0) * t.ln()
        - z
        + (-z).exp()
        + mul_ln(p.gamma * r - 1.0, ln_g)
        + mul_ln(n - r, ln_rest);
    v.exp()
}

/// `a * ln_x` with the convention `0 * ln 0 = 0`.
fn mul_ln(a: f64, ln_x: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a * ln_x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_positive;
    use approx::assert_relative_eq;

    fn p(l: f64, th: f64, g: f64) -> Params {
        Params::new(l, th, g).unwrap()
    }

    #[test]
    fn series_agrees_with_quadrature_for_integer_gamma() {
        for g in 1..=3 {
            let par = p(5.0, 1.0, g as f64);
            let q = raw_moment(&par, 1, MomentMethod::Quadrature).unwrap();
            let s = raw_moment(&par, 1, MomentMethod::Series).unwrap();
            assert_relative_eq!(q, s, max_relative = 1e-4);
        }
    }

    #[test]
    fn series_refuses_fractional_gamma() {
        let par = p(5.0, 1.0, 1.5);
        assert_eq!(
            raw_moment(&par, 1, MomentMethod::Series),
            Err(Error::SeriesInapplicable(1.5))
        );
    }

    #[test]
    fn moment_existence_frontier() {
        let par = p(1.0, 1.0, 1.0);
        assert!(matches!(
            raw_moment(&par, 1, MomentMethod::Quadrature),
            Err(Error::MomentDoesNotExist { order: 1, .. })
        ));
        let par = p(2.5, 1.0, 1.0);
        assert!(raw_moment(&par, 2, MomentMethod::Quadrature).is_ok());
        assert!(raw_moment(&par, 3, MomentMethod::Quadrature).is_err());
        assert!(raw_moment(&par, 0, MomentMethod::Quadrature).is_err());
    }

    #[test]
    fn mean_scales_with_theta() {
        let a = raw_moment(&p(5.0, 2.0, 1.0), 1, MomentMethod::Quadrature).unwrap();
        let b = raw_moment(&p(5.0, 1.0, 1.0), 1, MomentMethod::Quadrature).unwrap();
        assert_relative_eq!(a / b, 2.0, max_relative = 1e-8);
    }

    #[test]
    fn renyi_domain() {
        let par = p(2.0, 1.0, 1.0);
        assert!(renyi_entropy(&par, 1.0).is_err());
        assert!(renyi_entropy(&par, 0.0).is_err());
        assert!(renyi_entropy(&par, -2.0).is_err());
        // f^0.2 has tail t^-0.6 for lambda = 2
        assert!(matches!(renyi_entropy(&par, 0.2), Err(Error::Divergent(_))));
    }

    #[test]
    fn renyi_shifts_by_log_scale() {
        for &delta in &[0.5, 2.0, 3.0] {
            let h1 = renyi_entropy(&p(2.0, 1.0, 0.7), delta).unwrap();
            let h3 = renyi_entropy(&p(2.0, 3.0, 0.7), delta).unwrap();
            assert!((h3 - h1 - 3f64.ln()).abs() < 1e-6);
        }
    }

    #[test]
    fn renyi_two_and_extropy_agree() {
        let par = p(2.0, 1.0, 1.0);
        let h2 = renyi_entropy(&par, 2.0).unwrap();
        let j = extropy(&par).unwrap();
        assert!(j < 0.0);
        assert_relative_eq!(h2, -(-2.0 * j).ln(), max_relative = 1e-10);
        assert!((j + 0.5 * (-h2).exp()).abs() < 1e-8);
    }

    #[test]
    fn extropy_is_stable_under_tolerance_refinement() {
        let par = p(1.0, 0.6, 0.3);
        let coarse = extropy_with_tolerance(&par, 1e-9).unwrap();
        let fine = extropy_with_tolerance(&par, 0.5e-9).unwrap();
        assert!((coarse - fine).abs() < 1e-7);
        assert!(fine < 0.0);
    }

    #[test]
    fn order_stat_spec_validation() {
        assert!(OrderStatSpec::new(0, 3).is_err());
        assert!(OrderStatSpec::new(4, 3).is_err());
        assert!(OrderStatSpec::new(3, 3).is_ok());
    }

    #[test]
    fn maximum_stays_in_family() {
        let par = p(1.0, 0.6, 0.3);
        let spec = OrderStatSpec::new(5, 5).unwrap();
        let fam = par.with_gamma(1.5).unwrap();
        for i in 1..60 {
            let t = 0.1 * i as f64;
            assert!((order_stat_cdf(&par, spec, t) - fam.cdf(t)).abs() < 1e-12);
        }
        let one = OrderStatSpec::new(1, 1).unwrap();
        assert!((order_stat_cdf(&par, one, 1.3) - par.cdf(1.3)).abs() < 1e-15);
    }

    #[test]
    fn binomial_tail_matches_expanded_form() {
        let par = p(2.0, 1.0, 1.5);
        for n in 1..=7 {
            for r in 1..=n {
                let spec = OrderStatSpec::new(r, n).unwrap();
                for i in 1..30 {
                    let t = 0.15 * i as f64;
                    let a = order_stat_cdf(&par, spec, t);
                    let b = order_stat_cdf_expanded(&par, spec, t);
                    assert!((a - b).abs() < 1e-10, "r={r} n={n} t={t}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn order_stat_cdf_monotone_in_t_and_r() {
        let par = p(1.0, 0.6, 0.3);
        let n = 6;
        for i in 1..80 {
            let t = 0.05 * i as f64;
            for r in 1..n {
                let lo = order_stat_cdf(&par, OrderStatSpec::new(r, n).unwrap(), t);
                let hi = order_stat_cdf(&par, OrderStatSpec::new(r + 1, n).unwrap(), t);
                assert!(hi <= lo + 1e-15);
                let next = order_stat_cdf(&par, OrderStatSpec::new(r, n).unwrap(), t + 0.05);
                assert!(next >= lo);
            }
        }
    }

    #[test]
    fn order_stat_pdf_integrates_to_one() {
        let par = p(1.0, 0.6, 0.3);
        for (r, n) in [(1, 5), (3, 5), (5, 5)] {
            let spec = OrderStatSpec::new(r, n).unwrap();
            let v = integrate_positive(&|t| order_stat_pdf(&par, spec, t), &par, 1e-11).unwrap();
            assert!((v - 1.0).abs() < 1e-6, "({r},{n}): {v}");
        }
    }

    #[test]
    fn order_stat_pdf_is_derivative_of_cdf() {
        let par = p(1.0, 0.6, 0.3);
        let spec = OrderStatSpec::new(2, 5).unwrap();
        for &t in &[0.3, 0.8, 1.5, 4.0] {
            let h = 1e-5 * t;
            let fd = (order_stat_cdf(&par, spec, t + h) - order_stat_cdf(&par, spec, t - h))
                / (2.0 * h);
            assert_relative_eq!(fd, order_stat_pdf(&par, spec, t), max_relative = 1e-6);
        }
    }

    #[test]
    fn mixture_of_order_stats_is_parent() {
        let par = p(2.0, 1.0, 2.7);
        let n = 6;
        for i in 1..50 {
            let t = 0.1 * i as f64;
            let avg: f64 = (1..=n)
                .map(|r| order_stat_pdf(&par, OrderStatSpec::new(r, n).unwrap(), t))
                .sum::<f64>()
                / n as f64;
            assert!((avg - par.pdf(t)).abs() < 1e-10 * par.pdf(t).max(1.0));
        }
    }
}
