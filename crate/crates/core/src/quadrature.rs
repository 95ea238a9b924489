//! Adaptive Gauss-Kronrod quadrature.
//!
//! [`integrate`] handles finite intervals with a 21-point Kronrod rule and
//! global bisection of the interval with the largest error estimate.
//! [`integrate_positive`] handles `(0, inf)` for lifetime densities: it
//! integrates in `x = ln t`, starts from the central `1 - 2e-10` probability
//! range of an anchoring distribution and extends outward until the tails
//! stop contributing. Polynomially heavy upper tails become exponentially
//! decaying in `x`, which is what makes this work.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::dist::Lifetime;
use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const MAX_INTERVALS: usize = 4000;

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> Piece {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = WGK[10] * fc;
    let mut gauss = 0.0;
    for j in 0..10 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kron * half;
    let error = ((kron - gauss) * half).abs();
    Piece {
        a,
        b,
        value,
        error: if error.is_nan() { f64::INFINITY } else { error },
    }
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

/// Integrates `f` over `[a, b]` split initially into `pieces` equal parts,
/// bisecting until the summed error estimate is below
/// `max(abs_tol, rel_tol * |value|)`.
pub fn integrate_pieces<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    pieces: usize,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Estimate> {
    let pieces = pieces.max(1);
    let width = (b - a) / pieces as f64;
    let mut heap: BinaryHeap<Piece> = (0..pieces)
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == pieces { b } else { lo + width };
            kronrod(f, lo, hi)
        })
        .collect();
    loop {
        let value: f64 = heap.iter().map(|p| p.value).sum();
        let error: f64 = heap.iter().map(|p| p.error).sum();
        if !value.is_finite() {
            return Err(Error::Divergent(format!(
                "integrand not finite on [{a}, {b}]"
            )));
        }
        if error <= abs_tol.max(rel_tol * value.abs()) || heap.len() >= MAX_INTERVALS {
            if heap.len() >= MAX_INTERVALS && error > 1e3 * abs_tol.max(rel_tol * value.abs()) {
                return Err(Error::Divergent(format!(
                    "no convergence on [{a}, {b}]: error {error:e} for value {value:e}"
                )));
            }
            return Ok(Estimate {
                value,
                error,
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(kronrod(f, worst.a, mid));
        heap.push(kronrod(f, mid, worst.b));
    }
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    Ok(integrate_pieces(f, a, b, 1, 0.0, rel_tol)?.value)
}

/// Integrates `f` over `(0, inf)`.
///
/// `anchor` locates the bulk of the mass: the initial range is
/// `[anchor.quantile(1e-10), anchor.quantile(1 - 1e-10)]`. Each tail is then
/// extended in `ln t` with doubling widths until two consecutive extensions
/// add less than `rel_tol / 100` of the running total.
pub fn integrate_positive<F, M>(f: &F, anchor: &M, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64 + ?Sized,
    M: Lifetime + ?Sized,
{
    let lo = anchor.quantile(1e-10)?.ln();
    let hi = anchor.quantile(1.0 - 1e-10)?.ln();
    let g = |x: f64| {
        let t = x.exp();
        if t == 0.0 || t == f64::INFINITY {
            return 0.0;
        }
        let v = f(t) * t;
        if v.is_nan() {
            0.0
        } else {
            v
        }
    };
    let abs_floor = 1e-300;
    let mut total = integrate_pieces(&g, lo, hi, 16, abs_floor, rel_tol)?.value;

    for direction in [-1.0, 1.0] {
        let mut edge = if direction < 0.0 { lo } else { hi };
        let mut width = ((hi - lo) / 4.0).max(0.5);
        let mut quiet = 0;
        for _ in 0..80 {
            let next = edge + direction * width;
            let (a, b) = if direction < 0.0 { (next, edge) } else { (edge, next) };
            let part = integrate_pieces(&g, a, b, 4, abs_floor, rel_tol)?.value;
            total += part;
            edge = next;
            if part.abs() <= 1e-2 * rel_tol * total.abs() {
                quiet += 1;
                if quiet >= 2 {
                    break;
                }
            } else {
                quiet = 0;
            }
            width *= 2.0;
            if edge.abs() > 7.0e4 {
                return Err(Error::Divergent(
                    "tail mass does not vanish on (0, inf)".into(),
                ));
            }
        }
        if quiet < 2 {
            return Err(Error::Divergent(
                "tail mass does not vanish on (0, inf)".into(),
            ));
        }
    }
    Ok(total)
}
