//! The continuum uniform kernel on the unit sup-norm ball and the
//! random-walk constants of the large-`L` critical-point expansion.
//!
//! The uniform density `U` on `[−1,1]^d` factorises over axes, so its n-fold
//! self-convolution at the origin is the d-th power of the one-dimensional
//! value. The 1-D value is half the uniform-sum (Irwin–Hall) density at its
//! centre, which has an exact rational closed form:
//!
//! ```text
//! f_n(n/2) = (1/(n−1)!) Σ_{k=0}^{⌊n/2⌋} (−1)^k C(n,k) (n/2 − k)^{n−1} .
//! ```
//!
//! Everything up to the final division by powers of `e` is exact.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numeric::{geometric_tail, rat, to_f64, Rational};
use crate::{Error, PolymerModel, Result};

const E: f64 = core::f64::consts::E;

/// Centre value `f_n(n/2)` of the density of a sum of `n` independent
/// uniforms on `[0,1]`, exact.
pub fn irwin_hall_center(n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            what: "convolution order",
            message: alloc::string::String::from("n = 0; need n >= 1"),
        });
    }
    // (n/2 − k) = (n − 2k)/2; pull the 2^{n−1} into the denominator
    let mut sum = BigInt::zero();
    let mut binom = BigInt::one();
    for k in 0..=(n / 2) {
        let base = BigInt::from((n - 2 * k) as u64);
        let term = &binom * base.pow((n - 1) as u32);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        binom = binom * BigInt::from((n - k) as u64) / BigInt::from((k + 1) as u64);
    }
    let mut denom = BigInt::one();
    for m in 1..n {
        denom *= BigInt::from(m as u64);
    }
    denom *= BigInt::from(2u64).pow((n - 1) as u32);
    Ok(Rational::new(sum, denom))
}

/// `u^{*n}(0)` for the 1-D uniform density on `[−1,1]`: `f_n(n/2)/2`.
pub fn uniform_center(n: usize) -> Result<Rational> {
    Ok(irwin_hall_center(n)? / rat(2, 1))
}

/// `U^{*n}(o)` for the uniform density on `[−1,1]^d`, exact:
/// the product structure gives `(u^{*n}(0))^d`.
pub fn ustar_origin_exact(n: usize, d: u32) -> Result<Rational> {
    if d == 0 {
        return Err(Error::InvalidParameter {
            what: "dimension",
            message: alloc::string::String::from("d = 0; need d >= 1"),
        });
    }
    Ok(uniform_center(n)?.pow(d as i32))
}

/// `U^{*n}(o)` as a float.
pub fn ustar_origin(n: usize, d: u32) -> Result<f64> {
    Ok(to_f64(&ustar_origin_exact(n, d)?))
}

/// A truncated positive series: float value, heuristic tail bar, and the
/// exact rational part it was converted from.
#[derive(Debug, Clone)]
pub struct SeriesValue {
    pub value: f64,
    pub tail_error: f64,
    pub rational_part: Rational,
    pub n_max: usize,
}

/// Tail bar from the final four decay ratios of the term sequence; the
/// series here decay fast enough for the bar to be meaningful from
/// `n_max >= 6` on.
fn series_tail(terms: &[f64]) -> f64 {
    geometric_tail(terms).map(|t| t.bound).unwrap_or(f64::NAN)
}

/// The lattice-tree constant `C_LT = Σ_{n>=2} (n+1)/(2e) · U^{*n}(o)`.
///
/// The rational part `Σ (n+1)/2 · U^{*n}(o)` is summed exactly; `e` divides
/// once at the end. Requires d >= 5 so the series converges with margin.
pub fn c_lt(d: u32, n_max: usize) -> Result<SeriesValue> {
    if d <= 4 {
        return Err(Error::DimensionTooLow { d, min: 5 });
    }
    if n_max < 6 {
        return Err(Error::InvalidParameter {
            what: "n_max",
            message: alloc::format!("n_max = {n_max}; need n_max >= 6 for a tail bar"),
        });
    }
    let mut rational_part = Rational::zero();
    let mut terms = Vec::with_capacity(n_max - 1);
    for n in 2..=n_max {
        let term = ustar_origin_exact(n, d)? * rat((n + 1) as i64, 2);
        terms.push(to_f64(&term));
        rational_part += term;
    }
    let tail = series_tail(&terms) / E;
    Ok(SeriesValue {
        value: to_f64(&rational_part) / E,
        tail_error: tail,
        rational_part,
        n_max,
    })
}

/// The correction sum `Σ_{n>=3} U^{*n}(o) / (2e²)` and the lattice-animal
/// constant `C_LA = C_LT − correction`.
#[derive(Debug, Clone)]
pub struct AnimalConstant {
    pub c_la: f64,
    pub tail_error: f64,
    pub c_lt: SeriesValue,
    pub correction: SeriesValue,
}

pub fn c_la(d: u32, n_max: usize) -> Result<AnimalConstant> {
    let lt = c_lt(d, n_max)?;
    let mut rational_part = Rational::zero();
    let mut terms = Vec::with_capacity(n_max - 2);
    for n in 3..=n_max {
        let term = ustar_origin_exact(n, d)?;
        terms.push(to_f64(&term));
        rational_part += term;
    }
    let correction = SeriesValue {
        value: to_f64(&rational_part) / (2.0 * E * E),
        tail_error: series_tail(&terms) / (2.0 * E * E),
        rational_part,
        n_max,
    };
    Ok(AnimalConstant {
        c_la: lt.value - correction.value,
        tail_error: lt.tail_error + correction.tail_error,
        c_lt: lt,
        correction,
    })
}

/// Predicted critical fugacity `1/e + C·L^{−d}` for one model.
///
/// The expansion is established for d > 8; for 5 <= d <= 8 the value is
/// still computable and `proven` is false so callers can warn.
#[derive(Debug, Clone)]
pub struct PcPrediction {
    pub model: PolymerModel,
    pub d: u32,
    pub range: u32,
    /// `1/e + C · L^{−d}`; the omitted remainder is `O(L^{−d−1})` with an
    /// unquantified constant.
    pub value: f64,
    /// The `C · L^{−d}` term alone.
    pub correction_term: f64,
    pub tail_error: f64,
    pub proven: bool,
}

pub fn predict_pc(model: PolymerModel, d: u32, range: u32, n_max: usize) -> Result<PcPrediction> {
    if range == 0 {
        return Err(Error::InvalidParameter {
            what: "range",
            message: alloc::string::String::from("L = 0; need L >= 1"),
        });
    }
    let (constant, tail) = match model {
        PolymerModel::Trees => {
            let lt = c_lt(d, n_max)?;
            (lt.value, lt.tail_error)
        }
        PolymerModel::Animals => {
            let la = c_la(d, n_max)?;
            (la.c_la, la.tail_error)
        }
    };
    let l_pow = libm::pow(range as f64, -(d as f64));
    Ok(PcPrediction {
        model,
        d,
        range,
        value: 1.0 / E + constant * l_pow,
        correction_term: constant * l_pow,
        tail_error: tail * l_pow,
        proven: d > 8,
    })
}

/// Everything the `constants` command reports.
#[derive(Debug, Clone)]
pub struct ConstantsReport {
    pub d: u32,
    pub n_max: usize,
    /// `(n, U^{*n}(o))` for n = 1..=n_max (exact values kept alongside floats).
    pub u_table: Vec<(usize, Rational)>,
    pub c_lt: SeriesValue,
    pub animal: AnimalConstant,
    pub pc_predictions: Vec<PcPrediction>,
}

pub fn constants_report(d: u32, n_max: usize, l_values: &[u32]) -> Result<ConstantsReport> {
    let animal = c_la(d, n_max)?;
    let c_lt = animal.c_lt.clone();
    let mut u_table = Vec::with_capacity(n_max);
    for n in 1..=n_max.min(64) {
        u_table.push((n, ustar_origin_exact(n, d)?));
    }
    let mut pc_predictions = Vec::new();
    for &l in l_values {
        pc_predictions.push(predict_pc(PolymerModel::Trees, d, l, n_max)?);
        pc_predictions.push(predict_pc(PolymerModel::Animals, d, l, n_max)?);
    }
    Ok(ConstantsReport {
        d,
        n_max,
        u_table,
        c_lt,
        animal,
        pc_predictions,
    })
}
