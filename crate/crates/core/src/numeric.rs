//! Exact-rational and floating-point helpers shared across modules.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number used for every exact quantity.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `num/den` from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Best-effort conversion to `f64`.
///
/// `num_rational` handles ratios whose numerator and denominator are far
/// outside the `f64` range but whose value is representable.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational image of a finite `f64`.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Natural logarithm of a positive big integer, accurate to ~1 ulp even far
/// beyond the `f64` range.
pub fn ln_big(x: &BigInt) -> f64 {
    debug_assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 53 {
        return libm::log(x.to_f64().unwrap_or(f64::NAN));
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().unwrap_or(f64::NAN);
    libm::log(top) + shift as f64 * core::f64::consts::LN_2
}

/// Natural logarithm of a positive rational.
pub fn ln_rat(r: &Rational) -> f64 {
    ln_big(r.numer()) - ln_big(r.denom())
}

/// A heuristic bar on the omitted tail of a decaying positive series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBound {
    /// Estimated bound on the sum of all omitted terms.
    pub bound: f64,
    /// The per-term decay ratio the bound assumes.
    pub ratio: f64,
}

/// Geometric tail extrapolation from the last terms of a series.
///
/// Takes the final computed terms (at least five, all finite), reads off the
/// mean decay ratio of the last four steps, and assumes it persists:
/// `bound = t_N * r / (1 - r)`. Returns `None` when the terms do not decay
/// (`r >= 1`) or are non-positive. This is an error *bar*, not a certified
/// bound; callers report it next to the value.
pub fn geometric_tail(terms: &[f64]) -> Option<TailBound> {
    if terms.len() < 5 {
        return None;
    }
    let last = terms[terms.len() - 1];
    let anchor = terms[terms.len() - 5];
    if !last.is_finite() || !anchor.is_finite() || last <= 0.0 || anchor <= 0.0 || last >= anchor {
        return None;
    }
    let ratio = libm::pow(last / anchor, 0.25);
    if !(ratio > 0.0 && ratio < 1.0) {
        return None;
    }
    Some(TailBound {
        bound: last * ratio / (1.0 - ratio),
        ratio,
    })
}

/// `x * 2^exp` without relying on `std`.
pub fn ldexp(x: f64, exp: i32) -> f64 {
    libm::scalbn(x, exp)
}

/// Is the rational exactly zero?
pub fn is_zero(r: &Rational) -> bool {
    r.numer().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn ln_big_agrees_with_f64_in_range() {
        let x = BigInt::from(123456789u64);
        assert!((ln_big(&x) - (123456789f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn ln_big_handles_huge_values() {
        // ln(10^400) = 400 ln 10
        let x = BigInt::from(10).pow(400u32);
        let want = 400.0 * core::f64::consts::LN_10;
        assert!((ln_big(&x) - want).abs() / want < 1e-14);
    }

    #[test]
    fn geometric_tail_of_geometric_series_is_exact() {
        // terms r^k with r = 1/2: true tail after t_N is t_N * r/(1-r) = t_N
        let terms: alloc::vec::Vec<f64> = (0..10).map(|k| 0.5f64.powi(k)).collect();
        let tail = geometric_tail(&terms).unwrap();
        assert!((tail.ratio - 0.5).abs() < 1e-15);
        assert!((tail.bound - terms[9]).abs() < 1e-15);
    }

    #[test]
    fn geometric_tail_rejects_growth() {
        let terms: alloc::vec::Vec<f64> = (0..10).map(|k| 2.0f64.powi(k)).collect();
        assert!(geometric_tail(&terms).is_none());
    }
}
