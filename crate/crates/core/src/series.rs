//! Truncated power series in the fugacity `p` with exact rational
//! coefficients.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::numeric::{to_f64, Rational};

/// What a series counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// One-point function `g_p` (polymers containing the origin).
    OnePoint,
    /// Two-point function `τ_p(x)` (polymers containing the origin and `x`).
    TwoPoint,
    /// Susceptibility `χ_p = Σ_x τ_p(x)`.
    Susceptibility,
}

/// A polynomial `Σ_k a_k p^k` with non-negative exact coefficients and a
/// recorded truncation order. Coefficients beyond the truncation are unknown
/// (not zero).
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    kind: SeriesKind,
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Wrap coefficients; index = power of `p`. The truncation order is the
    /// highest index supplied.
    pub fn new(kind: SeriesKind, coeffs: Vec<Rational>) -> Self {
        debug_assert!(!coeffs.is_empty());
        PowerSeries { kind, coeffs }
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `p^k` (zero when `k` exceeds the stored length — only
    /// meaningful within the truncation order).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Horner evaluation in floating point.
    pub fn eval_f64(&self, p: f64) -> f64 {
        let mut acc = 0.0f64;
        for c in self.coeffs.iter().rev() {
            acc = acc * p + to_f64(c);
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, p: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c;
        }
        acc
    }

    /// Derivative at `p`, in floating point (used by the Newton step).
    pub fn derivative_f64(&self, p: f64) -> f64 {
        let mut acc = 0.0f64;
        for (k, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * p + k as f64 * to_f64(c);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};

    #[test]
    fn eval_matches_exact() {
        // 1 + p + (3/4) p² + (1/2) p³
        let s = PowerSeries::new(
            SeriesKind::OnePoint,
            alloc::vec![rat_int(1), rat_int(1), rat(3, 4), rat(1, 2)],
        );
        assert_eq!(s.truncation_order(), 3);
        let p = rat(1, 2);
        let exact = s.eval_exact(&p);
        assert_eq!(exact, rat(1, 1) + rat(1, 2) + rat(3, 16) + rat(1, 16));
        assert!((s.eval_f64(0.5) - to_f64(&exact)).abs() < 1e-15);
        // derivative: 1 + (3/2) p + (3/2) p²
        assert!((s.derivative_f64(0.5) - (1.0 + 0.75 + 0.375)).abs() < 1e-15);
    }
}
