//! The `p·g(p) = 1` fixed point, leading-order evaluators, the one-point
//! decomposition, and series estimators for the critical fugacity.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::census::Point;
use crate::kernel::{ConvolutionTable, StepKernel};
use crate::numeric::{from_f64, rat, to_f64, Rational};
use crate::series::{PowerSeries, SeriesKind};
use crate::{Error, PolymerModel, Result};

const E: f64 = core::f64::consts::E;

/// Root of `p · g(p) = 1` on a truncated one-point series.
#[derive(Debug, Clone, Copy)]
pub struct P1Solution {
    pub p1: f64,
    /// `|p1 · g(p1) − 1|` at the returned point.
    pub residual: f64,
    pub truncation_order: usize,
    /// Initial bracket handed to the solver.
    pub bracket: (f64, f64),
}

/// Solve `p · g(p) = 1` by bracketing plus safeguarded Newton.
///
/// `p ↦ p·g(p)` is strictly increasing (the series has non-negative
/// coefficients and `g(0) = 1`), so a sign-changing bracket pins the root.
/// The initial bracket `[0, 1]` is extended rightward by doubling if needed.
pub fn solve_p1(series: &PowerSeries, tol: f64) -> Result<P1Solution> {
    if series.kind() != SeriesKind::OnePoint {
        return Err(Error::SeriesKindMismatch {
            expected: "one-point",
        });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter {
            what: "tolerance",
            message: alloc::format!("tol = {tol}; need tol > 0"),
        });
    }
    let phi = |p: f64| p * series.eval_f64(p);
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let mut doublings = 0;
    while phi(hi) < 1.0 {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 64 {
            return Err(Error::NoRoot);
        }
    }
    let bracket = (0.0, hi);
    let mut p = 0.5 * (lo + hi);
    for _ in 0..200 {
        let f = phi(p) - 1.0;
        if libm::fabs(f) <= tol {
            return Ok(P1Solution {
                p1: p,
                residual: libm::fabs(f),
                truncation_order: series.truncation_order(),
                bracket,
            });
        }
        if f > 0.0 {
            hi = p;
        } else {
            lo = p;
        }
        let slope = series.eval_f64(p) + p * series.derivative_f64(p);
        let newton = p - f / slope;
        p = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    let f = libm::fabs(phi(p) - 1.0);
    if f <= tol {
        Ok(P1Solution {
            p1: p,
            residual: f,
            truncation_order: series.truncation_order(),
            bracket,
        })
    } else {
        Err(Error::InvalidParameter {
            what: "tolerance",
            message: alloc::format!(
                "solver stalled at residual {f:e}; the requested tolerance {tol:e} is unreachable"
            ),
        })
    }
}

/// A leading-order evaluation: float value, tail bar, and the exact
/// rational factor it came from.
#[derive(Debug, Clone)]
pub struct LeadingEval {
    pub value: f64,
    pub tail_error: f64,
    /// The exact truncated sum the value is assembled from (the factor
    /// multiplying `e`, or the plain sum where no `e` enters).
    pub rational_part: Rational,
}

/// Leading order of the no-intersection part of the one-point function:
/// `e · (1 − ½ D^{*2}(o) − S_{>=2}(o))`.
pub fn g_leading(table: &ConvolutionTable) -> Result<LeadingEval> {
    let s2 = table.s_geq(2)?;
    let part = Rational::one() - rat(1, 2) * table.value(2) - &s2.prefix;
    Ok(LeadingEval {
        value: E * to_f64(&part),
        tail_error: E * s2.tail_error,
        rational_part: part,
    })
}

/// Leading order of the intersection part:
/// `e · Σ_{n>=3} (n−1)/2 · D^{*n}(o)`.
pub fn h_leading(table: &ConvolutionTable) -> Result<LeadingEval> {
    // reuse the tail validity gate of s_geq
    let s3 = table.s_geq(3)?;
    let part = table.weighted_sum(3, |n| rat((n as i64) - 1, 2));
    // omitted terms carry weights >= (n_max+1)/2; scale the plain tail bar
    let weight = (table.n_max() as f64 + 1.0) / 2.0;
    Ok(LeadingEval {
        value: E * to_f64(&part),
        tail_error: E * s3.tail_error * weight,
        rational_part: part,
    })
}

/// Leading order of the animal partition remainder: `½ S_{>=3}(o)`.
pub fn i_leading(table: &ConvolutionTable) -> Result<LeadingEval> {
    let s3 = table.s_geq(3)?;
    let part = rat(1, 2) * &s3.prefix;
    Ok(LeadingEval {
        value: to_f64(&part),
        tail_error: 0.5 * s3.tail_error,
        rational_part: part,
    })
}

/// Difference between the two exact routes to the leading one-point value:
/// `(g_leading − h_leading)/e  −  (1 − Σ_{n=2..N} (n+1)/2 · D^{*n}(o))`.
///
/// Zero as an exact rational at every truncation; exposed so consistency
/// suites can assert it.
pub fn leading_order_consistency(table: &ConvolutionTable) -> Result<Rational> {
    let lhs = g_leading(table)?.rational_part - h_leading(table)?.rational_part;
    let rhs = Rational::one() - table.weighted_sum(2, |n| rat((n as i64) + 1, 2));
    Ok(lhs - rhs)
}

/// Largest neighbourhood size for which the closed form `(1 + 1/|Λ|)^{|Λ|}`
/// is evaluated exactly.
const G0_LAMBDA_CAP: u64 = 2_000_000;

/// `(1 + 1/|Λ|)^{|Λ|}` exactly. The legs are coprime by construction, so the
/// fraction is built unreduced.
pub fn g0_closed(lambda_size: u64) -> Result<Rational> {
    if lambda_size == 0 {
        return Err(Error::InvalidParameter {
            what: "lambda_size",
            message: alloc::string::String::from("|Λ| = 0; need |Λ| >= 1"),
        });
    }
    if lambda_size > G0_LAMBDA_CAP {
        return Err(Error::InvalidParameter {
            what: "lambda_size",
            message: alloc::format!(
                "|Λ| = {lambda_size} exceeds the exact-evaluation cap {G0_LAMBDA_CAP}"
            ),
        });
    }
    let exp = lambda_size as u32;
    Ok(Rational::new_raw(
        BigInt::from(lambda_size + 1).pow(exp),
        BigInt::from(lambda_size).pow(exp),
    ))
}

/// Random-walk prediction of the fixed point `p1` from a convolution table:
/// trees get `(1 + Σ_{n>=2} (n+1)/2 · D^{*n}(o))/e`, animals subtract
/// `S_{>=3}(o)/(2e²)`.
#[derive(Debug, Clone)]
pub struct LatticeP1 {
    pub model: PolymerModel,
    pub d: u32,
    pub range: u32,
    pub value: f64,
    pub tail_error: f64,
    /// Exact `Σ_{n=2..n_max} (n+1)/2 · D^{*n}(o)`.
    pub rational_part: Rational,
    /// The animal correction actually subtracted (`0` for trees).
    pub correction: f64,
    /// Exact prefix of `S_{>=3}(o)` behind the correction (zero for trees).
    pub correction_prefix: Rational,
    /// The trees value the correction applies to.
    pub trees_value: f64,
    /// The expansion is established for d > 8.
    pub proven: bool,
}

pub fn predict_p1_lattice(model: PolymerModel, table: &ConvolutionTable) -> Result<LatticeP1> {
    let d = table.kernel().d();
    if d <= 4 {
        return Err(Error::DimensionTooLow { d, min: 5 });
    }
    let tail = table
        .tail_bound()
        .ok_or(Error::TailBoundUnavailable {
            n_max: table.n_max(),
        })?
        .bound;
    let rational_part = table.weighted_sum(2, |n| rat((n as i64) + 1, 2));
    let trees_value = (1.0 + to_f64(&rational_part)) / E;
    let trees_tail = tail * (table.n_max() as f64 + 2.0) / (2.0 * E);
    let (correction, correction_prefix, tail_error) = match model {
        PolymerModel::Trees => (0.0, Rational::zero(), trees_tail),
        PolymerModel::Animals => {
            let s3 = table.s_geq(3)?;
            (
                to_f64(&s3.prefix) / (2.0 * E * E),
                s3.prefix.clone(),
                trees_tail + s3.tail_error / (2.0 * E * E),
            )
        }
    };
    Ok(LatticeP1 {
        model,
        d,
        range: table.kernel().range(),
        value: trees_value - correction,
        tail_error,
        rational_part,
        correction,
        correction_prefix,
        trees_value,
        proven: d > 8,
    })
}

/// Exact-rational core of a decomposition report.
#[derive(Debug, Clone)]
pub struct GhExact {
    /// The exact rational image of the solved `p1` float.
    pub p1: Rational,
    /// `g(p1)` on the truncated series.
    pub g: Rational,
    /// The no-intersection product `Π_{y∈Λ} (1 + (1 − τ(y)/g)/|Λ|)`.
    pub big_g: Rational,
    /// `big_g − g`; for animals this is the combined `H − I` remainder.
    pub h_effective: Rational,
}

/// Leading-order predictions attached to a decomposition.
#[derive(Debug, Clone)]
pub struct LeadingPredictions {
    pub g_leading: LeadingEval,
    pub h_leading: LeadingEval,
    pub i_leading: LeadingEval,
}

/// The one-point function split `g = G − H` evaluated on truncated series.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub model: PolymerModel,
    pub p1: f64,
    pub residual: f64,
    pub truncation_order: usize,
    pub g_value: f64,
    pub big_g: f64,
    /// `G − g(p1)`: `H` for trees, `H − I` for animals.
    pub h_effective: f64,
    pub g0_closed: Rational,
    pub g0_closed_value: f64,
    pub exact: GhExact,
    pub leading: Option<LeadingPredictions>,
}

/// Split the one-point function at `p1` into the independent-subtree product
/// `G` and the intersection remainder.
///
/// `G` is defined as the sum over subsets `Y ⊆ Λ` of connected neighbours,
/// each neighbour carrying an independently summed subtree weight
/// `g − τ(y)`. Two steps turn that into a product:
///
/// ```text
/// p1·g(p1) = 1   ⇒   (p1/|Λ|)^{|Y|} Π_{y∈Y} (g − τ(y)) = (1/|Λ|)^{|Y|} Π_{y∈Y} (1 − τ(y)/g),
/// Σ_{Y⊆Λ} Π_{y∈Y} a_y = Π_{y∈Λ} (1 + a_y)   with   a_y = (1 − τ(y)/g)/|Λ|,
/// ```
///
/// so `G = Π_{y∈Λ} (1 + (1 − τ_{p1}(y)/g_{p1})/|Λ|)`. Every quantity is
/// evaluated in exact rational arithmetic at the rational image of `p1`, so
/// the closure identity `G − h_effective = g(p1)` and the sign of
/// `h_effective` are exact statements, not float artefacts.
pub fn gh_decompose(
    model: PolymerModel,
    kernel: &StepKernel,
    g: &PowerSeries,
    tau: &BTreeMap<Point, PowerSeries>,
    p1: &P1Solution,
    leading_table: Option<&ConvolutionTable>,
) -> Result<DecompositionReport> {
    if g.kind() != SeriesKind::OnePoint {
        return Err(Error::SeriesKindMismatch {
            expected: "one-point",
        });
    }
    for series in tau.values() {
        if series.kind() != SeriesKind::TwoPoint {
            return Err(Error::SeriesKindMismatch {
                expected: "two-point",
            });
        }
        if series.truncation_order() != g.truncation_order() {
            return Err(Error::TruncationMismatch {
                left: g.truncation_order(),
                right: series.truncation_order(),
            });
        }
    }
    if p1.truncation_order != g.truncation_order() {
        return Err(Error::TruncationMismatch {
            left: g.truncation_order(),
            right: p1.truncation_order,
        });
    }
    if let Some(table) = leading_table {
        let k = table.kernel();
        if k.d() != kernel.d() || k.range() != kernel.range() || k.norm() != kernel.norm() {
            return Err(Error::InvalidParameter {
                what: "leading table",
                message: alloc::string::String::from(
                    "table kernel does not match the census kernel",
                ),
            });
        }
    }

    let lambda = kernel.lambda_size();
    let lambda_rat = Rational::new(BigInt::one(), BigInt::from(lambda));
    let p1_exact = from_f64(p1.p1).ok_or(Error::InvalidParameter {
        what: "p1",
        message: alloc::format!("p1 = {} is not finite", p1.p1),
    })?;
    let g_exact = g.eval_exact(&p1_exact);
    let zero_series = PowerSeries::new(
        SeriesKind::TwoPoint,
        alloc::vec![Rational::zero(); g.truncation_order() + 1],
    );
    let mut big_g = Rational::one();
    for y in kernel.lattice_points()? {
        let tau_y = tau.get(&y).unwrap_or(&zero_series);
        let ratio = tau_y.eval_exact(&p1_exact) / &g_exact;
        big_g *= Rational::one() + (Rational::one() - ratio) * &lambda_rat;
    }
    let h_effective = &big_g - &g_exact;

    let g0 = g0_closed(lambda)?;
    let leading = match leading_table {
        Some(table) => Some(LeadingPredictions {
            g_leading: g_leading(table)?,
            h_leading: h_leading(table)?,
            i_leading: i_leading(table)?,
        }),
        None => None,
    };

    Ok(DecompositionReport {
        model,
        p1: p1.p1,
        residual: p1.residual,
        truncation_order: g.truncation_order(),
        g_value: to_f64(&g_exact),
        big_g: to_f64(&big_g),
        h_effective: to_f64(&h_effective),
        g0_closed_value: to_f64(&g0),
        g0_closed: g0,
        exact: GhExact {
            p1: p1_exact,
            g: g_exact,
            big_g,
            h_effective,
        },
        leading,
    })
}

/// Ratio-method estimate of the susceptibility's radius of convergence.
#[derive(Debug, Clone)]
pub struct RatioEstimate {
    /// `a_k / a_{k+1}`; `None` where a zero coefficient forces a skip.
    pub ratios: Vec<Option<f64>>,
    /// Richardson extrapolation `k·r_k − (k−1)·r_{k−1}`, defined where both
    /// ratios exist.
    pub richardson: Vec<Option<f64>>,
    /// Whether any index was skipped.
    pub has_skips: bool,
}

impl RatioEstimate {
    /// Last defined entry of the extrapolated sequence.
    pub fn richardson_tail(&self) -> Option<f64> {
        self.richardson.iter().rev().flatten().next().copied()
    }

    /// Last defined plain ratio.
    pub fn ratio_tail(&self) -> Option<f64> {
        self.ratios.iter().rev().flatten().next().copied()
    }
}

pub fn pc_ratio_estimate(chi: &PowerSeries) -> Result<RatioEstimate> {
    if chi.kind() != SeriesKind::Susceptibility {
        return Err(Error::SeriesKindMismatch {
            expected: "susceptibility",
        });
    }
    let coeffs = chi.coeffs();
    let mut ratios: Vec<Option<f64>> = Vec::new();
    let mut has_skips = false;
    for k in 0..coeffs.len().saturating_sub(1) {
        if coeffs[k].is_zero() || coeffs[k + 1].is_zero() {
            ratios.push(None);
            has_skips = true;
        } else {
            ratios.push(Some(to_f64(&(&coeffs[k] / &coeffs[k + 1]))));
        }
    }
    let mut richardson: Vec<Option<f64>> = alloc::vec![None; ratios.len()];
    for k in 1..ratios.len() {
        if let (Some(r), Some(r_prev)) = (ratios[k], ratios[k - 1]) {
            richardson[k] = Some(k as f64 * r - (k as f64 - 1.0) * r_prev);
        }
    }
    Ok(RatioEstimate {
        ratios,
        richardson,
        has_skips,
    })
}

/// Triangle lower bound `|Λ|(|Λ|−1)(p/|Λ|)³` on the first expansion
/// coefficient.
pub fn triangle_lb(lambda_size: u64, p: f64) -> Result<f64> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::InvalidParameter {
            what: "fugacity",
            message: alloc::format!("p = {p}; need p > 0"),
        });
    }
    let l = lambda_size as f64;
    Ok(l * (l - 1.0) * libm::pow(p / l, 3.0))
}

/// Window sum `Σ_{x≠o} τ_p(x)²`: an under-sum of the square-sum upper bound
/// on the doubly-connected contribution, reported with its window radius.
#[derive(Debug, Clone, Copy)]
pub struct HathUb {
    pub value: f64,
    /// Sup-norm radius of the window the sum ran over.
    pub window_radius: i64,
    pub truncation_order: usize,
}

pub fn hath_ub(tau: &BTreeMap<Point, PowerSeries>, p: f64) -> Result<HathUb> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::InvalidParameter {
            what: "fugacity",
            message: alloc::format!("p = {p}; need p > 0"),
        });
    }
    let mut order: Option<usize> = None;
    let mut radius = 0i64;
    let mut value = 0.0f64;
    for (x, series) in tau {
        match order {
            None => order = Some(series.truncation_order()),
            Some(o) if o != series.truncation_order() => {
                return Err(Error::TruncationMismatch {
                    left: o,
                    right: series.truncation_order(),
                })
            }
            _ => {}
        }
        if x.iter().all(|&c| c == 0) {
            continue;
        }
        radius = radius.max(x.iter().map(|&c| c.abs()).max().unwrap_or(0));
        let t = series.eval_f64(p);
        value += t * t;
    }
    Ok(HathUb {
        value,
        window_radius: radius,
        truncation_order: order.unwrap_or(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{enumerate, one_point_series, two_point_map, CensusRequest};
    use crate::kernel::Norm;
    use crate::numeric::rat_int;

    fn interval_g(order: usize) -> PowerSeries {
        // d=1, L=1 one-point series: coefficient (k+1)/2^k
        let coeffs = (0..=order)
            .map(|k| {
                Rational::new(
                    BigInt::from((k + 1) as u64),
                    BigInt::from(2u64).pow(k as u32),
                )
            })
            .collect();
        PowerSeries::new(SeriesKind::OnePoint, coeffs)
    }

    #[test]
    fn solve_p1_constant_series() {
        let g = PowerSeries::new(SeriesKind::OnePoint, alloc::vec![rat_int(1)]);
        let s = solve_p1(&g, 1e-12).unwrap();
        assert!((s.p1 - 1.0).abs() <= 1e-12);
        assert!(s.residual <= 1e-12);
    }

    #[test]
    fn solve_p1_interval_closed_form() {
        // truncation order → ∞ limit: 4 − 2√3
        let want = 4.0 - 2.0 * 3.0f64.sqrt();
        let s = solve_p1(&interval_g(30), 1e-12).unwrap();
        assert!((s.p1 - want).abs() < 1e-6, "{} vs {want}", s.p1);
        assert!(s.p1 >= s.bracket.0 && s.p1 <= s.bracket.1);
        // monotone from above as the truncation grows
        let mut prev = f64::INFINITY;
        for order in [5usize, 10, 20, 30] {
            let s = solve_p1(&interval_g(order), 1e-14).unwrap();
            assert!(s.p1 <= prev + 1e-13, "order {order}");
            prev = s.p1;
        }
    }

    #[test]
    fn solve_p1_rejects_wrong_kind() {
        let chi = PowerSeries::new(SeriesKind::Susceptibility, alloc::vec![rat_int(1)]);
        assert!(matches!(
            solve_p1(&chi, 1e-12),
            Err(Error::SeriesKindMismatch { .. })
        ));
    }

    #[test]
    fn leading_identity_exact() {
        for (d, l) in [(9u32, 1u32), (9, 2), (5, 1)] {
            let table = StepKernel::new(d, l, Norm::Sup)
                .unwrap()
                .conv_table(40)
                .unwrap();
            assert!(leading_order_consistency(&table).unwrap().is_zero());
        }
    }

    #[test]
    fn leading_values_behave() {
        let table = StepKernel::new(9, 1, Norm::Sup)
            .unwrap()
            .conv_table(40)
            .unwrap();
        let g = g_leading(&table).unwrap();
        let h = h_leading(&table).unwrap();
        let i = i_leading(&table).unwrap();
        assert!(g.value < E);
        assert!(h.value >= 0.0 && i.value >= 0.0);
        // coefficientwise domination: ½ S≥3 <= Σ (n−1)/2 Dⁿ
        assert!(i.rational_part <= h.rational_part);
        // definitional: 1 − g/e = ½ D² + S≥2
        let table_s2 = table.s_geq(2).unwrap();
        let want = rat(1, 2) * table.value(2) + &table_s2.prefix;
        assert_eq!(Rational::one() - g.rational_part, want);
    }

    #[test]
    fn g_leading_beta_scaling() {
        // e − g_leading = Θ(L^{-d}): ratios of successive L halve by ~2^d
        let mut prev: Option<f64> = None;
        for l in [1u32, 2, 4] {
            let table = StepKernel::new(9, l, Norm::Sup)
                .unwrap()
                .conv_table(30)
                .unwrap();
            let gap = E - g_leading(&table).unwrap().value;
            assert!(gap > 0.0);
            if let Some(p) = prev {
                let ratio = gap / p;
                // β halves by 2^9 = 512; allow slack for the L-dependence of the sum
                assert!(ratio < 0.02, "ratio {ratio}");
            }
            prev = Some(gap);
        }
    }

    #[test]
    fn g0_closed_pins() {
        assert_eq!(g0_closed(1).unwrap(), rat_int(2));
        assert_eq!(g0_closed(2).unwrap(), rat(9, 4));
        assert!(g0_closed(0).is_err());
        // |Λ|(1 − G₀/e) → ½
        for (lambda, tol) in [(1_000u64, 1e-3), (10_000, 1e-4), (100_000, 1e-5)] {
            let g0 = to_f64(&g0_closed(lambda).unwrap());
            let v = lambda as f64 * (1.0 - g0 / E);
            assert!((v - 0.5).abs() < tol, "lambda = {lambda}: {v}");
        }
    }

    #[test]
    fn predict_p1_construction() {
        let table = StepKernel::new(9, 1, Norm::Sup)
            .unwrap()
            .conv_table(40)
            .unwrap();
        let trees = predict_p1_lattice(PolymerModel::Trees, &table).unwrap();
        let animals = predict_p1_lattice(PolymerModel::Animals, &table).unwrap();
        // identity by construction
        assert_eq!(animals.value, animals.trees_value - animals.correction);
        assert_eq!(animals.trees_value, trees.value);
        assert_eq!(trees.correction, 0.0);
        // first positive term: value exceeds 1/e by at least 3/(2e·19682)
        assert!(trees.value >= 1.0 / E + 3.0 / (2.0 * E * 19682.0));
        assert!(trees.proven);
        // low dimension rejected
        let t4 = StepKernel::new(4, 1, Norm::Sup)
            .unwrap()
            .conv_table(10)
            .unwrap();
        assert!(matches!(
            predict_p1_lattice(PolymerModel::Trees, &t4),
            Err(Error::DimensionTooLow { .. })
        ));
    }

    #[test]
    fn lattice_and_continuum_p1_converge() {
        // |predict_p1_lattice − predict_pc| shrinks as L grows
        let mut prev = f64::INFINITY;
        for l in [1u32, 2, 4, 8] {
            let table = StepKernel::new(9, l, Norm::Sup)
                .unwrap()
                .conv_table(40)
                .unwrap();
            let lattice = predict_p1_lattice(PolymerModel::Trees, &table).unwrap();
            let continuum = crate::continuum::predict_pc(PolymerModel::Trees, 9, l, 40).unwrap();
            let gap = (lattice.value - continuum.value).abs();
            assert!(gap < prev, "L = {l}");
            prev = gap;
        }
    }

    #[test]
    fn gh_decompose_interval() {
        let kernel = StepKernel::new(1, 1, Norm::Sup).unwrap();
        let req = CensusRequest::rooted(PolymerModel::Trees, 1, 1, Norm::Sup, 30);
        let census = enumerate(&req).unwrap();
        let g = one_point_series(&census).unwrap();
        let tau = two_point_map(&req).unwrap();
        let tau_lambda: BTreeMap<Point, PowerSeries> = tau
            .into_iter()
            .filter(|(x, _)| kernel.contains(x).unwrap())
            .collect();
        let p1 = solve_p1(&g, 1e-12).unwrap();
        let report =
            gh_decompose(PolymerModel::Trees, &kernel, &g, &tau_lambda, &p1, None).unwrap();
        // closure is exact by construction
        assert_eq!(
            &report.exact.big_g - &report.exact.h_effective,
            report.exact.g
        );
        // on the line, subtrees hanging off ±1 never intersect: the exact
        // H is 0 and truncation pushes the computed value positive
        assert!(report.exact.h_effective >= Rational::zero());
        assert!(report.h_effective.abs() < 1e-12);
        assert_eq!(report.g0_closed, rat(9, 4));
    }

    #[test]
    fn gh_decompose_zero_tau_collapses_to_g0() {
        let kernel = StepKernel::new(2, 1, Norm::Sup).unwrap();
        let g = interval_g(6); // any one-point series works here
        let p1 = solve_p1(&g, 1e-12).unwrap();
        let tau: BTreeMap<Point, PowerSeries> = BTreeMap::new(); // τ ≡ 0
        let report = gh_decompose(PolymerModel::Trees, &kernel, &g, &tau, &p1, None).unwrap();
        assert_eq!(report.exact.big_g, g0_closed(8).unwrap());
    }

    #[test]
    fn gh_decompose_checks_truncations() {
        let kernel = StepKernel::new(1, 1, Norm::Sup).unwrap();
        let g = interval_g(6);
        let p1 = solve_p1(&g, 1e-12).unwrap();
        let mut tau = BTreeMap::new();
        tau.insert(
            alloc::vec![1i64],
            PowerSeries::new(SeriesKind::TwoPoint, alloc::vec![Rational::zero(); 3]),
        );
        assert!(matches!(
            gh_decompose(PolymerModel::Trees, &kernel, &g, &tau, &p1, None),
            Err(Error::TruncationMismatch { .. })
        ));
    }

    #[test]
    fn ratio_estimate_geometric_and_interval() {
        // geometric coefficients a_k = r^{-k}: constant ratio r
        let r = rat(1, 3);
        let coeffs: Vec<Rational> = (0..10).map(|k| r.pow(-k)).collect();
        let chi = PowerSeries::new(SeriesKind::Susceptibility, coeffs);
        let est = pc_ratio_estimate(&chi).unwrap();
        for v in est.ratios.iter().flatten() {
            assert!((v - 1.0 / 3.0).abs() < 1e-14);
        }
        for v in est.richardson.iter().flatten() {
            assert!((v - 1.0 / 3.0).abs() < 1e-12);
        }
        assert!(!est.has_skips);

        // interval model: ratios 2(k+1)²/(k+2)² → 2, Richardson much faster
        let coeffs: Vec<Rational> = (0..30)
            .map(|k| {
                Rational::new(
                    BigInt::from(((k + 1) * (k + 1)) as u64),
                    BigInt::from(2u64).pow(k as u32),
                )
            })
            .collect();
        let chi = PowerSeries::new(SeriesKind::Susceptibility, coeffs);
        let est = pc_ratio_estimate(&chi).unwrap();
        let plain = est.ratio_tail().unwrap();
        let rich = est.richardson_tail().unwrap();
        assert!((plain - 2.0).abs() / 2.0 < 0.08);
        assert!((rich - 2.0).abs() / 2.0 < 0.01);
    }

    #[test]
    fn ratio_estimate_two_dimensional_sanity() {
        let req = CensusRequest::rooted(PolymerModel::Trees, 2, 1, Norm::Sup, 7);
        let chi = crate::census::chi_series_from(&enumerate(&req).unwrap()).unwrap();
        let est = pc_ratio_estimate(&chi).unwrap();
        assert!(!est.has_skips);
        for r in est.ratios.iter().flatten() {
            assert!(r.is_finite() && *r > 0.0 && *r < 1.0, "ratio {r}");
        }
    }

    #[test]
    fn ratio_estimate_skips_zeros() {
        let coeffs = alloc::vec![rat_int(1), rat_int(0), rat_int(1)];
        let chi = PowerSeries::new(SeriesKind::Susceptibility, coeffs);
        let est = pc_ratio_estimate(&chi).unwrap();
        assert!(est.has_skips);
        assert_eq!(est.ratios, alloc::vec![None, None]);
    }

    #[test]
    fn triangle_pins() {
        assert!((triangle_lb(8, 1.0).unwrap() - 7.0 / 64.0).abs() < 1e-18);
        assert!((triangle_lb(2, 1.0).unwrap() - 0.25).abs() < 1e-18);
        assert!(triangle_lb(8, 0.0).is_err());
    }

    #[test]
    fn hath_ub_interval_closed_form() {
        // τ(x) truncated: Σ over x of the squared series, against direct
        // evaluation from the same closed-form coefficients
        let req = CensusRequest::rooted(PolymerModel::Trees, 1, 1, Norm::Sup, 8);
        let tau = two_point_map(&req).unwrap();
        let p = 0.4f64;
        let got = hath_ub(&tau, p).unwrap();
        let mut want = 0.0f64;
        for x in 1..=7i64 {
            // coefficient of p^k is (k − x + 1) for k >= x, over 2^k
            let mut t = 0.0;
            for k in x..=7 {
                let coeff = (k - x + 1) as f64 / 2f64.powi(k as i32);
                t += coeff * p.powi(k as i32);
            }
            want += 2.0 * t * t; // ±x
        }
        assert!((got.value - want).abs() < 1e-14, "{} vs {want}", got.value);
        assert_eq!(got.window_radius, 7);
    }
}
