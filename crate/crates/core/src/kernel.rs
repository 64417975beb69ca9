//! The spread-out step distribution `D` on `Z^d` and its exact
//! return-probability convolutions.
//!
//! `D` is uniform on the neighbourhood `Λ = {x : 0 < ‖x‖ <= L}`. For the sup
//! norm the neighbourhood is a centred box minus the origin, which factorises:
//! writing `M = (2L+1)^d`,
//!
//! ```text
//! D = (M/|Λ|)·B − (1/|Λ|)·δ_o ,
//! ```
//!
//! where `B` is the product of one-dimensional uniforms on `{-L..L}`. Binomial
//! expansion of the n-fold convolution then reduces `D^{*n}(o)` to the centre
//! values of one-dimensional integer convolutions:
//!
//! ```text
//! D^{*n}(o) = Σ_{k=0}^{n} C(n,k) (−1)^{n−k} c_k^d / |Λ|^n ,
//! ```
//!
//! with `c_k` the number of k-step `{-L..L}`-walks returning to 0. The
//! alternating sum is evaluated in exact integer arithmetic, so no
//! cancellation is lost. A dense d-dimensional convolution (any norm, d <= 4)
//! provides both the euclidean path and an independent cross-check of the
//! factorised route.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::continuum;
use crate::numeric::{self, geometric_tail, to_f64, Rational, TailBound};
use crate::{Error, Result};

/// Norm defining the spread-out neighbourhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Norm {
    /// `‖x‖_∞` — the box norm; admits the exact factorised algorithms.
    Sup,
    /// `‖x‖_2` — euclidean ball; exact only through the dense path (d <= 4).
    Euclidean,
}

impl core::fmt::Display for Norm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Norm::Sup => f.write_str("linf"),
            Norm::Euclidean => f.write_str("l2"),
        }
    }
}

/// Cap on the number of explicitly enumerated neighbourhood points.
const LATTICE_POINT_CAP: u64 = 5_000_000;

/// The uniform step distribution on `Λ = {x ∈ Z^d : 0 < ‖x‖ <= L}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepKernel {
    d: u32,
    range: u32,
    norm: Norm,
    lambda_size: u64,
}

impl StepKernel {
    /// Build a kernel. Rejects `d = 0`, `L = 0`, and euclidean kernels with
    /// `d > 4` (no exact convolution path); see [`StepKernel::new_unchecked_euclidean`]
    /// for construction-only euclidean kernels in higher dimension.
    pub fn new(d: u32, range: u32, norm: Norm) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter {
                what: "dimension",
                message: alloc::string::String::from("d = 0; need d >= 1"),
            });
        }
        if range == 0 {
            return Err(Error::InvalidParameter {
                what: "range",
                message: alloc::string::String::from("L = 0; need L >= 1"),
            });
        }
        if norm == Norm::Euclidean && d > 4 {
            return Err(Error::EuclideanInfeasible { d });
        }
        let lambda_size = match norm {
            Norm::Sup => sup_lambda_size(d, range)?,
            Norm::Euclidean => euclidean_lambda_size(d, range)?,
        };
        Ok(StepKernel {
            d,
            range,
            norm,
            lambda_size,
        })
    }

    /// Construction-only euclidean kernel for d > 4: the neighbourhood size is
    /// exact, but convolution operations stay unavailable. Callers opt in
    /// explicitly; constants derived from such a kernel would be approximate.
    pub fn new_unchecked_euclidean(d: u32, range: u32) -> Result<Self> {
        if d == 0 || range == 0 {
            return Err(Error::InvalidParameter {
                what: "kernel parameters",
                message: alloc::format!("need d >= 1 and L >= 1, got d = {d}, L = {range}"),
            });
        }
        let lambda_size = euclidean_lambda_size(d, range)?;
        Ok(StepKernel {
            d,
            range,
            norm: Norm::Euclidean,
            lambda_size,
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// The spread-out range `L`.
    pub fn range(&self) -> u32 {
        self.range
    }

    pub fn norm(&self) -> Norm {
        self.norm
    }

    /// `|Λ|`, the number of neighbours of a vertex.
    pub fn lambda_size(&self) -> u64 {
        self.lambda_size
    }

    /// `β = L^{−d}`, the small parameter of the expansion.
    pub fn beta(&self) -> f64 {
        libm::pow(self.range as f64, -(self.d as f64))
    }

    /// Is `x` a neighbour of the origin, i.e. `0 < ‖x‖ <= L`?
    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        if x.len() != self.d as usize {
            return Err(Error::PointDimension {
                expected: self.d,
                got: x.len(),
            });
        }
        if x.iter().all(|&c| c == 0) {
            return Ok(false);
        }
        let l = self.range as i64;
        Ok(match self.norm {
            Norm::Sup => x.iter().all(|&c| c.abs() <= l),
            Norm::Euclidean => x.iter().map(|&c| c * c).sum::<i64>() <= l * l,
        })
    }

    /// The step weight `D(x)`: `1/|Λ|` on the neighbourhood, `0` elsewhere.
    pub fn step_weight(&self, x: &[i64]) -> Result<Rational> {
        Ok(if self.contains(x)? {
            Rational::new(BigInt::one(), BigInt::from(self.lambda_size))
        } else {
            Rational::zero()
        })
    }

    /// Enumerate the neighbourhood `Λ` in lexicographic coordinate order.
    ///
    /// Guarded by a size cap; used by the census (neighbour offsets), the
    /// direct characteristic-function sum, and the dense convolution path.
    pub fn lattice_points(&self) -> Result<Vec<Vec<i64>>> {
        if self.lambda_size > LATTICE_POINT_CAP {
            return Err(Error::InvalidParameter {
                what: "neighbourhood",
                message: alloc::format!(
                    "|Λ| = {} exceeds the enumeration cap {LATTICE_POINT_CAP}",
                    self.lambda_size
                ),
            });
        }
        let l = self.range as i64;
        let mut points = Vec::with_capacity(self.lambda_size as usize);
        let mut x = vec![-l; self.d as usize];
        loop {
            if self.contains(&x)? {
                points.push(x.clone());
            }
            // lexicographic odometer over the box [-L, L]^d
            let mut i = self.d as usize;
            loop {
                if i == 0 {
                    return Ok(points);
                }
                i -= 1;
                if x[i] < l {
                    x[i] += 1;
                    for c in x.iter_mut().skip(i + 1) {
                        *c = -l;
                    }
                    break;
                }
            }
        }
    }

    /// Exact `D^{*n}(o)`.
    ///
    /// Sup norm: binomial decomposition over one-dimensional centre counts
    /// (any d, any n). Euclidean norm: dense convolution (d <= 4).
    pub fn dstar_origin(&self, n: usize) -> Result<Rational> {
        match self.norm {
            Norm::Sup => {
                let counts = axis_center_counts(self.range, n);
                Ok(dstar_from_counts(&counts, self.d, self.lambda_size, n))
            }
            Norm::Euclidean => {
                if self.d > 4 {
                    return Err(Error::EuclideanInfeasible { d: self.d });
                }
                Ok(self.dense_center_values(n)?.pop().expect("n+1 values"))
            }
        }
    }

    /// Exact `D^{*n}(o)` through the dense d-dimensional convolution.
    ///
    /// Works for any norm with d <= 4; serves as the production euclidean
    /// path and as the independent cross-check of the factorised sup-norm
    /// algorithm. Counts are held in 128-bit integers with checked
    /// arithmetic; overflow reports an explicit error.
    pub fn dstar_origin_dense(&self, n: usize) -> Result<Rational> {
        Ok(self.dense_center_values(n)?.pop().expect("n+1 values"))
    }

    /// Centre values `D^{*m}(o)` for `m = 0..=n` via dense convolution.
    fn dense_center_values(&self, n: usize) -> Result<Vec<Rational>> {
        if self.d > 4 {
            return Err(Error::EuclideanInfeasible { d: self.d });
        }
        let offsets = self.lattice_points()?;
        let d = self.d as usize;
        let l = self.range as i64;
        let half = n as i64 * l;
        let width = (2 * half + 1) as usize;
        let size = width.checked_pow(d as u32).ok_or(Error::InvalidParameter {
            what: "dense window",
            message: alloc::format!("window of width {width} in d = {d} is too large"),
        })?;
        if size > 200_000_000 {
            return Err(Error::InvalidParameter {
                what: "dense window",
                message: alloc::format!("dense window has {size} cells; lower n"),
            });
        }
        let strides: Vec<i64> = (0..d)
            .map(|i| (width as i64).pow((d - 1 - i) as u32))
            .collect();
        let index_of = |x: &[i64]| -> usize {
            let mut idx = 0i64;
            for (c, s) in x.iter().zip(&strides) {
                idx += (c + half) * s;
            }
            idx as usize
        };
        let offset_strides: Vec<i64> = offsets
            .iter()
            .map(|x| x.iter().zip(&strides).map(|(c, s)| c * s).sum())
            .collect();

        let lambda = BigInt::from(self.lambda_size);
        let center = index_of(&vec![0i64; d]);
        let mut cur: Vec<u128> = vec![0; size];
        cur[center] = 1;
        let mut values = Vec::with_capacity(n + 1);
        values.push(Rational::one());

        // walk counts: next[x] = Σ_{y ∈ Λ} cur[x − y]
        let mut coords = vec![0i64; d];
        for m in 1..=n {
            let reach = m as i64 * l;
            let mut next: Vec<u128> = vec![0; size];
            for c in coords.iter_mut() {
                *c = -reach;
            }
            'cells: loop {
                let idx = index_of(&coords);
                let mut acc: u128 = 0;
                for (off, ostr) in offsets.iter().zip(&offset_strides) {
                    // source cell must be inside the previous reach
                    let mut inside = true;
                    for (c, o) in coords.iter().zip(off) {
                        if (c - o).abs() > (m as i64 - 1) * l {
                            inside = false;
                            break;
                        }
                    }
                    if inside {
                        let src = (idx as i64 - ostr) as usize;
                        acc = acc
                            .checked_add(cur[src])
                            .ok_or(Error::DenseOverflow { n: m })?;
                    }
                }
                next[idx] = acc;
                let mut i = d;
                loop {
                    if i == 0 {
                        break 'cells;
                    }
                    i -= 1;
                    if coords[i] < reach {
                        coords[i] += 1;
                        for c in coords.iter_mut().skip(i + 1) {
                            *c = -reach;
                        }
                        break;
                    }
                }
            }
            cur = next;
            values.push(Rational::new(
                BigInt::from(cur[center]),
                lambda.pow(m as u32),
            ));
        }
        Ok(values)
    }

    /// Batch table of `D^{*n}(o)` for `n = 0..=n_max`, with a tail bar.
    pub fn conv_table(&self, n_max: usize) -> Result<ConvolutionTable> {
        if n_max < 2 {
            return Err(Error::InvalidParameter {
                what: "n_max",
                message: alloc::format!("n_max = {n_max}; need n_max >= 2"),
            });
        }
        let values = match self.norm {
            Norm::Sup => {
                let counts = axis_center_counts(self.range, n_max);
                (0..=n_max)
                    .map(|n| dstar_from_counts(&counts, self.d, self.lambda_size, n))
                    .collect::<Vec<_>>()
            }
            Norm::Euclidean => self.dense_center_values(n_max)?,
        };
        let tail = if self.d >= 3 {
            table_tail(&values)
        } else {
            None
        };
        Ok(ConvolutionTable {
            kernel: self.clone(),
            values,
            tail,
        })
    }

    /// The characteristic function `D̂(k) = Σ_x D(x) cos(k·x)`.
    ///
    /// Sup norm: factorised per-axis cosine sums (the box sum is a product of
    /// Dirichlet kernels). Other norms fall back to the direct lattice sum.
    /// `D̂(0) = 1` exactly and `D̂(k) ∈ [−1, 1]`.
    pub fn dhat(&self, k: &[f64]) -> Result<f64> {
        if k.len() != self.d as usize {
            return Err(Error::PointDimension {
                expected: self.d,
                got: k.len(),
            });
        }
        match self.norm {
            Norm::Sup => {
                let mut product = 1.0f64;
                for &kj in k {
                    let mut axis = 1.0f64;
                    for m in 1..=self.range {
                        axis += 2.0 * libm::cos(m as f64 * kj);
                    }
                    product *= axis;
                }
                Ok((product - 1.0) / self.lambda_size as f64)
            }
            Norm::Euclidean => self.dhat_direct(k),
        }
    }

    /// Reference evaluation of `D̂(k)` as the direct sum over `Λ`.
    pub fn dhat_direct(&self, k: &[f64]) -> Result<f64> {
        if k.len() != self.d as usize {
            return Err(Error::PointDimension {
                expected: self.d,
                got: k.len(),
            });
        }
        let mut sum = 0.0f64;
        for x in self.lattice_points()? {
            let dot: f64 = x.iter().zip(k).map(|(&c, &kj)| c as f64 * kj).sum();
            sum += libm::cos(dot);
        }
        Ok(sum / self.lambda_size as f64)
    }
}

fn sup_lambda_size(d: u32, range: u32) -> Result<u64> {
    let side = 2u64 * range as u64 + 1;
    let mut acc: u64 = 1;
    for _ in 0..d {
        acc = acc.checked_mul(side).ok_or(Error::InvalidParameter {
            what: "neighbourhood",
            message: alloc::format!("|Λ| = (2L+1)^d − 1 overflows u64 at d = {d}, L = {range}"),
        })?;
    }
    Ok(acc - 1)
}

/// Count lattice points with `0 < Σ x_i² <= L²` by convolving per-axis
/// squared-norm histograms.
fn euclidean_lambda_size(d: u32, range: u32) -> Result<u64> {
    let cap = (range as usize) * (range as usize);
    // counts[s] = number of prefixes with squared norm exactly s
    let mut counts: Vec<u128> = vec![0; cap + 1];
    counts[0] = 1;
    for _ in 0..d {
        let mut next: Vec<u128> = vec![0; cap + 1];
        for (s, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            // axis value 0
            next[s] = next[s].checked_add(c).ok_or_else(overflow_err)?;
            let mut x = 1usize;
            while s + x * x <= cap {
                next[s + x * x] = next[s + x * x]
                    .checked_add(2 * c)
                    .ok_or_else(overflow_err)?;
                x += 1;
            }
        }
        counts = next;
    }
    let total: u128 = counts.iter().sum();
    let lambda = total - 1; // remove the origin
    lambda.to_u64().ok_or_else(overflow_err)
}

fn overflow_err() -> Error {
    Error::InvalidParameter {
        what: "neighbourhood",
        message: alloc::string::String::from("|Λ| overflows u64"),
    }
}

/// Centre values of k-fold self-convolutions of the uniform *count* on
/// `{-L..L}`: `c_k` = number of k-step walks with steps in `{-L..L}` that
/// return to 0. `c_0 = 1`.
pub fn axis_center_counts(range: u32, n_max: usize) -> Vec<BigInt> {
    let l = range as i64;
    let window = (2 * l + 1) as usize;
    let mut centers = Vec::with_capacity(n_max + 1);
    centers.push(BigInt::one());
    // counts over [-kL, kL], index t + kL
    let mut cur: Vec<BigInt> = vec![BigInt::one()]; // k = 0: δ at 0
    for k in 1..=n_max as i64 {
        let width = (2 * k * l + 1) as usize;
        let mut next: Vec<BigInt> = Vec::with_capacity(width);
        // sliding-window sum over the previous vector
        let prev_width = cur.len() as i64;
        let mut acc = BigInt::zero();
        // next[t] for t - (k L) ∈ [0, width): sum of cur over [t - window + 1, t]
        // in padded coordinates where cur is prefixed/suffixed by zeros.
        for t in 0..width as i64 {
            // add cur index entering the window
            let entering = t;
            if entering < prev_width {
                acc += &cur[entering as usize];
            }
            // remove cur index leaving the window
            let leaving = t - window as i64;
            if (0..prev_width).contains(&leaving) {
                acc -= &cur[leaving as usize];
            }
            next.push(acc.clone());
        }
        cur = next;
        centers.push(cur[(k * l) as usize].clone());
    }
    centers
}

/// `D^{*n}(o) = Σ_{k=0}^{n} C(n,k) (−1)^{n−k} c_k^d / |Λ|^n` in exact
/// arithmetic.
pub fn dstar_from_counts(centers: &[BigInt], d: u32, lambda_size: u64, n: usize) -> Rational {
    let mut sum = BigInt::zero();
    let mut binom = BigInt::one();
    for (k, center) in centers.iter().enumerate().take(n + 1) {
        let term = &binom * center.pow(d);
        if (n - k) % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        if k < n {
            binom = binom * BigInt::from((n - k) as u64) / BigInt::from((k + 1) as u64);
        }
    }
    Rational::new(sum, BigInt::from(lambda_size).pow(n as u32))
}

fn table_tail(values: &[Rational]) -> Option<TailBound> {
    // last index with a positive entry (odd entries can vanish for bipartite
    // neighbourhoods)
    let last = values.iter().rposition(|v| !numeric::is_zero(v))?;
    if last < 6 {
        return None;
    }
    let window: Vec<f64> = values[last - 4..=last].iter().map(to_f64).collect();
    geometric_tail(&window)
}

/// Exact table of `D^{*n}(o)` for `n = 0..=n_max` plus a heuristic tail bar.
#[derive(Debug, Clone)]
pub struct ConvolutionTable {
    kernel: StepKernel,
    values: Vec<Rational>,
    tail: Option<TailBound>,
}

impl ConvolutionTable {
    pub fn kernel(&self) -> &StepKernel {
        &self.kernel
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    /// `D^{*n}(o)`, exact.
    pub fn value(&self, n: usize) -> &Rational {
        &self.values[n]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// The heuristic bar on `Σ_{n > n_max} D^{*n}(o)`; present only for
    /// d >= 3 with enough decaying entries.
    pub fn tail_bound(&self) -> Option<TailBound> {
        self.tail
    }

    /// Tail sum `S_{>=t}(o) = Σ_{n>=t} D^{*n}(o)`: exact prefix through
    /// `n_max` plus the table's tail bar.
    pub fn s_geq(&self, t: usize) -> Result<TailSum> {
        if self.kernel.d < 3 {
            return Err(Error::DivergentTail { d: self.kernel.d });
        }
        if t < 1 {
            return Err(Error::InvalidParameter {
                what: "tail start",
                message: alloc::string::String::from("t = 0; tail sums start at t >= 1"),
            });
        }
        let tail = self.tail.ok_or(Error::TailBoundUnavailable {
            n_max: self.n_max(),
        })?;
        let mut prefix = Rational::zero();
        for n in t..=self.n_max() {
            prefix += &self.values[n];
        }
        Ok(TailSum {
            start: t,
            prefix,
            tail_error: tail.bound,
        })
    }

    /// `Σ_{n=from..=n_max} w(n) · D^{*n}(o)` in exact arithmetic.
    pub fn weighted_sum<F: Fn(usize) -> Rational>(&self, from: usize, weight: F) -> Rational {
        let mut acc = Rational::zero();
        for n in from..=self.n_max() {
            acc += weight(n) * &self.values[n];
        }
        acc
    }
}

/// `S_{>=t}(o)` as an exact prefix plus a tail bar.
#[derive(Debug, Clone)]
pub struct TailSum {
    /// First convolution order included.
    pub start: usize,
    /// Exact `Σ_{n=start..=n_max} D^{*n}(o)`.
    pub prefix: Rational,
    /// Bar on the omitted `n > n_max` part.
    pub tail_error: f64,
}

impl TailSum {
    pub fn value(&self) -> f64 {
        to_f64(&self.prefix)
    }
}

/// `|L^d · D^{*n}(o) − U^{*n}(o)|`: the finite-L gap between the lattice
/// return probability and its continuum limit. Sup norm only.
pub fn scaling_gap(d: u32, range: u32, n: usize) -> Result<f64> {
    let kernel = StepKernel::new(d, range, Norm::Sup)?;
    if n < 2 {
        return Err(Error::InvalidParameter {
            what: "convolution order",
            message: alloc::format!("n = {n}; the gap is defined for n >= 2"),
        });
    }
    let lattice = kernel.dstar_origin(n)? * numeric::rat_int(range as i64).pow(d as i32);
    let continuum = continuum::ustar_origin_exact(n, d)?;
    let gap = lattice - continuum;
    Ok(libm::fabs(to_f64(&gap)))
}
