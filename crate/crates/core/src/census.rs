//! Exhaustive enumeration of spread-out lattice trees and lattice animals.
//!
//! A polymer is an edge set on the spread-out graph; trees are the acyclic
//! ones. Enumeration grows the component of a root vertex by one edge at a
//! time. At each state the admissible extensions are listed in a fixed order
//! and branch `i` adds extension `i` while permanently excluding extensions
//! `0..i`; the branches therefore partition the supersets of the current
//! polymer and every polymer is visited exactly once, with no dedup table.
//! Trees admit only boundary edges (one endpoint new); animals also admit
//! chords between existing vertices.
//!
//! Work is metered in neighbour probes against a configurable budget;
//! exceeding it aborts with an error and discards all partial counts.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::kernel::{Norm, StepKernel};
use crate::numeric::{ln_big, ln_rat, Rational};
use crate::series::{PowerSeries, SeriesKind};
use crate::{Error, PolymerModel, Result};

/// A lattice point, one coordinate per dimension.
pub type Point = Vec<i64>;

/// The origin in `d` dimensions.
pub fn origin(d: u32) -> Point {
    vec![0; d as usize]
}

/// Default enumeration budget, in neighbour probes.
pub const DEFAULT_BUDGET: u64 = 2_000_000_000;

/// Parameters of one enumeration run.
#[derive(Debug, Clone)]
pub struct CensusRequest {
    pub model: PolymerModel,
    pub d: u32,
    pub range: u32,
    pub norm: Norm,
    /// Vertices every counted polymer must contain (nonempty).
    pub required: Vec<Point>,
    pub max_vertices: u32,
    /// Work budget in neighbour probes; `0` means [`DEFAULT_BUDGET`].
    pub budget: u64,
}

impl CensusRequest {
    /// Request with the origin as the only required vertex.
    pub fn rooted(model: PolymerModel, d: u32, range: u32, norm: Norm, max_vertices: u32) -> Self {
        CensusRequest {
            model,
            d,
            range,
            norm,
            required: vec![origin(d)],
            max_vertices,
            budget: 0,
        }
    }
}

/// Exact polymer counts indexed by `(n_vertices, n_edges)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolymerCensus {
    pub model: PolymerModel,
    pub d: u32,
    pub range: u32,
    pub norm: Norm,
    /// Canonicalised (sorted, deduplicated) required vertices.
    pub required: Vec<Point>,
    pub max_vertices: u32,
    pub counts: BTreeMap<(u32, u32), u64>,
}

impl PolymerCensus {
    pub fn lambda_size(&self) -> Result<u64> {
        Ok(StepKernel::new(self.d, self.range, self.norm)?.lambda_size())
    }

    /// Total polymer count at a given vertex count, over all edge counts.
    pub fn total_at_vertices(&self, n: u32) -> u64 {
        self.counts.range((n, 0)..(n + 1, 0)).map(|(_, &c)| c).sum()
    }

    fn requires_only_origin(&self) -> bool {
        self.required.len() == 1 && self.required[0].iter().all(|&c| c == 0)
    }
}

/// Count every polymer of the requested model containing the required
/// vertices, with at most `max_vertices` vertices.
pub fn enumerate(req: &CensusRequest) -> Result<PolymerCensus> {
    let (census, _) = enumerate_inner(req, false)?;
    Ok(census)
}

/// One enumeration pass that also bins counts by every non-root vertex,
/// yielding the two-point series for *all* reachable `x` at once. The
/// request must be rooted at the origin alone.
pub fn two_point_map(req: &CensusRequest) -> Result<BTreeMap<Point, PowerSeries>> {
    let (census, per_vertex) = enumerate_inner(req, true)?;
    if !census.requires_only_origin() {
        return Err(Error::InvalidParameter {
            what: "census",
            message: alloc::string::String::from("two-point maps need required = {origin}"),
        });
    }
    let lambda = BigInt::from(census.lambda_size()?);
    let order = census.max_vertices as usize - 1;
    let mut map = BTreeMap::new();
    for (point, by_edges) in per_vertex {
        map.insert(
            point,
            series_from_edge_counts(&by_edges, &lambda, order, SeriesKind::TwoPoint),
        );
    }
    Ok(map)
}

fn series_from_edge_counts(
    by_edges: &BTreeMap<u32, u64>,
    lambda: &BigInt,
    order: usize,
    kind: SeriesKind,
) -> PowerSeries {
    let mut coeffs = vec![Rational::zero(); order + 1];
    for (&k, &count) in by_edges {
        let k = k as usize;
        if k <= order {
            coeffs[k] = Rational::new(BigInt::from(count), lambda.pow(k as u32));
        }
    }
    PowerSeries::new(kind, coeffs)
}

/// Polymer counts keyed by edge count, per target vertex.
type EdgeCountsByVertex = BTreeMap<Point, BTreeMap<u32, u64>>;

fn enumerate_inner(
    req: &CensusRequest,
    collect_two_point: bool,
) -> Result<(PolymerCensus, EdgeCountsByVertex)> {
    if req.required.is_empty() {
        return Err(Error::EmptyRequired);
    }
    if req.max_vertices == 0 {
        return Err(Error::InvalidParameter {
            what: "max_vertices",
            message: alloc::string::String::from("max_vertices = 0; need at least 1"),
        });
    }
    let kernel = StepKernel::new(req.d, req.range, req.norm)?;
    let d = req.d as usize;
    for p in &req.required {
        if p.len() != d {
            return Err(Error::PointDimension {
                expected: req.d,
                got: p.len(),
            });
        }
    }
    let mut required = req.required.clone();
    required.sort();
    required.dedup();

    let census_shell = |counts| PolymerCensus {
        model: req.model,
        d: req.d,
        range: req.range,
        norm: req.norm,
        required: required.clone(),
        max_vertices: req.max_vertices,
        counts,
    };

    // unreachable required vertices, or more required vertices than room:
    // the census is exactly empty
    let root = required[0].clone();
    let radius = (req.max_vertices as i64 - 1)
        .checked_mul(req.range as i64)
        .filter(|r| *r <= i64::MAX / 4)
        .ok_or(Error::InvalidParameter {
            what: "enumeration window",
            message: alloc::format!(
                "window radius (max_vertices − 1)·L overflows at max_vertices = {}, L = {}",
                req.max_vertices,
                req.range
            ),
        })?;
    // wide arithmetic: coordinates are arbitrary i64 from parsed input
    let reachable = required.iter().all(|p| {
        p.iter()
            .zip(&root)
            .all(|(&c, &r)| (c as i128 - r as i128).abs() <= radius as i128)
    });
    if required.len() > req.max_vertices as usize || !reachable {
        return Ok((census_shell(BTreeMap::new()), BTreeMap::new()));
    }

    // packed window geometry centred at the root
    let radix = (2 * radius + 1) as u64;
    let mut powers = Vec::with_capacity(d);
    let mut acc: u64 = 1;
    for _ in 0..d {
        powers.push(acc);
        acc = acc.checked_mul(radix).ok_or(Error::InvalidParameter {
            what: "enumeration window",
            message: alloc::format!("window radix {radix}^{d} overflows"),
        })?;
    }

    let pack = |p: &[i64]| -> u64 {
        p.iter()
            .zip(&root)
            .zip(&powers)
            .map(|((&c, &r), &pw)| ((c - r + radius) as u64) * pw)
            .sum()
    };
    let required_rest: Vec<u64> = required[1..].iter().map(|p| pack(p)).collect();

    let mut eng = Enumerator {
        offsets: kernel.lattice_points()?,
        model: req.model,
        max_vertices: req.max_vertices as usize,
        radius,
        powers: powers.clone(),
        d,
        budget: if req.budget == 0 {
            DEFAULT_BUDGET
        } else {
            req.budget
        },
        work: 0,
        verts: vec![pack(&root)],
        vert_coords: vec![vec![radius; d]],
        edges: Vec::new(),
        excluded: BTreeSet::new(),
        required_rest,
        counts: BTreeMap::new(),
        two_point: if collect_two_point {
            Some(BTreeMap::new())
        } else {
            None
        },
    };
    eng.run()?;

    let per_vertex = if collect_two_point {
        let tp = eng.two_point.take().unwrap_or_default();
        let mut out = BTreeMap::new();
        for (id, by_edges) in tp {
            // unpack back to absolute coordinates
            let mut point = Vec::with_capacity(d);
            let mut rest = id;
            for (i, &pw) in powers.iter().enumerate().rev() {
                let digit = rest / pw;
                rest %= pw;
                point.push(digit as i64 - radius + root[i]);
            }
            point.reverse();
            out.insert(point, by_edges);
        }
        out
    } else {
        BTreeMap::new()
    };

    Ok((census_shell(eng.counts), per_vertex))
}

struct Enumerator {
    offsets: Vec<Point>,
    model: PolymerModel,
    max_vertices: usize,
    radius: i64,
    powers: Vec<u64>,
    d: usize,
    budget: u64,
    work: u64,
    /// Packed vertex ids in insertion order; `verts[0]` is the root.
    verts: Vec<u64>,
    /// Window coordinates (shifted by +radius) of each vertex.
    vert_coords: Vec<Vec<i64>>,
    edges: Vec<(u64, u64)>,
    excluded: BTreeSet<(u64, u64)>,
    required_rest: Vec<u64>,
    counts: BTreeMap<(u32, u32), u64>,
    two_point: Option<BTreeMap<u64, BTreeMap<u32, u64>>>,
}

struct Candidate {
    edge: (u64, u64),
    /// Packed id and window coordinates when the edge brings a new vertex.
    grows: Option<(u64, Vec<i64>)>,
}

fn edge_key(a: u64, b: u64) -> (u64, u64) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Enumerator {
    fn run(&mut self) -> Result<()> {
        self.emit();
        let cands = self.admissible()?;
        let mut excluded_here = 0usize;
        for i in 0..cands.len() {
            if i > 0 {
                self.excluded.insert(cands[i - 1].edge);
                excluded_here += 1;
            }
            let cand = &cands[i];
            self.edges.push(cand.edge);
            let grew = if let Some((id, coords)) = &cand.grows {
                self.verts.push(*id);
                self.vert_coords.push(coords.clone());
                true
            } else {
                false
            };
            self.run()?;
            if grew {
                self.verts.pop();
                self.vert_coords.pop();
            }
            self.edges.pop();
        }
        for cand in cands.iter().take(excluded_here) {
            self.excluded.remove(&cand.edge);
        }
        Ok(())
    }

    fn emit(&mut self) {
        if !self.required_rest.iter().all(|r| self.verts.contains(r)) {
            return;
        }
        let key = (self.verts.len() as u32, self.edges.len() as u32);
        *self.counts.entry(key).or_insert(0) += 1;
        if let Some(tp) = &mut self.two_point {
            let k = self.edges.len() as u32;
            for &v in &self.verts[1..] {
                *tp.entry(v).or_default().entry(k).or_insert(0) += 1;
            }
        }
    }

    fn admissible(&mut self) -> Result<Vec<Candidate>> {
        let mut cands = Vec::new();
        let room = self.verts.len() < self.max_vertices;
        let span = 2 * self.radius;
        self.work += (self.verts.len() * self.offsets.len()) as u64;
        if self.work > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        for vi in 0..self.verts.len() {
            let v = self.verts[vi];
            'offsets: for off in &self.offsets {
                // window coordinates of the neighbour, with bounds check
                let mut w: u64 = 0;
                for ((&base, &step), &power) in
                    self.vert_coords[vi].iter().zip(off).zip(&self.powers)
                {
                    let c = base + step;
                    if c < 0 || c > span {
                        continue 'offsets;
                    }
                    w += c as u64 * power;
                }
                match self.verts.iter().position(|&u| u == w) {
                    Some(j) => {
                        // chord between existing vertices: animals only,
                        // offered once (from the earlier endpoint)
                        if self.model == PolymerModel::Animals && vi < j {
                            let e = edge_key(v, w);
                            if !self.edges.contains(&e) && !self.excluded.contains(&e) {
                                cands.push(Candidate {
                                    edge: e,
                                    grows: None,
                                });
                            }
                        }
                    }
                    None => {
                        if room {
                            let e = edge_key(v, w);
                            if !self.excluded.contains(&e) {
                                let coords: Vec<i64> = (0..self.d)
                                    .map(|i| self.vert_coords[vi][i] + off[i])
                                    .collect();
                                cands.push(Candidate {
                                    edge: e,
                                    grows: Some((w, coords)),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(cands)
    }
}

/// One-point generating function `g_p` from a census rooted at the origin:
/// the `p^k` coefficient is `Σ_n count(n, k) / |Λ|^k`.
///
/// Coefficients are kept through `max_vertices − 1`: with a vertex-bounded
/// enumeration those are the complete ones (a polymer with `k` edges has at
/// most `k + 1` vertices).
pub fn one_point_series(census: &PolymerCensus) -> Result<PowerSeries> {
    weighted_series(census, SeriesKind::OnePoint, |_n| 1)
}

/// Susceptibility series: the `p^k` coefficient is
/// `Σ_n n · count(n, k) / |Λ|^k` (the vertex-count-weighted one-point sum,
/// which avoids summing over `x`).
pub fn chi_series_from(census: &PolymerCensus) -> Result<PowerSeries> {
    weighted_series(census, SeriesKind::Susceptibility, |n| n as u64)
}

/// Convenience wrapper: enumerate, then build the susceptibility series.
pub fn chi_series(
    model: PolymerModel,
    d: u32,
    range: u32,
    norm: Norm,
    max_vertices: u32,
    budget: u64,
) -> Result<PowerSeries> {
    let mut req = CensusRequest::rooted(model, d, range, norm, max_vertices);
    req.budget = budget;
    chi_series_from(&enumerate(&req)?)
}

fn weighted_series(
    census: &PolymerCensus,
    kind: SeriesKind,
    weight: impl Fn(u32) -> u64,
) -> Result<PowerSeries> {
    if !census.requires_only_origin() {
        return Err(Error::InvalidParameter {
            what: "census",
            message: alloc::string::String::from("this series needs required = {origin}"),
        });
    }
    let lambda = BigInt::from(census.lambda_size()?);
    let order = census.max_vertices as usize - 1;
    let mut sums: Vec<BigInt> = vec![BigInt::zero(); order + 1];
    for (&(n, k), &count) in &census.counts {
        let k = k as usize;
        if k <= order {
            sums[k] += BigInt::from(count) * BigInt::from(weight(n));
        }
    }
    let coeffs = sums
        .into_iter()
        .enumerate()
        .map(|(k, s)| Rational::new(s, lambda.pow(k as u32)))
        .collect();
    Ok(PowerSeries::new(kind, coeffs))
}

/// Two-point series `τ_p(x)` for one target vertex.
///
/// `x = o` is the one-point function by definition and is aliased to it.
pub fn two_point_series(
    model: PolymerModel,
    d: u32,
    range: u32,
    norm: Norm,
    x: &Point,
    max_vertices: u32,
    budget: u64,
) -> Result<PowerSeries> {
    if x.len() != d as usize {
        return Err(Error::PointDimension {
            expected: d,
            got: x.len(),
        });
    }
    if x.iter().all(|&c| c == 0) {
        let mut req = CensusRequest::rooted(model, d, range, norm, max_vertices);
        req.budget = budget;
        return one_point_series(&enumerate(&req)?);
    }
    let req = CensusRequest {
        model,
        d,
        range,
        norm,
        required: vec![origin(d), x.clone()],
        max_vertices,
        budget,
    };
    let census = enumerate(&req)?;
    let lambda = BigInt::from(census.lambda_size()?);
    let order = max_vertices as usize - 1;
    let mut by_edges: BTreeMap<u32, u64> = BTreeMap::new();
    for (&(_n, k), &count) in &census.counts {
        *by_edges.entry(k).or_insert(0) += count;
    }
    Ok(series_from_edge_counts(
        &by_edges,
        &lambda,
        order,
        SeriesKind::TwoPoint,
    ))
}

/// `t_n`: the 1/n-weighted count of n-vertex trees containing the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct TnTable {
    /// `t[n-1]` is `t_n`, exact.
    pub t: Vec<Rational>,
}

pub fn tn_table(census: &PolymerCensus) -> Result<TnTable> {
    if census.model != PolymerModel::Trees {
        return Err(Error::InvalidParameter {
            what: "census",
            message: alloc::string::String::from("t_n tables are defined for trees"),
        });
    }
    if !census.requires_only_origin() {
        return Err(Error::InvalidParameter {
            what: "census",
            message: alloc::string::String::from("t_n tables need required = {origin}"),
        });
    }
    let t = (1..=census.max_vertices)
        .map(|n| {
            let rooted = census.counts.get(&(n, n - 1)).copied().unwrap_or(0);
            Rational::new(BigInt::from(rooted), BigInt::from(n))
        })
        .collect();
    Ok(TnTable { t })
}

impl TnTable {
    /// Check `t_{n+m} >= t_n t_m` on every index pair inside the range.
    pub fn is_supermultiplicative(&self) -> bool {
        let len = self.t.len();
        for n in 1..=len {
            for m in 1..=len {
                if n + m > len {
                    continue;
                }
                if self.t[n + m - 1] < &self.t[n - 1] * &self.t[m - 1] {
                    return false;
                }
            }
        }
        true
    }
}

/// The growth-based critical-fugacity sequence
/// `(n² · t_n / |Λ|^{n−1})^{−1/n}`, whose limit is the critical fugacity.
///
/// Computed in log space so huge exact counts cannot overflow.
pub fn growth_pc_estimate(tn: &TnTable, lambda_size: u64) -> Result<Vec<f64>> {
    if tn.t.iter().any(|t| t <= &Rational::zero()) {
        return Err(Error::InvalidParameter {
            what: "t_n table",
            message: alloc::string::String::from(
                "growth estimates need t_n > 0 on the whole range",
            ),
        });
    }
    let ln_lambda = ln_big(&BigInt::from(lambda_size));
    Ok(tn
        .t
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let n = (i + 1) as f64;
            let ln_term = 2.0 * libm::log(n) + ln_rat(t) - (n - 1.0) * ln_lambda;
            libm::exp(-ln_term / n)
        })
        .collect())
}
