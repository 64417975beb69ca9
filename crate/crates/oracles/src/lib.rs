//! Independent oracles for cross-checking the main library.
//!
//! Nothing here shares code with `latpoly-core`: the uniform-sum density is
//! built by piecewise-polynomial integral recursion instead of the
//! alternating closed form, polymers are counted by filtering explicit
//! subsets of a bounding window instead of canonical extension, and the
//! one-dimensional model comes from interval closed forms. Agreement between
//! the two routes is the point.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Density of the sum of `n` independent uniforms on `[0,1]`, evaluated at
/// the centre `n/2`, built by the integral recursion
/// `f_{n+1}(x) = ∫_{x−1}^{x} f_n(t) dt` on exact piecewise polynomials.
pub fn uniform_sum_center_by_recursion(n: usize) -> BigRational {
    uniform_sum_center_table(n).pop().expect("n >= 1")
}

/// Centre values `f_m(m/2)` for every `m = 1..=n` from a single recursion
/// pass (index `m − 1`).
///
/// The pieces of `f_m` are integer polynomials over the common denominator
/// `(m−1)!`, so the whole recursion runs in integer arithmetic; rationals
/// only appear in the returned centre values.
pub fn uniform_sum_center_table(n: usize) -> Vec<BigRational> {
    assert!(n >= 1);
    let center = |pieces: &[Vec<BigInt>], denom: &BigInt, m: usize| -> BigRational {
        // evaluate at x = m/2: Σ c_k (m/2)^k = Σ c_k m^k 2^{K−k} / 2^K
        let j = if m == 1 { 0 } else { (m / 2).min(m - 1) };
        let poly = &pieces[j];
        let deg = poly.len() - 1;
        let mut numer = BigInt::zero();
        for (k, c) in poly.iter().enumerate() {
            numer +=
                c * BigInt::from(m as u64).pow(k as u32) * BigInt::from(2u64).pow((deg - k) as u32);
        }
        BigRational::new(numer, denom * BigInt::from(2u64).pow(deg as u32))
    };
    // pieces[j] = global-coordinate integer coefficients over (m−1)!,
    // valid on [j, j+1]
    let mut pieces: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    let mut denom = BigInt::one();
    let mut out = Vec::with_capacity(n);
    out.push(center(&pieces, &denom, 1));
    for m in 1..n {
        pieces = convolve_with_uniform(&pieces, m);
        denom *= BigInt::from(m as u64);
        out.push(center(&pieces, &denom, m + 1));
    }
    out
}

/// `u^{*n}(0)` for the uniform density on `[−1,1]`: centring maps it to half
/// the uniform-sum centre value.
pub fn uniform_center_oracle(n: usize) -> BigRational {
    uniform_sum_center_by_recursion(n) / BigRational::new(BigInt::from(2), BigInt::one())
}

/// `u^{*m}(0)` for every `m = 1..=n` from one recursion pass.
pub fn uniform_center_table(n: usize) -> Vec<BigRational> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    uniform_sum_center_table(n)
        .into_iter()
        .map(|v| v * &half)
        .collect()
}

/// One integration step: from the pieces of `f_m` (integer coefficients
/// over `(m−1)!`, supported on `[0, m]`) to the pieces of `f_{m+1}`
/// (over `m!`, supported on `[0, m+1]`).
///
/// Inside the level everything is scaled by `K = lcm(1..=m)` so the
/// antiderivative keeps integer coefficients; the result is rescaled back
/// by the exact division `·m / K` (the true denominators divide `m!`).
fn convolve_with_uniform(pieces: &[Vec<BigInt>], m: usize) -> Vec<Vec<BigInt>> {
    let mut k_lcm = BigInt::one();
    for i in 2..=m as u64 {
        let g = gcd(&k_lcm, &BigInt::from(i));
        k_lcm = k_lcm * BigInt::from(i) / g;
    }
    // cumulative antiderivative F with F(0) = 0: on piece j it is
    // P_j(x) + C_j, all over the denominator (m−1)!·K
    let mut antis: Vec<Vec<BigInt>> = Vec::with_capacity(m);
    let mut consts: Vec<BigInt> = Vec::with_capacity(m);
    let mut carry = BigInt::zero();
    for (j, piece) in pieces.iter().enumerate() {
        let mut anti = Vec::with_capacity(piece.len() + 1);
        anti.push(BigInt::zero());
        for (k, c) in piece.iter().enumerate() {
            anti.push(c * &k_lcm / BigInt::from((k + 1) as u64));
        }
        let c = &carry - eval_poly_int(&anti, j as i64);
        carry = eval_poly_int(&anti, (j + 1) as i64) + &c;
        antis.push(anti);
        consts.push(c);
    }
    let total = carry; // F(m) = total mass = 1 over the scaled denominator

    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(m + 1);
    for j in 0..=m {
        // f_{m+1}(x) = F(x) − F(x−1) on [j, j+1]
        let upper: Vec<BigInt> = if j < m {
            let mut p = antis[j].clone();
            p[0] += &consts[j];
            p
        } else {
            vec![total.clone()]
        };
        let lower: Vec<BigInt> = if j >= 1 {
            let mut shifted = shift_poly(&antis[j - 1]); // P_{j−1}(x−1)
            shifted[0] += &consts[j - 1];
            shifted
        } else {
            vec![BigInt::zero()]
        };
        // rescale from (m−1)!·K to m!: multiply by m, divide by K exactly
        let rescaled = poly_sub(&upper, &lower)
            .into_iter()
            .map(|c| {
                let scaled = c * BigInt::from(m as u64);
                let (q, r) = num_integer::Integer::div_rem(&scaled, &k_lcm);
                assert!(r.is_zero(), "coefficient not divisible by lcm scale");
                q
            })
            .collect();
        out.push(rescaled);
    }
    out
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::gcd(a, b)
}

/// `p(x−1)` by binomial expansion.
fn shift_poly(poly: &[BigInt]) -> Vec<BigInt> {
    let n = poly.len();
    let mut out = vec![BigInt::zero(); n];
    for (k, c) in poly.iter().enumerate() {
        // (x−1)^k = Σ_i C(k,i) (−1)^{k−i} x^i
        let mut binom = BigInt::one();
        for (i, slot) in out.iter_mut().enumerate().take(k + 1) {
            let term = c * &binom;
            if (k - i) % 2 == 1 {
                *slot -= term;
            } else {
                *slot += term;
            }
            if i < k {
                binom = binom * BigInt::from((k - i) as u64) / BigInt::from((i + 1) as u64);
            }
        }
    }
    out
}

fn poly_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    while out.len() > 1 && out.last().map(|c| c.is_zero()).unwrap_or(false) {
        out.pop();
    }
    out
}

fn eval_poly_int(poly: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    let mut acc = BigInt::zero();
    for c in poly.iter().rev() {
        acc = acc * &x + c;
    }
    acc
}

/// Polymer family for the window oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleModel {
    Trees,
    Animals,
}

/// Count polymers containing the origin by explicit window enumeration.
///
/// Every vertex subset of the sup-norm window of radius
/// `(max_vertices − 1)·l` that contains the origin is listed; its induced
/// spread-out edges are collected; tree counts come from spanning-tree
/// subsets, animal counts from all spanning connected edge subsets. Keys of
/// the result are `(n_vertices, n_edges)`.
pub fn census_oracle(
    model: OracleModel,
    d: usize,
    l: i64,
    max_vertices: usize,
) -> BTreeMap<(u32, u32), u64> {
    assert!(d >= 1 && l >= 1 && max_vertices >= 1);
    let radius = (max_vertices as i64 - 1) * l;
    let mut cells: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![-radius; d];
    loop {
        cells.push(cur.clone());
        let mut i = d;
        let mut done = true;
        while i > 0 {
            i -= 1;
            if cur[i] < radius {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = -radius;
                }
                done = false;
                break;
            }
        }
        if done {
            break;
        }
    }
    let origin_idx = cells
        .iter()
        .position(|c| c.iter().all(|&x| x == 0))
        .expect("origin in window");
    let others: Vec<usize> = (0..cells.len()).filter(|&i| i != origin_idx).collect();

    let adjacent = |a: &[i64], b: &[i64]| -> bool {
        a != b && a.iter().zip(b).all(|(&x, &y)| (x - y).abs() <= l)
    };

    let mut counts: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    counts.insert((1, 0), 1); // the single-vertex polymer

    // choose k = 1..max_vertices−1 extra cells
    for k in 1..max_vertices {
        if others.len() < k {
            break;
        }
        let mut chosen: Vec<usize> = (0..k).collect();
        loop {
            let mut verts: Vec<usize> = Vec::with_capacity(k + 1);
            verts.push(origin_idx);
            verts.extend(chosen.iter().map(|&i| others[i]));
            count_on_vertex_set(model, &cells, &verts, &adjacent, &mut counts);
            if !next_combination(&mut chosen, others.len()) {
                break;
            }
        }
    }
    counts
}

fn count_on_vertex_set(
    model: OracleModel,
    cells: &[Vec<i64>],
    verts: &[usize],
    adjacent: &impl Fn(&[i64], &[i64]) -> bool,
    counts: &mut BTreeMap<(u32, u32), u64>,
) {
    let n = verts.len();
    if n < 2 {
        return; // the singleton is seeded directly
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if adjacent(&cells[verts[i]], &cells[verts[j]]) {
                edges.push((i, j));
            }
        }
    }
    if edges.len() < n - 1 {
        return;
    }
    // quick reject: the induced graph itself must be connected
    if !connected_all(n, &edges) {
        return;
    }
    match model {
        OracleModel::Trees => {
            let mut count = 0u64;
            let m = edges.len();
            let mut chosen: Vec<usize> = (0..n - 1).collect();
            loop {
                let subset: Vec<(usize, usize)> = chosen.iter().map(|&i| edges[i]).collect();
                if spans_and_connected(n, &subset) {
                    count += 1;
                }
                if !next_combination(&mut chosen, m) {
                    break;
                }
            }
            if count > 0 {
                *counts.entry((n as u32, (n - 1) as u32)).or_insert(0) += count;
            }
        }
        OracleModel::Animals => {
            let m = edges.len();
            for mask in 1u32..(1 << m) {
                let subset: Vec<(usize, usize)> = (0..m)
                    .filter(|&i| mask & (1 << i) != 0)
                    .map(|i| edges[i])
                    .collect();
                if spans_and_connected(n, &subset) {
                    *counts.entry((n as u32, subset.len() as u32)).or_insert(0) += 1;
                }
            }
        }
    }
}

fn next_combination(chosen: &mut [usize], m: usize) -> bool {
    let k = chosen.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if chosen[i] < m - (k - i) {
            chosen[i] += 1;
            for j in i + 1..k {
                chosen[j] = chosen[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn connected_all(n: usize, edges: &[(usize, usize)]) -> bool {
    spans_and_connected(
        n, edges, // full induced graph; spanning is implied when connected
    )
}

/// Do the edges touch every vertex `0..n` and form one component?
fn spans_and_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 1 {
        return edges.is_empty();
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut touched = vec![false; n];
    let mut components = n;
    for &(a, b) in edges {
        touched[a] = true;
        touched[b] = true;
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    touched.into_iter().all(|t| t) && components == 1
}

/// Interval closed forms for the one-dimensional nearest-neighbour model.
pub mod interval {
    use super::*;

    /// Number of n-vertex trees containing the origin: the intervals.
    pub fn tree_count(n: u64) -> u64 {
        n
    }

    /// `p^k` coefficient of the one-point function: `(k+1)/2^k`.
    pub fn g_coeff(k: usize) -> BigRational {
        BigRational::new(
            BigInt::from((k + 1) as u64),
            BigInt::from(2u64).pow(k as u32),
        )
    }

    /// `p^k` coefficient of the susceptibility: `(k+1)²/2^k`.
    pub fn chi_coeff(k: usize) -> BigRational {
        BigRational::new(
            BigInt::from(((k + 1) * (k + 1)) as u64),
            BigInt::from(2u64).pow(k as u32),
        )
    }

    /// `p^k` coefficient of the two-point function to `x`: `(k−|x|+1)⁺/2^k`.
    pub fn tau_coeff(x: i64, k: usize) -> BigRational {
        let reach = x.unsigned_abs() as usize;
        if k < reach {
            return BigRational::zero();
        }
        BigRational::new(
            BigInt::from((k - reach + 1) as u64),
            BigInt::from(2u64).pow(k as u32),
        )
    }

    /// The exact fixed point of `p·g(p) = 1` for the full series.
    pub fn p1_exact() -> f64 {
        4.0 - 2.0 * 3.0f64.sqrt()
    }

    /// Radius of convergence of the susceptibility.
    pub fn pc_exact() -> f64 {
        2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn recursion_matches_known_centres() {
        assert_eq!(uniform_sum_center_by_recursion(1), rat(1, 1));
        assert_eq!(uniform_sum_center_by_recursion(2), rat(1, 1));
        assert_eq!(uniform_sum_center_by_recursion(3), rat(3, 4));
        assert_eq!(uniform_sum_center_by_recursion(4), rat(2, 3));
    }

    #[test]
    fn recursion_total_mass_is_one() {
        // integrate f_5 over its support piece by piece; pieces carry
        // integer coefficients over 4!
        let mut pieces: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for m in 1..5 {
            pieces = convolve_with_uniform(&pieces, m);
        }
        let denom = BigRational::from_integer(BigInt::from(24));
        let mut total = BigRational::zero();
        for (j, piece) in pieces.iter().enumerate() {
            // exact antiderivative of the rational-valued piece
            for (k, c) in piece.iter().enumerate() {
                let coeff = BigRational::new(c.clone(), BigInt::from((k + 1) as u64)) / &denom;
                let hi = BigInt::from((j + 1) as u64).pow(k as u32 + 1);
                let lo = BigInt::from(j as u64).pow(k as u32 + 1);
                total += coeff * BigRational::from_integer(hi - lo);
            }
        }
        assert_eq!(total, BigRational::one());
    }

    #[test]
    fn window_oracle_interval_counts() {
        let counts = census_oracle(OracleModel::Trees, 1, 1, 5);
        for n in 1..=5u32 {
            assert_eq!(counts.get(&(n, n - 1)).copied().unwrap_or(0), n as u64);
        }
        // on the line animals are the trees
        let animals = census_oracle(OracleModel::Animals, 1, 1, 5);
        assert_eq!(counts, animals);
    }

    #[test]
    fn window_oracle_king_lattice_basics() {
        let trees = census_oracle(OracleModel::Trees, 2, 1, 3);
        assert_eq!(trees.get(&(2, 1)).copied().unwrap(), 8);
        let animals = census_oracle(OracleModel::Animals, 2, 1, 3);
        // triangles through the origin exist
        assert!(animals.get(&(3, 3)).copied().unwrap_or(0) > 0);
        // two-edge animals on three vertices are exactly the trees
        assert_eq!(animals.get(&(3, 2)), trees.get(&(3, 2)));
    }
}
