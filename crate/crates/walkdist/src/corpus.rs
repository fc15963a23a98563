//! Seeded random graphs and digraphs for property tests and verification
//! corpora.
//!
//! Everything here is deterministic in the seed. The digraph generator
//! additionally enforces two bounds that make exhaustive circuit enumeration
//! feasible and truncated expansions provably accurate: the total walk tree
//! explored up to the target depth stays small, and the weights are rescaled
//! so the entrywise-magnitude adjacency has spectral radius at most 1/2.

use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedDigraph, WeightedMultigraph};
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic generator for a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Vertex count and endpoint pairs of a random connected multigraph: a
/// random spanning tree plus a few extra chords, parallels, and loops.
fn random_connected_shape(
    rng: &mut ChaCha8Rng,
    min_n: usize,
    max_n: usize,
) -> (usize, Vec<(usize, usize)>) {
    assert!(1 <= min_n && min_n <= max_n);
    let n = rng.random_range(min_n..=max_n);
    let mut ends = Vec::new();
    for v in 2..=n {
        let u = rng.random_range(1..v);
        ends.push((u, v));
    }
    let extras = rng.random_range(0..=n.max(2));
    for _ in 0..extras {
        let u = rng.random_range(1..=n);
        let v = rng.random_range(1..=n);
        ends.push((u.min(v), u.max(v)));
    }
    (n, ends)
}

/// Random connected multigraph with float weights in [0.2, 2].
pub fn random_connected_multigraph(
    rng: &mut ChaCha8Rng,
    min_n: usize,
    max_n: usize,
) -> Result<WeightedMultigraph<f64>> {
    let (n, ends) = random_connected_shape(rng, min_n, max_n);
    let edges: Vec<(usize, usize, f64)> = ends
        .into_iter()
        .map(|(u, v)| (u, v, rng.random_range(0.2..=2.0)))
        .collect();
    WeightedMultigraph::new(n, &edges)
}

/// Random connected multigraph with small positive rational weights.
pub fn random_connected_multigraph_rational(
    rng: &mut ChaCha8Rng,
    min_n: usize,
    max_n: usize,
) -> Result<WeightedMultigraph<BigRational>> {
    let (n, ends) = random_connected_shape(rng, min_n, max_n);
    let edges: Vec<(usize, usize, BigRational)> = ends
        .into_iter()
        .map(|(u, v)| {
            let p = rng.random_range(1..=8i64);
            let q = rng.random_range(1..=4i64);
            (u, v, BigRational::from_ratio(p, q))
        })
        .collect();
    WeightedMultigraph::new(n, &edges)
}

/// A parameter strictly inside the convergence range: half the critical
/// value, or 1/2 for an edgeless spectral radius of zero.
pub fn safe_parameter(g: &WeightedMultigraph<f64>) -> Result<f64> {
    let rho = g.adjacency().spectral_radius_default()?;
    Ok(if rho > 0.0 { 0.5 / rho } else { 0.5 })
}

/// Rational counterpart of [`safe_parameter`]: the largest multiple of 1/256
/// not exceeding half the critical value (requires rho < 128).
pub fn safe_parameter_rational(g: &WeightedMultigraph<BigRational>) -> Result<BigRational> {
    let rho = g.adjacency().to_f64().spectral_radius_default()?;
    let raw = if rho > 0.0 { 0.5 / rho } else { 0.5 };
    let num = (raw * 256.0).floor() as i64;
    if num < 1 {
        return Err(Error::InvalidParameter(format!(
            "spectral radius {} too large for a rational parameter grid",
            rho
        )));
    }
    Ok(BigRational::from_ratio(num, 256))
}

/// Number of tree nodes a depth-first enumeration of all walks up to the
/// given length may touch: sum over lengths of all (not only closed) walk
/// counts, plus the roots.
fn walk_tree_size(d: &WeightedDigraph<BigRational>, depth: usize) -> f64 {
    let n = d.vertex_count();
    let mut counts: DenseMatrix<f64> = DenseMatrix::zero(n, n);
    for a in d.arcs() {
        let t = d.index_of(a.tail).expect("arc tail in digraph");
        let h = d.index_of(a.head).expect("arc head in digraph");
        counts.set(t, h, counts.get(t, h) + 1.0);
    }
    let mut total = n as f64;
    let mut power = DenseMatrix::identity(n);
    for _ in 0..depth {
        power = power.mul(&counts);
        for r in 0..n {
            for c in 0..n {
                total += power.get(r, c);
            }
        }
    }
    total
}

/// Sums |w| over parallel arcs: an entrywise majorant of the adjacency.
fn magnitude_adjacency(d: &WeightedDigraph<BigRational>) -> DenseMatrix<f64> {
    let n = d.vertex_count();
    let mut m = DenseMatrix::zero(n, n);
    for a in d.arcs() {
        let t = d.index_of(a.tail).expect("arc tail in digraph");
        let h = d.index_of(a.head).expect("arc head in digraph");
        m.set(t, h, m.get(t, h) + a.weight.to_f64().abs());
    }
    m
}

fn with_scaled_arcs(
    d: &WeightedDigraph<BigRational>,
    s: &BigRational,
) -> Result<WeightedDigraph<BigRational>> {
    let arcs: Vec<(VertexId, VertexId, BigRational)> = d
        .arcs()
        .iter()
        .map(|a| (a.tail, a.head, a.weight.clone() * s.clone()))
        .collect();
    WeightedDigraph::new(d.vertices().to_vec(), &arcs)
}

/// Random small digraph with mixed-sign rational arc weights, resampled
/// until exhaustive enumeration up to `depth` touches at most `max_tree`
/// walk-tree nodes, then rescaled so the magnitude adjacency has spectral
/// radius at most 1/2.
pub fn random_expansion_digraph(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    depth: usize,
    max_tree: f64,
) -> Result<WeightedDigraph<BigRational>> {
    loop {
        let n = rng.random_range(1..=max_n);
        let m = rng.random_range(1..=(n + 2).min(6));
        let mut arcs = Vec::with_capacity(m);
        for _ in 0..m {
            let tail = VertexId(rng.random_range(1..=n));
            let head = VertexId(rng.random_range(1..=n));
            let p = rng.random_range(1..=6i64);
            let q = rng.random_range(1..=4i64);
            let sign = if rng.random_bool(0.4) { -1 } else { 1 };
            arcs.push((tail, head, BigRational::from_ratio(sign * p, q)));
        }
        let vertices: Vec<VertexId> = (1..=n).map(VertexId).collect();
        let d = WeightedDigraph::new(vertices, &arcs)?;
        if walk_tree_size(&d, depth) > max_tree {
            continue;
        }
        let rho = magnitude_adjacency(&d).spectral_radius_default()?;
        if rho <= 0.5 {
            return Ok(d);
        }
        let num = (0.4995 / rho * 1024.0).floor() as i64;
        if num < 1 {
            continue;
        }
        let scaled = with_scaled_arcs(&d, &BigRational::from_ratio(num, 1024))?;
        let rho_after = magnitude_adjacency(&scaled).spectral_radius_default()?;
        if rho_after > 0.5 + 1e-9 {
            return Err(Error::InternalConsistency(format!(
                "rescaled digraph kept spectral radius {}",
                rho_after
            )));
        }
        return Ok(scaled);
    }
}
