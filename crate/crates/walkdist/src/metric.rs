//! Walk weights and the walk distance.
//!
//! For a connected graph with adjacency A and 0 < t < 1/rho(A), the walk
//! weight matrix R = (I - tA)^{-1} = sum_k (tA)^k collects the weights of all
//! walks between vertex pairs. With H = entrywise ln R, the quantity
//! d(i,j) = (h_ii + h_jj - h_ij - h_ji) / 2 is a metric; the related
//! similarity d'(i,j) = 1 - r_ij / sqrt(r_ii r_jj) satisfies the
//! multiplicative (correlation-style) triangle inequality. Both degenerate
//! cases of the triangle inequalities pick out exactly the vertex triples
//! (i, j, k) where every simple path from i to k passes through j.

use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedMultigraph};
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;
use crate::DEFAULT_PATH_GUARD;

/// Walk weight matrix R = (I - tA)^{-1} together with its inputs.
#[derive(Debug, Clone)]
pub struct WalkWeights<S> {
    graph: WeightedMultigraph<S>,
    t: S,
    rho: f64,
    r: DenseMatrix<S>,
}

impl<S: Scalar> WalkWeights<S> {
    /// Source graph.
    pub fn graph(&self) -> &WeightedMultigraph<S> {
        &self.graph
    }

    /// Walk parameter t.
    pub fn t(&self) -> &S {
        &self.t
    }

    /// Spectral radius of the adjacency matrix (computed in floating point).
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// The matrix R in dense vertex order.
    pub fn matrix(&self) -> &DenseMatrix<S> {
        &self.r
    }

    /// Entry of R for a pair of vertex ids.
    pub fn weight(&self, i: VertexId, j: VertexId) -> Result<&S> {
        let a = self.graph.index_of(i)?;
        let b = self.graph.index_of(j)?;
        Ok(self.r.get(a, b))
    }
}

/// Computes the walk weight matrix R = (I - tA)^{-1}.
///
/// The graph must be connected and t must lie in (0, 1/rho(A)), the open
/// interval on which the walk series converges.
pub fn walk_weights<S: Scalar>(g: &WeightedMultigraph<S>, t: &S) -> Result<WalkWeights<S>> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let a = g.adjacency();
    let rho = a.to_f64().spectral_radius_default()?;
    let tf = t.to_f64();
    if !(tf > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "walk parameter t = {} must be positive",
            t
        )));
    }
    if rho > 0.0 && tf * rho >= 1.0 {
        return Err(Error::ParameterOutOfRange {
            t: tf,
            rho,
            bound: 1.0 / rho,
        });
    }
    let mut ta = a;
    ta.scale_in_place(t);
    let b = DenseMatrix::identity(g.vertex_count()).sub(&ta);
    let r = b.inverse()?;
    Ok(WalkWeights {
        graph: g.clone(),
        t: t.clone(),
        rho,
        r,
    })
}

/// Truncated walk series sum_{k=0}^{K} (tA)^k, the direct oracle for R.
pub fn walk_weights_series<S: Scalar>(
    g: &WeightedMultigraph<S>,
    t: &S,
    depth: usize,
) -> DenseMatrix<S> {
    let mut ta = g.adjacency();
    ta.scale_in_place(t);
    let n = g.vertex_count();
    // Horner form: I + tA (I + tA (...)) gives sum_{k<=depth} (tA)^k.
    let mut acc = DenseMatrix::identity(n);
    for _ in 0..depth {
        acc = DenseMatrix::identity(n).add(&ta.mul(&acc));
    }
    acc
}

/// Walk distance matrix with its scale and vertex labels.
#[derive(Debug, Clone)]
pub struct WalkDistances {
    d: DenseMatrix<f64>,
    lambda: f64,
    vertices: Vec<VertexId>,
}

impl WalkDistances {
    /// The distance matrix in dense vertex order.
    pub fn matrix(&self) -> &DenseMatrix<f64> {
        &self.d
    }

    /// Scale factor the distances were multiplied by.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Vertex ids in dense order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Distance between two vertex ids.
    pub fn distance(&self, i: VertexId, j: VertexId) -> Result<f64> {
        let a = index_of(&self.vertices, i)?;
        let b = index_of(&self.vertices, j)?;
        Ok(*self.d.get(a, b))
    }
}

fn index_of(vertices: &[VertexId], v: VertexId) -> Result<usize> {
    vertices
        .binary_search(&v)
        .map_err(|_| Error::InvalidParameter(format!("vertex {} is not in the graph", v)))
}

/// Walk distances d(i,j) = lambda (h_ii + h_jj - h_ij - h_ji) / 2 with
/// H = entrywise ln R.
pub fn walk_distances<S: Scalar>(w: &WalkWeights<S>, lambda: f64) -> Result<WalkDistances> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "scale lambda = {} must be positive",
            lambda
        )));
    }
    let r = w.matrix().to_f64();
    let n = r.row_count();
    let mut h = DenseMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = *r.get(i, j);
            if !(v > 0.0) {
                return Err(Error::InternalConsistency(format!(
                    "walk weight r[{},{}] = {} is not positive",
                    i, j, v
                )));
            }
            h.set(i, j, v.ln());
        }
    }
    let mut d = DenseMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let v = 0.5 * (h.get(i, i) + h.get(j, j) - h.get(i, j) - h.get(j, i));
            d.set(i, j, lambda * v);
        }
    }
    Ok(WalkDistances {
        d,
        lambda,
        vertices: w.graph().vertices().to_vec(),
    })
}

/// The bounded sibling of the walk distance:
/// d'(i,j) = 1 - r_ij / sqrt(r_ii r_jj), in [0, 1), with d' = 1 - e^{-d}.
pub fn p_metric<S: Scalar>(w: &WalkWeights<S>) -> DenseMatrix<f64> {
    let r = w.matrix().to_f64();
    let n = r.row_count();
    let mut p = DenseMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let v = 1.0 - r.get(i, j) / (r.get(i, i) * r.get(j, j)).sqrt();
            p.set(i, j, v);
        }
    }
    p
}

/// Result of checking the basic metric axioms on a distance matrix.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MetricAxiomsReport {
    /// Largest |d_ij - d_ji|.
    pub max_symmetry_gap: f64,
    /// Largest |d_ii|.
    pub max_diagonal: f64,
    /// Smallest off-diagonal entry (must be positive for distinct vertices).
    pub min_off_diagonal: f64,
    /// Largest d_ik - (d_ij + d_jk) over all triples (positive = violation).
    pub max_triangle_violation: f64,
    /// True if every axiom holds within the tolerance used.
    pub ok: bool,
}

/// Checks symmetry, vanishing diagonal, positivity off the diagonal, and the
/// triangle inequality. `tol` is an absolute slack scaled by the largest
/// entry magnitude.
pub fn metric_axioms(d: &DenseMatrix<f64>, tol: f64) -> MetricAxiomsReport {
    let n = d.row_count();
    let scale = d.max_abs().max(1.0);
    let mut sym: f64 = 0.0;
    let mut diag: f64 = 0.0;
    let mut min_off = f64::INFINITY;
    let mut tri: f64 = f64::NEG_INFINITY;
    for i in 0..n {
        diag = diag.max(d.get(i, i).abs());
        for j in 0..n {
            if i != j {
                sym = sym.max((d.get(i, j) - d.get(j, i)).abs());
                min_off = min_off.min(*d.get(i, j));
            }
            for k in 0..n {
                tri = tri.max(d.get(i, k) - (d.get(i, j) + d.get(j, k)));
            }
        }
    }
    if n <= 1 {
        min_off = f64::INFINITY;
        tri = 0.0;
    }
    let ok = sym <= tol * scale
        && diag <= tol * scale
        && (n <= 1 || min_off > tol * scale)
        && tri <= tol * scale;
    MetricAxiomsReport {
        max_symmetry_gap: sym,
        max_diagonal: diag,
        min_off_diagonal: min_off,
        max_triangle_violation: tri,
        ok,
    }
}

/// One vertex triple with the two sides of an inequality.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TripleCase {
    pub i: VertexId,
    pub j: VertexId,
    pub k: VertexId,
    pub lhs: f64,
    pub rhs: f64,
    /// True if every simple path from i to k passes through j.
    pub separator: bool,
}

/// Outcome of the walk-weight transition inequality check.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TransitionReport {
    /// Number of triples examined.
    pub checked: usize,
    /// Triples where r_ij r_jk exceeded r_ik r_jj beyond tolerance.
    pub violations: Vec<TripleCase>,
    /// Triples attaining equality within tolerance (listed once, i <= k).
    pub equalities: Vec<TripleCase>,
    /// True if every equality triple has the path-separator property and no
    /// inequality is violated.
    pub ok: bool,
}

/// Checks r_ij r_jk <= r_ik r_jj over all triples with j distinct from i and
/// k, reports the equality cases, and confirms each equality coincides with
/// "every simple path from i to k passes through j".
pub fn transition_check(w: &WalkWeights<f64>, tol: f64) -> Result<TransitionReport> {
    let g = w.graph();
    let n = g.vertex_count();
    guard_path_enumeration(n)?;
    let r = w.matrix();
    let scale = r.max_abs().max(1.0);
    let slack = tol * scale * scale;
    let ids = g.vertices();
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut equalities = Vec::new();
    let mut ok = true;
    for a in 0..n {
        for b in 0..n {
            if b == a {
                continue;
            }
            for c in 0..n {
                if c == b {
                    continue;
                }
                checked += 1;
                let lhs = r.get(a, b) * r.get(b, c);
                let rhs = r.get(a, c) * r.get(b, b);
                let case = |separator| TripleCase {
                    i: ids[a],
                    j: ids[b],
                    k: ids[c],
                    lhs,
                    rhs,
                    separator,
                };
                if lhs > rhs + slack {
                    ok = false;
                    violations.push(case(false));
                } else if (lhs - rhs).abs() <= slack && a <= c {
                    let separator = is_separator(g, ids[a], ids[b], ids[c]);
                    if !separator {
                        ok = false;
                    }
                    equalities.push(case(separator));
                }
            }
        }
    }
    Ok(TransitionReport {
        checked,
        violations,
        equalities,
        ok,
    })
}

/// Outcome of the geodetic (distance additivity) check.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GeodeticReport {
    /// Number of triples examined.
    pub checked: usize,
    /// Triples where additivity and the path-separator property disagree.
    pub mismatches: Vec<TripleCase>,
    /// Triples with d_ij + d_jk = d_ik within tolerance (listed once, i <= k).
    pub equalities: Vec<TripleCase>,
    /// True if additivity and the separator property coincide on every triple.
    pub ok: bool,
}

/// Checks that d(i,j) + d(j,k) = d(i,k) holds exactly for the triples where
/// every simple path from i to k passes through j, and strictly fails
/// otherwise. Equality is read at `tol` relative to the triple's magnitude.
pub fn geodetic_check(w: &WalkWeights<f64>, tol: f64) -> Result<GeodeticReport> {
    let g = w.graph();
    let n = g.vertex_count();
    guard_path_enumeration(n)?;
    let dist = walk_distances(w, 1.0)?;
    let d = dist.matrix();
    let ids = g.vertices();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    let mut equalities = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if b == a {
                continue;
            }
            for c in 0..n {
                if c == b {
                    continue;
                }
                checked += 1;
                let lhs = d.get(a, b) + d.get(b, c);
                let rhs = *d.get(a, c);
                let scale = lhs.abs().max(rhs.abs()).max(1.0);
                let additive = (lhs - rhs).abs() <= tol * scale;
                let separator = is_separator(g, ids[a], ids[b], ids[c]);
                let case = TripleCase {
                    i: ids[a],
                    j: ids[b],
                    k: ids[c],
                    lhs,
                    rhs,
                    separator,
                };
                if additive != separator {
                    mismatches.push(case.clone());
                }
                if additive && a <= c {
                    equalities.push(case);
                }
            }
        }
    }
    let ok = mismatches.is_empty();
    Ok(GeodeticReport {
        checked,
        mismatches,
        equalities,
        ok,
    })
}

fn guard_path_enumeration(n: usize) -> Result<()> {
    if n > DEFAULT_PATH_GUARD {
        return Err(Error::TooLargeForExhaustiveCheck {
            n,
            max: DEFAULT_PATH_GUARD,
        });
    }
    Ok(())
}

/// True if every simple path from i to k passes through j. For i == k the
/// only path is the trivial one, which visits nobody else.
fn is_separator<S: Scalar>(
    g: &WeightedMultigraph<S>,
    i: VertexId,
    j: VertexId,
    k: VertexId,
) -> bool {
    if i == k {
        return j == i;
    }
    !simple_paths_avoiding(g, i, k, Some(j))
}

/// All vertex-simple paths from `from` to `to`, as vertex sequences. Parallel
/// edges do not multiply paths; only the vertex trace matters here.
pub fn simple_paths<S: Scalar>(
    g: &WeightedMultigraph<S>,
    from: VertexId,
    to: VertexId,
) -> Result<Vec<Vec<VertexId>>> {
    guard_path_enumeration(g.vertex_count())?;
    let start = g.index_of(from)?;
    let goal = g.index_of(to)?;
    let neighbors = neighbor_table(g);
    let mut paths = Vec::new();
    let mut stack = vec![start];
    let mut visited = vec![false; g.vertex_count()];
    visited[start] = true;
    collect_paths(&neighbors, goal, &mut stack, &mut visited, &mut |p| {
        paths.push(p.iter().map(|&x| g.vertices()[x]).collect());
    });
    Ok(paths)
}

/// True if some simple path from `from` to `to` avoids the vertex `avoid`.
fn simple_paths_avoiding<S: Scalar>(
    g: &WeightedMultigraph<S>,
    from: VertexId,
    to: VertexId,
    avoid: Option<VertexId>,
) -> bool {
    let start = g.index_of(from).expect("vertex present");
    let goal = g.index_of(to).expect("vertex present");
    if let Some(a) = avoid {
        if a == from || a == to {
            return false;
        }
    }
    // Reachability with the avoided vertex removed is enough: a simple path
    // avoiding j exists iff i and k are connected in the graph minus j.
    let blocked = avoid.map(|a| g.index_of(a).expect("vertex present"));
    let neighbors = neighbor_table(g);
    let mut seen = vec![false; g.vertex_count()];
    if Some(start) == blocked {
        return false;
    }
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(x) = stack.pop() {
        if x == goal {
            return true;
        }
        for &y in &neighbors[x] {
            if !seen[y] && Some(y) != blocked {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    false
}

fn neighbor_table<S: Scalar>(g: &WeightedMultigraph<S>) -> Vec<Vec<usize>> {
    let mut nb = vec![Vec::new(); g.vertex_count()];
    for (i, row) in g.incidence_table().into_iter().enumerate() {
        let mut ns: Vec<usize> = row.into_iter().map(|(_, j)| j).filter(|&j| j != i).collect();
        ns.sort_unstable();
        ns.dedup();
        nb[i] = ns;
    }
    nb
}

fn collect_paths(
    neighbors: &[Vec<usize>],
    goal: usize,
    stack: &mut Vec<usize>,
    visited: &mut [bool],
    emit: &mut impl FnMut(&[usize]),
) {
    let here = *stack.last().expect("non-empty path");
    if here == goal {
        // A simple path ends on first arrival: extending past the goal and
        // coming back would revisit it.
        emit(stack);
        return;
    }
    for &next in &neighbors[here] {
        if visited[next] {
            continue;
        }
        visited[next] = true;
        stack.push(next);
        collect_paths(neighbors, goal, stack, visited, emit);
        stack.pop();
        visited[next] = false;
    }
}

/// Walk distance from determinants of minors of B = I - tA:
/// d(i,j) = (ln det B without i + ln det B without j
///           - ln C_ij - ln C_ji) / 2,
/// where C_ij = (-1)^{i+j} det (B without row i, column j) is the cofactor,
/// guaranteed positive for valid t.
pub fn cofactor_distance<S: Scalar>(
    g: &WeightedMultigraph<S>,
    t: &S,
    i: VertexId,
    j: VertexId,
) -> Result<f64> {
    if i == j {
        return Err(Error::InvalidParameter(
            "cofactor distance needs two distinct vertices".into(),
        ));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let a = g.adjacency();
    let rho = a.to_f64().spectral_radius_default()?;
    let tf = t.to_f64();
    if !(tf > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "walk parameter t = {} must be positive",
            t
        )));
    }
    if rho > 0.0 && tf * rho >= 1.0 {
        return Err(Error::ParameterOutOfRange {
            t: tf,
            rho,
            bound: 1.0 / rho,
        });
    }
    let mut ta = a;
    ta.scale_in_place(t);
    let b = DenseMatrix::identity(g.vertex_count()).sub(&ta);
    let bi = g.index_of(i)?;
    let bj = g.index_of(j)?;
    let ln_minor = |r: usize, c: usize| -> Result<f64> {
        let det = b.minor_without(r, c).determinant().to_f64();
        let signed = if (r + c) % 2 == 0 { det } else { -det };
        if !(signed > 0.0) {
            return Err(Error::InternalConsistency(format!(
                "cofactor for rows/cols ({}, {}) is {}, expected positive",
                r, c, signed
            )));
        }
        Ok(signed.ln())
    };
    Ok(0.5 * (ln_minor(bi, bi)? + ln_minor(bj, bj)? - ln_minor(bi, bj)? - ln_minor(bj, bi)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use approx::assert_relative_eq;
    use num_rational::BigRational;

    fn example_graph() -> WeightedMultigraph<f64> {
        WeightedMultigraph::new(3, &[(1, 2, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap()
    }

    fn example_weights() -> WalkWeights<f64> {
        walk_weights(&example_graph(), &(1.0 / 3.0)).unwrap()
    }

    #[test]
    fn example_walk_weights() {
        let w = example_weights();
        let expect = DenseMatrix::from_rows(vec![
            vec![2.0, 1.5, 0.5],
            vec![1.5, 2.25, 0.75],
            vec![0.5, 0.75, 1.25],
        ]);
        assert!(w.matrix().max_abs_diff(&expect) < 1e-13);
        assert_relative_eq!(w.rho(), 5f64.sqrt(), epsilon = 1e-10);
    }

    #[test]
    fn example_walk_weights_exact() {
        let g = WeightedMultigraph::new(
            3,
            &[(1, 2, int::<BigRational>(1)), (1, 2, int(1)), (2, 3, int(1))],
        )
        .unwrap();
        let w = walk_weights(&g, &BigRational::from_ratio(1, 3)).unwrap();
        assert_eq!(*w.weight(VertexId(1), VertexId(1)).unwrap(), int(2));
        assert_eq!(
            *w.weight(VertexId(1), VertexId(3)).unwrap(),
            BigRational::from_ratio(1, 2)
        );
        assert_eq!(
            *w.weight(VertexId(2), VertexId(2)).unwrap(),
            BigRational::from_ratio(9, 4)
        );
    }

    #[test]
    fn series_is_an_oracle_for_the_inverse() {
        let w = example_weights();
        let series = walk_weights_series(&example_graph(), &(1.0 / 3.0), 200);
        assert!(w.matrix().max_abs_diff(&series) < 1e-12);
    }

    #[test]
    fn example_distances() {
        let d = walk_distances(&example_weights(), 1.0).unwrap();
        let half = 0.5;
        assert_relative_eq!(
            d.distance(VertexId(1), VertexId(2)).unwrap(),
            half * 2f64.ln(),
            epsilon = 1e-13
        );
        assert_relative_eq!(
            d.distance(VertexId(2), VertexId(3)).unwrap(),
            half * 5f64.ln(),
            epsilon = 1e-13
        );
        assert_relative_eq!(
            d.distance(VertexId(1), VertexId(3)).unwrap(),
            half * 10f64.ln(),
            epsilon = 1e-13
        );
        assert_eq!(d.distance(VertexId(1), VertexId(1)).unwrap(), 0.0);
    }

    #[test]
    fn lambda_scales_distances() {
        let w = example_weights();
        let d1 = walk_distances(&w, 1.0).unwrap();
        let d3 = walk_distances(&w, 3.0).unwrap();
        assert_relative_eq!(
            d3.distance(VertexId(1), VertexId(3)).unwrap(),
            3.0 * d1.distance(VertexId(1), VertexId(3)).unwrap(),
            epsilon = 1e-13
        );
    }

    #[test]
    fn example_p_metric() {
        let p = p_metric(&example_weights());
        assert_relative_eq!(*p.get(0, 1), 1.0 - 0.5f64.sqrt(), epsilon = 1e-13);
        assert_relative_eq!(*p.get(1, 2), 1.0 - 0.2f64.sqrt(), epsilon = 1e-13);
        assert_relative_eq!(*p.get(0, 2), 1.0 - 0.1f64.sqrt(), epsilon = 1e-13);
    }

    #[test]
    fn p_metric_is_the_exponential_transform_of_d() {
        let w = example_weights();
        let d = walk_distances(&w, 1.0).unwrap();
        let p = p_metric(&w);
        for i in 0..3 {
            for j in 0..3 {
                let expect = 1.0 - (-d.matrix().get(i, j)).exp();
                assert_relative_eq!(*p.get(i, j), expect, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn axioms_hold_on_the_example() {
        let d = walk_distances(&example_weights(), 1.0).unwrap();
        let report = metric_axioms(d.matrix(), 1e-12);
        assert!(report.ok, "{report:?}");
        // The triangle inequality is tight: equality on (1, 2, 3).
        assert!(report.max_triangle_violation.abs() < 1e-13);
    }

    #[test]
    fn transition_equalities_match_separators() {
        let w = example_weights();
        let report = transition_check(&w, 1e-9).unwrap();
        assert!(report.ok, "{report:?}");
        assert!(report.violations.is_empty());
        assert_eq!(report.equalities.len(), 1);
        let eq = &report.equalities[0];
        assert_eq!((eq.i, eq.j, eq.k), (VertexId(1), VertexId(2), VertexId(3)));
        assert!(eq.separator);
    }

    #[test]
    fn triangle_graph_has_no_equalities() {
        let g = WeightedMultigraph::new(3, &[(1, 2, 1.0), (2, 3, 1.0), (1, 3, 1.0)]).unwrap();
        let w = walk_weights(&g, &0.25).unwrap();
        let report = transition_check(&w, 1e-9).unwrap();
        assert!(report.ok);
        assert!(report.equalities.is_empty());
        let geo = geodetic_check(&w, 1e-9).unwrap();
        assert!(geo.ok, "{geo:?}");
        assert!(geo.equalities.is_empty());
    }

    #[test]
    fn geodetic_iff_holds_on_the_example() {
        let report = geodetic_check(&example_weights(), 1e-9).unwrap();
        assert!(report.ok, "{report:?}");
        assert_eq!(report.equalities.len(), 1);
        let eq = &report.equalities[0];
        assert_eq!((eq.i, eq.j, eq.k), (VertexId(1), VertexId(2), VertexId(3)));
    }

    #[test]
    fn simple_path_enumeration() {
        let g = example_graph();
        let paths = simple_paths(&g, VertexId(1), VertexId(3)).unwrap();
        assert_eq!(paths, vec![vec![VertexId(1), VertexId(2), VertexId(3)]]);
        let g = WeightedMultigraph::new(3, &[(1, 2, 1.0), (2, 3, 1.0), (1, 3, 1.0)]).unwrap();
        let mut paths = simple_paths(&g, VertexId(1), VertexId(3)).unwrap();
        paths.sort();
        assert_eq!(
            paths,
            vec![
                vec![VertexId(1), VertexId(2), VertexId(3)],
                vec![VertexId(1), VertexId(3)],
            ]
        );
    }

    #[test]
    fn cofactor_distance_matches_log_ratio() {
        let g = example_graph();
        let t = 1.0 / 3.0;
        let d = walk_distances(&walk_weights(&g, &t).unwrap(), 1.0).unwrap();
        for &(i, j) in &[(1, 2), (1, 3), (2, 3)] {
            let via_cofactor = cofactor_distance(&g, &t, VertexId(i), VertexId(j)).unwrap();
            let direct = d.distance(VertexId(i), VertexId(j)).unwrap();
            assert_relative_eq!(via_cofactor, direct, epsilon = 1e-12);
        }
    }

    #[test]
    fn parameter_validation() {
        let g = example_graph();
        assert!(matches!(
            walk_weights(&g, &0.5),
            Err(Error::ParameterOutOfRange { .. })
        ));
        assert!(matches!(
            walk_weights(&g, &0.0),
            Err(Error::InvalidParameter(_))
        ));
        let edgeless = WeightedMultigraph::<f64>::new(3, &[]).unwrap();
        assert!(matches!(
            walk_weights(&edgeless, &0.1),
            Err(Error::NotConnected)
        ));
        let k2 = WeightedMultigraph::new(2, &[(1, 2, 1.0)]).unwrap();
        assert!(walk_weights(&k2, &0.5).is_ok());
    }

    #[test]
    fn loop_graph_is_supported() {
        let g = WeightedMultigraph::new(2, &[(1, 2, 1.0), (1, 1, 0.4)]).unwrap();
        let w = walk_weights(&g, &0.5).unwrap();
        let d = walk_distances(&w, 1.0).unwrap();
        assert!(d.distance(VertexId(1), VertexId(2)).unwrap() > 0.0);
        let report = metric_axioms(d.matrix(), 1e-12);
        assert!(report.ok);
    }
}
