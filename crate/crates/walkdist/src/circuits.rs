//! Closed walks, circuits, and the circuit expansion of the log-determinant.
//!
//! A circuit is an equivalence class of closed walks under cyclic rotation of
//! the arc sequence (phase twins). A circuit of length k whose arc sequence
//! has smallest period p contains p distinct walks and has multiplicity
//! mu = k / p. Per length, circuits satisfy
//!
//! ```text
//! sum over circuits of length k of  w(c) / mu(c)  =  tr(A^k) / k
//! ```
//!
//! where A is the (summed) adjacency matrix, and when rho(A) < 1 the totals
//! accumulate to -ln det(I - A). The same determinant is reached by the
//! product of (1 - w(c)) over non-periodic circuits (mu = 1). Per-length
//! grouping is part of the contract: with mixed-sign arc weights the series
//! converges only conditionally, so terms are never reordered across lengths.

use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedDigraph, WeightedMultigraph};
use crate::scalar::{int, Scalar};
use crate::{DEFAULT_DEPTH_CAP, DEFAULT_TOL};

use std::collections::HashMap;

/// Closed walk in a multidigraph, stored as positions into the arc list.
/// The start vertex is the tail of the first arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedWalk {
    pub arcs: Vec<usize>,
}

impl ClosedWalk {
    /// Number of arcs.
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Product of the arc weights.
    pub fn weight<S: Scalar>(&self, d: &WeightedDigraph<S>) -> S {
        let mut w = S::one();
        for &pos in &self.arcs {
            w = w * d.arcs()[pos].weight.clone();
        }
        w
    }

    /// Vertices visited, one per arc (each arc contributes its tail).
    pub fn vertex_cycle<S: Scalar>(&self, d: &WeightedDigraph<S>) -> Vec<VertexId> {
        self.arcs.iter().map(|&pos| d.arcs()[pos].tail).collect()
    }
}

/// Circuit: a rotation class of closed walks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit<S> {
    /// Lexicographically least rotation of the arc position sequence.
    pub arcs: Vec<usize>,
    /// Number of arcs.
    pub length: usize,
    /// length / smallest period of the arc sequence.
    pub multiplicity: usize,
    /// Product of the arc weights.
    pub weight: S,
    /// Number of arcs with negative weight.
    pub negative_arcs: usize,
}

impl<S: Scalar> Circuit<S> {
    /// True if some arc of the circuit has tail `v`.
    pub fn visits(&self, d: &WeightedDigraph<S>, v: VertexId) -> bool {
        self.arcs.iter().any(|&pos| d.arcs()[pos].tail == v)
    }

    /// Lexicographically least vertex cycle over the circuit's walks, the
    /// representative used in listings.
    pub fn canonical_vertex_cycle(&self, d: &WeightedDigraph<S>) -> Vec<VertexId> {
        let tails: Vec<VertexId> = self.arcs.iter().map(|&pos| d.arcs()[pos].tail).collect();
        let k = tails.len();
        let mut best: Option<Vec<VertexId>> = None;
        for shift in 0..k {
            let rotated: Vec<VertexId> = (0..k).map(|i| tails[(i + shift) % k]).collect();
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
        best.expect("non-empty circuit")
    }
}

/// Lexicographically least rotation of a sequence.
pub fn canonical_rotation<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    let k = seq.len();
    let mut best: Option<Vec<T>> = None;
    for shift in 0..k {
        let rotated: Vec<T> = (0..k).map(|i| seq[(i + shift) % k].clone()).collect();
        if best.as_ref().is_none_or(|b| rotated < *b) {
            best = Some(rotated);
        }
    }
    best.unwrap_or_default()
}

/// Smallest p such that the sequence is invariant under rotation by p.
/// Always divides the length.
pub fn smallest_period<T: PartialEq>(seq: &[T]) -> usize {
    let k = seq.len();
    for p in 1..=k {
        if k % p != 0 {
            continue;
        }
        if (0..k).all(|i| seq[i] == seq[(i + p) % k]) {
            return p;
        }
    }
    k
}

/// Budget shared by the walk enumerations of one operation. Each DFS step
/// counts, so the number of emitted walks never exceeds the budget.
#[derive(Debug, Clone)]
pub struct WalkBudget {
    budget: usize,
    used: usize,
}

impl WalkBudget {
    pub fn new(budget: usize) -> Self {
        Self { budget, used: 0 }
    }

    /// Crate default budget.
    pub fn standard() -> Self {
        Self::new(crate::DEFAULT_WALK_BUDGET)
    }

    pub fn spend(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.budget {
            return Err(Error::GuardExceeded {
                walks: self.used,
                budget: self.budget,
            });
        }
        Ok(())
    }

    pub fn used(&self) -> usize {
        self.used
    }
}

/// All closed walks of length exactly k, every start vertex, parallel arcs
/// distinguished.
pub fn enumerate_closed_walks<S: Scalar>(
    d: &WeightedDigraph<S>,
    k: usize,
    budget: &mut WalkBudget,
) -> Result<Vec<ClosedWalk>> {
    if k == 0 {
        return Err(Error::InvalidParameter("walk length must be positive".into()));
    }
    let out_table = d.out_arc_table();
    let heads: Vec<usize> = d
        .arcs()
        .iter()
        .map(|a| d.index_of(a.head).expect("arc endpoint present"))
        .collect();
    let mut walks = Vec::new();
    let mut seq = Vec::with_capacity(k);
    for start in 0..d.vertex_count() {
        dfs_closed(
            &out_table,
            &heads,
            start,
            start,
            k,
            &mut seq,
            budget,
            &mut walks,
        )?;
    }
    Ok(walks)
}

#[allow(clippy::too_many_arguments)]
fn dfs_closed(
    out_table: &[Vec<usize>],
    heads: &[usize],
    start: usize,
    here: usize,
    left: usize,
    seq: &mut Vec<usize>,
    budget: &mut WalkBudget,
    walks: &mut Vec<ClosedWalk>,
) -> Result<()> {
    budget.spend()?;
    if left == 0 {
        if here == start {
            walks.push(ClosedWalk { arcs: seq.clone() });
        }
        return Ok(());
    }
    for &pos in &out_table[here] {
        let head = heads[pos];
        if left == 1 && head != start {
            continue;
        }
        seq.push(pos);
        dfs_closed(out_table, heads, start, head, left - 1, seq, budget, walks)?;
        seq.pop();
    }
    Ok(())
}

/// All circuits of length 1..=depth, grouped from the closed walks. Each
/// rotation class is checked to contain exactly period-many walks.
pub fn circuits_up_to<S: Scalar>(
    d: &WeightedDigraph<S>,
    depth: usize,
    budget: &mut WalkBudget,
) -> Result<Vec<Circuit<S>>> {
    let mut circuits = Vec::new();
    for k in 1..=depth {
        let walks = enumerate_closed_walks(d, k, budget)?;
        let mut groups: HashMap<Vec<usize>, usize> = HashMap::new();
        for w in &walks {
            *groups.entry(canonical_rotation(&w.arcs)).or_insert(0) += 1;
        }
        let mut keys: Vec<Vec<usize>> = groups.keys().cloned().collect();
        keys.sort();
        for key in keys {
            let members = groups[&key];
            let period = smallest_period(&key);
            if members != period {
                return Err(Error::InternalConsistency(format!(
                    "circuit {:?} collected {} walks, expected its period {}",
                    key, members, period
                )));
            }
            let walk = ClosedWalk { arcs: key.clone() };
            let weight = walk.weight(d);
            let negative_arcs = key
                .iter()
                .filter(|&&pos| d.arcs()[pos].weight.is_negative())
                .count();
            circuits.push(Circuit {
                length: k,
                multiplicity: k / period,
                weight,
                negative_arcs,
                arcs: key,
            });
        }
    }
    Ok(circuits)
}

/// Per-length sums of w(c)/mu(c) over a circuit list.
pub fn circuit_length_sums<S: Scalar>(circuits: &[Circuit<S>], depth: usize) -> Vec<S> {
    let mut sums = vec![S::zero(); depth];
    for c in circuits {
        if c.length <= depth {
            sums[c.length - 1] =
                sums[c.length - 1].clone() + c.weight.clone() / int(c.multiplicity as i64);
        }
    }
    sums
}

/// Truncated expansion of -ln det(I - A) as per-length circuit sums.
#[derive(Debug, Clone)]
pub struct CircuitSum<S> {
    /// Sum over circuits of length k of w/mu, for k = 1..=depth.
    pub per_length: Vec<S>,
    /// Running totals of `per_length`.
    pub cumulative: Vec<S>,
    /// Spectral radius of the digraph adjacency (floating point view).
    pub rho: f64,
    /// True when rho < 1, i.e. the expansion converges as depth grows.
    pub convergent: bool,
}

impl<S: Scalar> CircuitSum<S> {
    /// Final cumulative value (zero for depth 0).
    pub fn total(&self) -> S {
        self.cumulative.last().cloned().unwrap_or_else(S::zero)
    }
}

/// Per-length circuit sums of a multidigraph, computed through the trace
/// identity tr(A^k)/k. When rho(A) < 1 the cumulative column converges to
/// -ln det(I - A); otherwise the sums are still returned, flagged divergent,
/// for diagnostics.
pub fn logdet_expansion<S: Scalar>(d: &WeightedDigraph<S>, depth: usize) -> Result<CircuitSum<S>> {
    let a = d.adjacency();
    let rho = a.to_f64().spectral_radius_default()?;
    let traces = a.power_traces(depth);
    let mut per_length = Vec::with_capacity(depth);
    let mut cumulative = Vec::with_capacity(depth);
    let mut running = S::zero();
    for (idx, tr) in traces.into_iter().enumerate() {
        let term = tr / int(idx as i64 + 1);
        running = running + term.clone();
        per_length.push(term);
        cumulative.push(running.clone());
    }
    Ok(CircuitSum {
        per_length,
        cumulative,
        rho,
        convergent: rho < 1.0,
    })
}

/// Product of (1 - w(c)) over non-periodic circuits (mu = 1) of length at
/// most `depth`. Converges to det(I - A) as depth grows when the expansion
/// converges.
pub fn nonperiodic_product<S: Scalar>(
    d: &WeightedDigraph<S>,
    depth: usize,
    budget: &mut WalkBudget,
) -> Result<S> {
    let circuits = circuits_up_to(d, depth, budget)?;
    let mut product = S::one();
    for c in circuits {
        if c.multiplicity == 1 {
            product = product * (S::one() - c.weight);
        }
    }
    Ok(product)
}

/// Circuit expansion of -ln det of a diagonal minor of I - tA.
#[derive(Debug, Clone)]
pub struct CofactorExpansion<S> {
    /// Per-length sums for the graph with vertex i removed.
    pub sums: CircuitSum<S>,
    /// Depth up to which the split consistency check ran (0 if no split
    /// vertex was supplied).
    pub checked_depth: usize,
}

/// Expands -ln det B with B = (I - tA) restricted away from vertex `i`, as
/// circuit sums of the directed version of tG minus i.
///
/// With `split` = Some(j), the per-length sums are additionally decomposed by
/// enumeration into circuits avoiding j plus circuits visiting j, the avoiding
/// part is re-derived on tG minus both vertices, and all decompositions must
/// agree (checked up to the enumeration depth cap).
pub fn cofactor_expansion_ii<S: Scalar>(
    g: &WeightedMultigraph<S>,
    t: &S,
    i: VertexId,
    split: Option<VertexId>,
    depth: usize,
    budget: &mut WalkBudget,
) -> Result<CofactorExpansion<S>> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let rho = g.adjacency().to_f64().spectral_radius_default()?;
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
    let tg = g.scaled(t)?;
    let minor = tg.delete_vertices(&[i])?;
    let directed = minor.directed_version();
    let sums = logdet_expansion(&directed, depth)?;
    let mut checked_depth = 0;
    if let Some(j) = split {
        if j == i {
            return Err(Error::InvalidParameter(
                "split vertex must differ from the removed vertex".into(),
            ));
        }
        minor.index_of(j)?;
        checked_depth = depth.min(DEFAULT_DEPTH_CAP);
        let circuits = circuits_up_to(&directed, checked_depth, budget)?;
        let visiting: Vec<Circuit<S>> = circuits
            .iter()
            .filter(|c| c.visits(&directed, j))
            .cloned()
            .collect();
        let avoiding: Vec<Circuit<S>> = circuits
            .iter()
            .filter(|c| !c.visits(&directed, j))
            .cloned()
            .collect();
        let visit_sums = circuit_length_sums(&visiting, checked_depth);
        let avoid_sums = circuit_length_sums(&avoiding, checked_depth);
        let both_removed = match tg.delete_vertices(&[i, j]) {
            Ok(h) => Some(h),
            // Removing both vertices of a 2-vertex graph leaves nothing; the
            // avoiding part must then be empty.
            Err(Error::EmptyGraph) => None,
            Err(e) => return Err(e),
        };
        let deleted_sums = match &both_removed {
            Some(h) => {
                let dd = h.directed_version();
                let deleted = circuits_up_to(&dd, checked_depth, budget)?;
                circuit_length_sums(&deleted, checked_depth)
            }
            None => vec![S::zero(); checked_depth],
        };
        let scale = sums
            .per_length
            .iter()
            .map(|s| s.to_f64().abs())
            .fold(1.0, f64::max);
        for k in 0..checked_depth {
            let recomposed = visit_sums[k].clone() + avoid_sums[k].clone();
            let gap = (recomposed.clone() - sums.per_length[k].clone()).to_f64().abs();
            if gap > DEFAULT_TOL * scale {
                return Err(Error::InternalConsistency(format!(
                    "length-{} circuit sum splits into {} but traces give {}",
                    k + 1,
                    recomposed,
                    sums.per_length[k]
                )));
            }
            let gap = (deleted_sums[k].clone() - avoid_sums[k].clone()).to_f64().abs();
            if gap > DEFAULT_TOL * scale {
                return Err(Error::InternalConsistency(format!(
                    "length-{} avoiding sum {} disagrees with deletion graph {}",
                    k + 1,
                    avoid_sums[k],
                    deleted_sums[k]
                )));
            }
        }
    }
    Ok(CofactorExpansion {
        sums,
        checked_depth,
    })
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

    fn example_digraph_scaled() -> WeightedDigraph<f64> {
        example_graph()
            .scaled(&(1.0 / 3.0))
            .unwrap()
            .directed_version()
    }

    #[test]
    fn closed_walk_count_matches_trace() {
        let d = example_graph().directed_version();
        let mut budget = WalkBudget::standard();
        let walks = enumerate_closed_walks(&d, 2, &mut budget).unwrap();
        // tr(A^2) = 10 with unit weights: 4 + 4 through the parallel pair,
        // 1 + 1 through the bridge edge.
        assert_eq!(walks.len(), 10);
        let from_each: Vec<usize> = (1..=3)
            .map(|v| {
                walks
                    .iter()
                    .filter(|w| d.arcs()[w.arcs[0]].tail == VertexId(v))
                    .count()
            })
            .collect();
        assert_eq!(from_each, vec![4, 5, 1]);
    }

    #[test]
    fn circuits_of_the_scaled_example() {
        let d = example_digraph_scaled();
        let mut budget = WalkBudget::standard();
        let circuits = circuits_up_to(&d, 2, &mut budget).unwrap();
        assert_eq!(circuits.len(), 5);
        for c in &circuits {
            assert_eq!(c.length, 2);
            assert_eq!(c.multiplicity, 1);
            assert_relative_eq!(c.weight, 1.0 / 9.0, epsilon = 1e-15);
        }
        let cycles: Vec<Vec<VertexId>> = circuits
            .iter()
            .map(|c| c.canonical_vertex_cycle(&d))
            .collect();
        let ones = cycles
            .iter()
            .filter(|v| **v == vec![VertexId(1), VertexId(2)])
            .count();
        let threes = cycles
            .iter()
            .filter(|v| **v == vec![VertexId(2), VertexId(3)])
            .count();
        assert_eq!((ones, threes), (4, 1));
    }

    #[test]
    fn rotation_and_period_utilities() {
        assert_eq!(canonical_rotation(&[2, 0, 1]), vec![0, 1, 2]);
        assert_eq!(canonical_rotation(&[1, 0, 1, 0]), vec![0, 1, 0, 1]);
        assert_eq!(smallest_period(&[0, 1, 0, 1]), 2);
        assert_eq!(smallest_period(&[0, 1, 1, 0]), 4);
        assert_eq!(smallest_period(&[7]), 1);
    }

    #[test]
    fn trace_identity_on_the_example() {
        let d = example_digraph_scaled();
        let mut budget = WalkBudget::standard();
        let circuits = circuits_up_to(&d, 6, &mut budget).unwrap();
        let sums = circuit_length_sums(&circuits, 6);
        let traces = d.adjacency().power_traces(6);
        for k in 1..=6 {
            assert_relative_eq!(sums[k - 1], traces[k - 1] / k as f64, epsilon = 1e-13);
        }
    }

    #[test]
    fn trace_identity_exact_rational() {
        let g = WeightedMultigraph::new(
            3,
            &[(1, 2, int::<BigRational>(1)), (1, 2, int(1)), (2, 3, int(1))],
        )
        .unwrap();
        let d = g
            .scaled(&BigRational::from_ratio(1, 3))
            .unwrap()
            .directed_version();
        let mut budget = WalkBudget::standard();
        let circuits = circuits_up_to(&d, 5, &mut budget).unwrap();
        let sums = circuit_length_sums(&circuits, 5);
        let traces = d.adjacency().power_traces(5);
        for k in 1..=5usize {
            assert_eq!(
                sums[k - 1],
                traces[k - 1].clone() / int::<BigRational>(k as i64),
                "length {k}"
            );
        }
        assert_eq!(sums[1], BigRational::from_ratio(5, 9));
    }

    #[test]
    fn logdet_expansion_single_loop() {
        let g = WeightedMultigraph::new(1, &[(1, 1, 0.5)]).unwrap();
        let d = g.directed_version();
        let sums = logdet_expansion(&d, 20).unwrap();
        assert!(sums.convergent);
        assert_relative_eq!(sums.rho, 0.5, epsilon = 1e-12);
        assert_relative_eq!(sums.total(), 2f64.ln(), epsilon = 1e-6);
    }

    #[test]
    fn logdet_expansion_empty_digraph() {
        let d = WeightedDigraph::<f64>::new(vec![VertexId(1), VertexId(2)], &[]).unwrap();
        let sums = logdet_expansion(&d, 10).unwrap();
        assert!(sums.convergent);
        assert_eq!(sums.total(), 0.0);
        let mut budget = WalkBudget::standard();
        assert_eq!(nonperiodic_product(&d, 10, &mut budget).unwrap(), 1.0);
    }

    #[test]
    fn expansion_flags_divergence() {
        let d = example_graph().directed_version();
        let sums = logdet_expansion(&d, 5).unwrap();
        assert!(!sums.convergent);
        assert!(sums.rho > 1.0);
    }

    #[test]
    fn determinant_reached_two_ways() {
        let d = example_digraph_scaled();
        let b = DMat::identity(3).sub(&d.adjacency());
        let det = b.determinant();
        assert_relative_eq!(det, 4.0 / 9.0, epsilon = 1e-14);
        let sums = logdet_expansion(&d, 60).unwrap();
        assert!(sums.convergent);
        assert_relative_eq!((-sums.total()).exp(), det, epsilon = 1e-6);
        let mut budget = WalkBudget::standard();
        let product = nonperiodic_product(&d, 16, &mut budget).unwrap();
        assert_relative_eq!(product, det, epsilon = 3e-3);
    }

    use crate::matrix::DenseMatrix as DMat;

    #[test]
    fn cofactor_expansion_with_split() {
        let g = example_graph();
        let t = 1.0 / 3.0;
        let mut budget = WalkBudget::standard();
        let exp = cofactor_expansion_ii(&g, &t, VertexId(1), Some(VertexId(3)), 60, &mut budget)
            .unwrap();
        assert_eq!(exp.checked_depth, 8);
        // det of (I - tA) without vertex 1 is 8/9.
        assert_relative_eq!(exp.sums.total(), -(8.0f64 / 9.0).ln(), epsilon = 1e-9);
        let exp3 = cofactor_expansion_ii(&g, &t, VertexId(3), Some(VertexId(1)), 60, &mut budget)
            .unwrap();
        assert_relative_eq!(exp3.sums.total(), -(5.0f64 / 9.0).ln(), epsilon = 1e-9);
    }

    #[test]
    fn budget_guard_trips() {
        let d = example_graph().directed_version();
        let mut budget = WalkBudget::new(10);
        let err = enumerate_closed_walks(&d, 4, &mut budget).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { .. }));
    }
}
