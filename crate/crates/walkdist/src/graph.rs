//! Weighted multigraphs and multidigraphs with stable vertex and edge
//! identities.
//!
//! Vertices are 1-based ids that survive vertex deletion, so a minor of a
//! graph keeps the original labels. Parallel edges and loops are first-class:
//! every edge has its own id, and two parallel edges are distinct objects
//! even when weights coincide.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Stable 1-based vertex label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct VertexId(pub usize);

/// Stable edge label, unique within a multigraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EdgeId(pub usize);

/// Stable arc label, unique within a multidigraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ArcId(pub usize);

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Undirected edge with positive weight. `u == v` is a loop.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge<S> {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub weight: S,
}

impl<S> Edge<S> {
    /// True if both endpoints coincide.
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `x` (either endpoint for a loop).
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Directed arc; weight may be negative.
#[derive(Debug, Clone, PartialEq)]
pub struct Arc<S> {
    pub id: ArcId,
    pub tail: VertexId,
    pub head: VertexId,
    pub weight: S,
}

impl<S> Arc<S> {
    /// True if tail and head coincide.
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// Connected or not, a finite weighted multigraph with loops and parallel
/// edges allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMultigraph<S> {
    vertices: Vec<VertexId>,
    edges: Vec<Edge<S>>,
}

impl<S: Scalar> WeightedMultigraph<S> {
    /// Builds a graph on vertices 1..=n from `(u, v, weight)` triples
    /// (1-based endpoints). Repeated triples create parallel edges; `u == v`
    /// creates a loop. Weights must be positive.
    pub fn new(n: usize, edges: &[(usize, usize, S)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let vertices: Vec<VertexId> = (1..=n).map(VertexId).collect();
        let mut out = Vec::with_capacity(edges.len());
        for (k, (u, v, w)) in edges.iter().enumerate() {
            if *u == 0 || *u > n || *v == 0 || *v > n {
                return Err(Error::InvalidParameter(format!(
                    "edge {} endpoints ({}, {}) out of range 1..={}",
                    k + 1,
                    u,
                    v,
                    n
                )));
            }
            if !w.is_positive() {
                return Err(Error::InvalidParameter(format!(
                    "edge {} weight {} is not positive",
                    k + 1,
                    w
                )));
            }
            let (a, b) = if u <= v { (*u, *v) } else { (*v, *u) };
            out.push(Edge {
                id: EdgeId(k),
                u: VertexId(a),
                v: VertexId(b),
                weight: w.clone(),
            });
        }
        Ok(Self {
            vertices,
            edges: out,
        })
    }

    fn from_parts(vertices: Vec<VertexId>, edges: Vec<Edge<S>>) -> Self {
        Self { vertices, edges }
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges (parallel edges counted individually).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex ids in dense (row) order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// All edges.
    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    /// Dense row index of a vertex id.
    pub fn index_of(&self, v: VertexId) -> Result<usize> {
        self.vertices
            .binary_search(&v)
            .map_err(|_| Error::InvalidParameter(format!("vertex {} is not in the graph", v)))
    }

    /// True if the id labels a vertex of this graph.
    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Symmetric adjacency matrix in dense vertex order: entry (u, v) is the
    /// sum of weights of edges joining u and v; a loop contributes its weight
    /// once to the diagonal.
    pub fn adjacency(&self) -> DenseMatrix<S> {
        let n = self.vertex_count();
        let mut a: DenseMatrix<S> = DenseMatrix::zero(n, n);
        for e in &self.edges {
            let i = self.index_of(e.u).expect("edge endpoint present");
            let j = self.index_of(e.v).expect("edge endpoint present");
            if i == j {
                let cur = a.get(i, i).clone();
                a.set(i, i, cur + e.weight.clone());
            } else {
                let cur = a.get(i, j).clone();
                a.set(i, j, cur + e.weight.clone());
                let cur = a.get(j, i).clone();
                a.set(j, i, cur + e.weight.clone());
            }
        }
        a
    }

    /// Same structure with every weight multiplied by `c` (must be positive).
    pub fn scaled(&self, c: &S) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "scale factor {} is not positive",
                c
            )));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                id: e.id,
                u: e.u,
                v: e.v,
                weight: e.weight.clone() * c.clone(),
            })
            .collect();
        Ok(Self::from_parts(self.vertices.clone(), edges))
    }

    /// Induced subgraph on the complement of `remove`; vertex and edge ids
    /// are preserved. Removing every vertex is an error.
    pub fn delete_vertices(&self, remove: &[VertexId]) -> Result<Self> {
        for v in remove {
            if !self.contains(*v) {
                return Err(Error::InvalidParameter(format!(
                    "vertex {} is not in the graph",
                    v
                )));
            }
        }
        let vertices: Vec<VertexId> = self
            .vertices
            .iter()
            .copied()
            .filter(|v| !remove.contains(v))
            .collect();
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let edges: Vec<Edge<S>> = self
            .edges
            .iter()
            .filter(|e| !remove.contains(&e.u) && !remove.contains(&e.v))
            .cloned()
            .collect();
        Ok(Self::from_parts(vertices, edges))
    }

    /// Directed version: one pair of opposite arcs per non-loop edge, a
    /// single arc per loop. Arc weights equal the edge weights.
    pub fn directed_version(&self) -> WeightedDigraph<S> {
        let mut arcs = Vec::with_capacity(2 * self.edges.len());
        for e in &self.edges {
            if e.is_loop() {
                arcs.push(Arc {
                    id: ArcId(arcs.len()),
                    tail: e.u,
                    head: e.u,
                    weight: e.weight.clone(),
                });
            } else {
                arcs.push(Arc {
                    id: ArcId(arcs.len()),
                    tail: e.u,
                    head: e.v,
                    weight: e.weight.clone(),
                });
                arcs.push(Arc {
                    id: ArcId(arcs.len()),
                    tail: e.v,
                    head: e.u,
                    weight: e.weight.clone(),
                });
            }
        }
        WeightedDigraph {
            vertices: self.vertices.clone(),
            arcs,
        }
    }

    /// True if every vertex is reachable from every other through edges.
    /// Single-vertex graphs are connected; edgeless multi-vertex graphs are
    /// not.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n <= 1 {
            return true;
        }
        let inc = self.incidence_table();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for &(_, j) in &inc[i] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == n
    }

    /// For each dense vertex index, the incident edges as
    /// `(edge position, dense index of the other endpoint)`; loops appear
    /// once with the vertex itself as the other endpoint.
    pub fn incidence_table(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.vertex_count()];
        for (pos, e) in self.edges.iter().enumerate() {
            let i = self.index_of(e.u).expect("edge endpoint present");
            let j = self.index_of(e.v).expect("edge endpoint present");
            if i == j {
                inc[i].push((pos, i));
            } else {
                inc[i].push((pos, j));
                inc[j].push((pos, i));
            }
        }
        inc
    }

    /// Edges joining `u` and `v` (order of endpoints irrelevant).
    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<&Edge<S>> {
        self.edges
            .iter()
            .filter(|e| (e.u == u && e.v == v) || (e.u == v && e.v == u))
            .collect()
    }

    /// Applies a vertex relabeling. `mapping` must assign every current
    /// vertex a distinct new id; edge ids and weights are untouched.
    pub fn relabeled(&self, mapping: &BTreeMap<VertexId, VertexId>) -> Result<Self> {
        let mut new_ids: Vec<VertexId> = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let nv = mapping
                .get(v)
                .ok_or_else(|| Error::InvalidParameter(format!("vertex {} has no new label", v)))?;
            new_ids.push(*nv);
        }
        let mut sorted = new_ids.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != new_ids.len() {
            return Err(Error::InvalidParameter(
                "relabeling is not injective".into(),
            ));
        }
        let map = |v: VertexId| *mapping.get(&v).expect("checked above");
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (map(e.u), map(e.v));
                let (u, v) = if a <= b { (a, b) } else { (b, a) };
                Edge {
                    id: e.id,
                    u,
                    v,
                    weight: e.weight.clone(),
                }
            })
            .collect();
        Ok(Self::from_parts(sorted, edges))
    }
}

impl WeightedMultigraph<f64> {
    /// Parses the graph text format: a `n <count>` header line, then one
    /// `u v w` line per edge (1-based endpoints, positive decimal weight).
    /// Repeated lines create parallel edges; `u u w` creates a loop. Blank
    /// lines and lines starting with `#` are ignored.
    pub fn parse_text(text: &str) -> std::result::Result<Self, ParseError> {
        let mut n: Option<usize> = None;
        let mut edges: Vec<(usize, usize, f64)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            if n.is_none() {
                let mut parts = line.split_whitespace();
                match (parts.next(), parts.next(), parts.next()) {
                    (Some("n"), Some(count), None) => {
                        let c: usize = count.parse().map_err(|_| ParseError {
                            line: lineno,
                            message: format!("bad vertex count {:?}", count),
                        })?;
                        if c == 0 {
                            return Err(ParseError {
                                line: lineno,
                                message: "vertex count must be at least 1".into(),
                            });
                        }
                        n = Some(c);
                    }
                    _ => {
                        return Err(ParseError {
                            line: lineno,
                            message: "expected header line `n <count>`".into(),
                        });
                    }
                }
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(ParseError {
                    line: lineno,
                    message: format!("expected `u v w`, got {} fields", fields.len()),
                });
            }
            let u: usize = fields[0].parse().map_err(|_| ParseError {
                line: lineno,
                message: format!("bad vertex {:?}", fields[0]),
            })?;
            let v: usize = fields[1].parse().map_err(|_| ParseError {
                line: lineno,
                message: format!("bad vertex {:?}", fields[1]),
            })?;
            let w: f64 = fields[2].parse().map_err(|_| ParseError {
                line: lineno,
                message: format!("bad weight {:?}", fields[2]),
            })?;
            if !w.is_finite() || w <= 0.0 {
                return Err(ParseError {
                    line: lineno,
                    message: format!("weight {} is not a positive finite number", w),
                });
            }
            edges.push((u, v, w));
        }
        let n = n.ok_or(ParseError {
            line: 0,
            message: "missing header line `n <count>`".into(),
        })?;
        WeightedMultigraph::new(n, &edges).map_err(|e| ParseError {
            line: 0,
            message: e.to_string(),
        })
    }

    /// Renders the graph in the same text format `parse_text` reads. Vertex
    /// ids are renumbered densely to 1..=n, so the output of a deleted-vertex
    /// graph is a well-formed file for an isomorphic graph.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n {}", self.vertex_count());
        for e in &self.edges {
            let i = self.index_of(e.u).expect("edge endpoint present") + 1;
            let j = self.index_of(e.v).expect("edge endpoint present") + 1;
            let _ = writeln!(out, "{} {} {}", i, j, e.weight);
        }
        out
    }
}

/// Graph text format error with a 1-based line number (0 for whole-file
/// problems).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Finite weighted multidigraph; arc weights may be negative.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph<S> {
    vertices: Vec<VertexId>,
    arcs: Vec<Arc<S>>,
}

impl<S: Scalar> WeightedDigraph<S> {
    /// Builds a digraph on the given vertex ids (must be strictly
    /// increasing) from `(tail, head, weight)` triples.
    pub fn new(vertices: Vec<VertexId>, arcs: &[(VertexId, VertexId, S)]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if !vertices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(
                "vertex ids must be strictly increasing".into(),
            ));
        }
        let mut out = Vec::with_capacity(arcs.len());
        for (k, (t, h, w)) in arcs.iter().enumerate() {
            if vertices.binary_search(t).is_err() || vertices.binary_search(h).is_err() {
                return Err(Error::InvalidParameter(format!(
                    "arc {} endpoints ({}, {}) not in vertex set",
                    k + 1,
                    t,
                    h
                )));
            }
            if w.is_zero() {
                return Err(Error::InvalidParameter(format!("arc {} has zero weight", k + 1)));
            }
            out.push(Arc {
                id: ArcId(k),
                tail: *t,
                head: *h,
                weight: w.clone(),
            });
        }
        Ok(Self {
            vertices,
            arcs: out,
        })
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of arcs (parallel arcs counted individually).
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Vertex ids in dense (row) order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// All arcs.
    pub fn arcs(&self) -> &[Arc<S>] {
        &self.arcs
    }

    /// Dense row index of a vertex id.
    pub fn index_of(&self, v: VertexId) -> Result<usize> {
        self.vertices
            .binary_search(&v)
            .map_err(|_| Error::InvalidParameter(format!("vertex {} is not in the digraph", v)))
    }

    /// Adjacency matrix in dense vertex order: entry (t, h) sums the weights
    /// of arcs from t to h.
    pub fn adjacency(&self) -> DenseMatrix<S> {
        let n = self.vertex_count();
        let mut a: DenseMatrix<S> = DenseMatrix::zero(n, n);
        for arc in &self.arcs {
            let i = self.index_of(arc.tail).expect("arc endpoint present");
            let j = self.index_of(arc.head).expect("arc endpoint present");
            let cur = a.get(i, j).clone();
            a.set(i, j, cur + arc.weight.clone());
        }
        a
    }

    /// For each dense vertex index, positions of the arcs leaving it.
    pub fn out_arc_table(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertex_count()];
        for (pos, arc) in self.arcs.iter().enumerate() {
            let i = self.index_of(arc.tail).expect("arc endpoint present");
            out[i].push(pos);
        }
        out
    }

    /// Number of closed walks of each length 1..=k, computed from the arc
    /// count matrix. Used to size enumerations before running them.
    pub fn closed_walk_counts(&self, k: usize) -> Vec<f64> {
        let n = self.vertex_count();
        let mut c = DenseMatrix::<f64>::zero(n, n);
        for arc in &self.arcs {
            let i = self.index_of(arc.tail).expect("arc endpoint present");
            let j = self.index_of(arc.head).expect("arc endpoint present");
            c.set(i, j, c.get(i, j) + 1.0);
        }
        c.power_traces(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use crate::scalar::int;

    fn example_graph() -> WeightedMultigraph<f64> {
        WeightedMultigraph::new(3, &[(1, 2, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap()
    }

    #[test]
    fn adjacency_sums_parallel_edges() {
        let a = example_graph().adjacency();
        let expect = [[0.0, 2.0, 0.0], [2.0, 0.0, 1.0], [0.0, 1.0, 0.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(*a.get(i, j), expect[i][j]);
            }
        }
    }

    #[test]
    fn adjacency_is_symmetric_and_loop_counts_once() {
        let g = WeightedMultigraph::new(2, &[(1, 1, 0.4)]).unwrap();
        let a = g.adjacency();
        assert_eq!(*a.get(0, 0), 0.4);
        assert_eq!(*a.get(0, 1), 0.0);
        assert_eq!(*a.get(1, 1), 0.0);
        let d = g.directed_version();
        assert_eq!(d.arc_count(), 1);
        assert!(d.arcs()[0].is_loop());
    }

    #[test]
    fn scaling_commutes_with_adjacency() {
        let g = example_graph();
        let lhs = g.scaled(&(1.0 / 3.0)).unwrap().adjacency();
        let mut rhs = g.adjacency();
        rhs.scale_in_place(&(1.0 / 3.0));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn deletion_preserves_identities() {
        let g = example_graph();
        let h = g.delete_vertices(&[VertexId(1)]).unwrap();
        assert_eq!(h.vertices(), &[VertexId(2), VertexId(3)]);
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.edges()[0].id, EdgeId(2));
        let isolated = g.delete_vertices(&[VertexId(1), VertexId(3)]).unwrap();
        assert_eq!(isolated.vertices(), &[VertexId(2)]);
        assert_eq!(isolated.edge_count(), 0);
        assert!(isolated.is_connected());
        assert!(g.delete_vertices(&[VertexId(1), VertexId(2), VertexId(3)]).is_err());
    }

    #[test]
    fn deletion_matches_adjacency_minor() {
        let g = WeightedMultigraph::new(
            4,
            &[(1, 2, 0.5), (2, 3, 1.5), (3, 4, 2.0), (1, 4, 0.25), (2, 2, 0.75)],
        )
        .unwrap();
        let h = g.delete_vertices(&[VertexId(3)]).unwrap();
        let a = g.adjacency();
        let b = h.adjacency();
        let keep = [0usize, 1, 3];
        for (bi, &ai) in keep.iter().enumerate() {
            for (bj, &aj) in keep.iter().enumerate() {
                assert_eq!(b.get(bi, bj), a.get(ai, aj));
            }
        }
    }

    #[test]
    fn directed_version_doubles_non_loops() {
        let d = example_graph().directed_version();
        assert_eq!(d.arc_count(), 6);
        let a = d.adjacency();
        assert_eq!(*a.get(0, 1), 2.0);
        assert_eq!(*a.get(1, 0), 2.0);
        assert_eq!(*a.get(1, 2), 1.0);
        assert_eq!(*a.get(2, 1), 1.0);
    }

    #[test]
    fn connectivity() {
        assert!(example_graph().is_connected());
        let edgeless = WeightedMultigraph::<f64>::new(3, &[]).unwrap();
        assert!(!edgeless.is_connected());
        let k2 = WeightedMultigraph::new(2, &[(1, 2, 1.0)]).unwrap();
        assert!(k2.is_connected());
        let g = example_graph();
        let scaled = g.scaled(&0.2).unwrap();
        assert_eq!(g.is_connected(), scaled.is_connected());
    }

    #[test]
    fn parse_and_dump_round_trip() {
        let text = "# walk graph\nn 3\n1 2 1\n1 2 1\n2 3 1\n";
        let g = WeightedMultigraph::parse_text(text).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        let dumped = g.to_text();
        let g2 = WeightedMultigraph::parse_text(&dumped).unwrap();
        assert_eq!(g.adjacency(), g2.adjacency());
        assert_eq!(g.edge_count(), g2.edge_count());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = WeightedMultigraph::parse_text("n 2\n1 3 1\n").unwrap_err();
        assert_eq!(err.line, 0);
        let err = WeightedMultigraph::parse_text("n 2\n1 2 -1\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = WeightedMultigraph::parse_text("2\n1 2 1\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = WeightedMultigraph::parse_text("# only a comment\n").unwrap_err();
        assert_eq!(err.line, 0);
    }

    #[test]
    fn rational_graphs_work() {
        let third = BigRational::from_ratio(1, 3);
        let g = WeightedMultigraph::new(
            3,
            &[(1, 2, int::<BigRational>(1)), (1, 2, int(1)), (2, 3, int(1))],
        )
        .unwrap();
        let tg = g.scaled(&third).unwrap();
        let a = tg.adjacency();
        assert_eq!(*a.get(0, 1), BigRational::from_ratio(2, 3));
        assert_eq!(*a.get(1, 2), BigRational::from_ratio(1, 3));
    }

    #[test]
    fn relabeling_is_an_isomorphism() {
        let g = example_graph();
        let mapping: BTreeMap<VertexId, VertexId> = [
            (VertexId(1), VertexId(2)),
            (VertexId(2), VertexId(1)),
            (VertexId(3), VertexId(3)),
        ]
        .into_iter()
        .collect();
        let h = g.relabeled(&mapping).unwrap();
        let a = h.adjacency();
        assert_eq!(*a.get(0, 1), 2.0);
        assert_eq!(*a.get(0, 2), 1.0);
        assert_eq!(*a.get(1, 2), 0.0);
    }
}
