//! Jump digraphs and alternating routes: the topological expansion of the
//! walk distance between a fixed pair of vertices.
//!
//! For a pair (i, j), walks are taken in the graph augmented by weight-1
//! "jump" loops at i and j. An alternating walk decomposes into jumps at the
//! anchors and anchor-to-anchor hitting segments whose interiors avoid both
//! anchors, with consecutive segments leaving alternating anchors. Routes
//! are rotation classes of such walks, graded into four families by start
//! and end anchor; mirror families are counted separately.
//!
//! The same combinatorics lives on a small multidigraph: contracting the
//! pair into one merged vertex, keeping one arc per non-anchor edge side,
//! negating the arcs that enter the merged vertex, and adding a weight-1
//! jump loop yields a digraph whose adjacency matrix is
//! I - B_without(i,j) * T(j,i), with B = I - tA and T the swap transform.
//! Circuits of this digraph through the merged vertex correspond one-to-one
//! with routes based at j (odd number of negative arcs: open j-to-i routes;
//! even: closed routes at j), preserving length, weight magnitude, and
//! multiplicity. Its full circuit expansion converges to -ln of the (i,j)
//! cofactor of B, and subtracting it from the two diagonal expansions gives
//! the distance expansion: per length k,
//!
//! ```text
//! S_k = - (circuits through i avoiding j, and through j avoiding i)
//!       + (closed routes at either anchor)
//!       - (open routes in either direction),      d(i,j) = 1/2 sum_k S_k
//! ```
//!
//! each term summed as w/mu. Per-length grouping is mandatory: the signed
//! series converges only conditionally.

use crate::circuits::{
    canonical_rotation, circuit_length_sums, circuits_up_to, logdet_expansion, smallest_period,
    Circuit, CircuitSum, WalkBudget,
};
use crate::error::{Error, Result};
use crate::graph::{ArcId, VertexId, WeightedDigraph, WeightedMultigraph};
use crate::matrix::DenseMatrix;
use crate::metric::{walk_distances, walk_weights};
use crate::scalar::{int, Scalar};
use crate::{DEFAULT_DEPTH_CAP, DEFAULT_TOL};
use std::collections::{BTreeMap, HashMap};

/// Swap transform T(i,j): the identity with its (j,i) entry set to -1, row i
/// and column j removed (1-based positions, i != j). Always a signed
/// permutation matrix with determinant (-1)^(i+j).
pub fn swap_transform<S: Scalar>(n: usize, i: usize, j: usize) -> DenseMatrix<S> {
    assert!(i >= 1 && j >= 1 && i <= n && j <= n && i != j, "bad swap positions");
    let mut full: DenseMatrix<S> = DenseMatrix::identity(n);
    full.set(j - 1, i - 1, -S::one());
    full.minor_without(i - 1, j - 1)
}

/// Verifies the generalized-inverse identity of the swap transform:
/// with M the identity minus row i and column j,
/// M * T(i,j)^{-1} * M equals M with its (k,k) entry zeroed,
/// k being the position of j among 1..n with i removed.
pub fn g_inverse_check(n: usize, i: usize, j: usize) -> Result<()> {
    let t: DenseMatrix<f64> = swap_transform(n, i, j);
    let t_inv = t.inverse()?;
    let m = DenseMatrix::<f64>::identity(n).minor_without(i - 1, j - 1);
    let product = m.mul(&t_inv).mul(&m);
    let mut expected = m.clone();
    let k = if j < i { j } else { j - 1 };
    expected.set(k - 1, k - 1, 0.0);
    if product.max_abs_diff(&expected) > DEFAULT_TOL {
        return Err(Error::InternalConsistency(format!(
            "swap transform g-inverse identity failed for n={}, pair ({}, {})",
            n, i, j
        )));
    }
    Ok(())
}

/// The jump matrix I - B_without(i,j) * T(j,i) built by plain linear algebra
/// on the dense positions of i and j. Rows and columns are indexed by the
/// vertices other than i, with j's slot standing for the merged vertex.
pub fn jump_matrix_algebraic<S: Scalar>(
    g: &WeightedMultigraph<S>,
    t: &S,
    i: VertexId,
    j: VertexId,
) -> Result<DenseMatrix<S>> {
    let n = g.vertex_count();
    let pi = g.index_of(i)?;
    let pj = g.index_of(j)?;
    let mut ta = g.adjacency();
    ta.scale_in_place(t);
    let b = DenseMatrix::identity(n).sub(&ta);
    let b_minor = b.minor_without(pi, pj);
    let t_ji = swap_transform::<S>(n, pj + 1, pi + 1);
    Ok(DenseMatrix::identity(n - 1).sub(&b_minor.mul(&t_ji)))
}

/// The jump matrix built by the row/column procedure: take tA, subtract one
/// from its (j,i) entry, drop row i, then overwrite column j with the negated
/// column i and drop column i.
pub fn jump_matrix_procedural<S: Scalar>(
    g: &WeightedMultigraph<S>,
    t: &S,
    i: VertexId,
    j: VertexId,
) -> Result<DenseMatrix<S>> {
    let n = g.vertex_count();
    let pi = g.index_of(i)?;
    let pj = g.index_of(j)?;
    let mut m = g.adjacency();
    m.scale_in_place(t);
    m.set(pj, pi, m.get(pj, pi).clone() - S::one());
    let mut out: DenseMatrix<S> = DenseMatrix::zero(n - 1, n - 1);
    let rows: Vec<usize> = (0..n).filter(|&r| r != pi).collect();
    let cols: Vec<usize> = (0..n).filter(|&c| c != pi).collect();
    for (r_out, &r) in rows.iter().enumerate() {
        for (c_out, &c) in cols.iter().enumerate() {
            let v = if c == pj {
                -m.get(r, pi).clone()
            } else {
                m.get(r, c).clone()
            };
            out.set(r_out, c_out, v);
        }
    }
    Ok(out)
}

/// Jump digraph for a vertex pair: the merged-vertex multidigraph, its
/// adjacency (the jump matrix), and the relabeling bookkeeping.
#[derive(Debug, Clone)]
pub struct JumpDigraph<S> {
    /// Working copy of the t-scaled graph, relabeled if the pair parity
    /// required it.
    scaled_graph: WeightedMultigraph<S>,
    /// The merged-vertex multidigraph. Vertex ids are those of the working
    /// graph minus the first anchor; the second anchor's id stands for the
    /// merged vertex.
    digraph: WeightedDigraph<S>,
    /// Summed adjacency of the digraph: the jump matrix.
    matrix: DenseMatrix<S>,
    /// Anchors (i, j) in the working labeling.
    pair: (VertexId, VertexId),
    /// Anchors as given by the caller.
    original_pair: (VertexId, VertexId),
    /// Working label -> original label (identity when no relabel happened).
    to_original: BTreeMap<VertexId, VertexId>,
    /// Arc position of the weight-1 jump loop.
    jump_arc: ArcId,
    /// Spectral radius of the jump matrix.
    rho: f64,
}

/// Builds the jump digraph for the pair (i, j) of a connected graph with at
/// least three vertices and t in the walk-convergence range.
///
/// When the dense positions of i and j have odd parity sum, the graph is
/// relabeled internally so the pair sits at positions with even parity (the
/// determinant identities then hold without cofactor sign corrections);
/// listings translate back through [`JumpDigraph::original_label`].
///
/// The digraph is built edge by edge (one arc per edge side that survives
/// the merge) and its adjacency is checked against both the algebraic and
/// the procedural jump matrix.
pub fn jump_digraph<S: Scalar>(
    g: &WeightedMultigraph<S>,
    t: &S,
    i: VertexId,
    j: VertexId,
) -> Result<JumpDigraph<S>> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::Unsupported { min: 3, n });
    }
    if i == j {
        return Err(Error::InvalidParameter(
            "jump digraph needs two distinct vertices".into(),
        ));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let rho_a = g.adjacency().to_f64().spectral_radius_default()?;
    let tf = t.to_f64();
    if !(tf > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "walk parameter t = {} must be positive",
            t
        )));
    }
    if rho_a > 0.0 && tf * rho_a >= 1.0 {
        return Err(Error::ParameterOutOfRange {
            t: tf,
            rho: rho_a,
            bound: 1.0 / rho_a,
        });
    }
    let pi = g.index_of(i)?;
    let pj = g.index_of(j)?;

    // Relabel to even position parity if needed: i -> 1, j -> 3, the rest
    // ascending onto the remaining ids.
    let (work, wi, wj, to_original) = if (pi + pj) % 2 == 1 {
        let mut forward: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        forward.insert(i, VertexId(1));
        forward.insert(j, VertexId(3));
        let mut slots = vec![VertexId(2)];
        slots.extend((4..=n).map(VertexId));
        let others = g.vertices().iter().copied().filter(|&v| v != i && v != j);
        for (v, slot) in others.zip(slots) {
            forward.insert(v, slot);
        }
        let relabeled = g.relabeled(&forward)?;
        let backward: BTreeMap<VertexId, VertexId> =
            forward.into_iter().map(|(orig, new)| (new, orig)).collect();
        (relabeled, VertexId(1), VertexId(3), backward)
    } else {
        let identity: BTreeMap<VertexId, VertexId> =
            g.vertices().iter().map(|&v| (v, v)).collect();
        (g.clone(), i, j, identity)
    };

    let tg = work.scaled(t)?;
    let digraph = build_merged_digraph(&tg, wi, wj)?;
    let matrix = digraph.adjacency();

    let algebraic = jump_matrix_algebraic(&work, t, wi, wj)?;
    let procedural = jump_matrix_procedural(&work, t, wi, wj)?;
    let scale = matrix.to_f64().max_abs().max(1.0);
    if matrix.to_f64().max_abs_diff(&algebraic.to_f64()) > DEFAULT_TOL * scale
        || matrix.to_f64().max_abs_diff(&procedural.to_f64()) > DEFAULT_TOL * scale
    {
        return Err(Error::InternalConsistency(
            "jump matrix constructions disagree".into(),
        ));
    }

    let rho = matrix.to_f64().spectral_radius_default()?;
    let jump_arc = digraph
        .arcs()
        .iter()
        .find(|a| a.is_loop() && a.tail == wj && a.weight.is_one())
        .map(|a| a.id)
        .ok_or_else(|| Error::InternalConsistency("jump loop missing".into()))?;
    Ok(JumpDigraph {
        scaled_graph: tg,
        digraph,
        matrix,
        pair: (wi, wj),
        original_pair: (i, j),
        to_original,
        jump_arc,
        rho,
    })
}

/// One arc per surviving edge side: jump loop at the merged vertex (weight
/// 1), a negated loop per direct i-j edge, an outgoing arc per (j, m) edge,
/// a negated incoming arc per (i, m) edge, both directions for interior
/// edges, one arc per interior loop. Loops at the anchors themselves cannot
/// appear in any alternating walk and are dropped.
fn build_merged_digraph<S: Scalar>(
    tg: &WeightedMultigraph<S>,
    i: VertexId,
    j: VertexId,
) -> Result<WeightedDigraph<S>> {
    let vertices: Vec<VertexId> = tg.vertices().iter().copied().filter(|&v| v != i).collect();
    let mut arcs: Vec<(VertexId, VertexId, S)> = Vec::new();
    arcs.push((j, j, S::one()));
    for e in tg.edges() {
        let touches_i = e.u == i || e.v == i;
        let touches_j = e.u == j || e.v == j;
        match (touches_i, touches_j) {
            (true, true) => {
                if e.is_loop() {
                    continue;
                }
                arcs.push((j, j, -e.weight.clone()));
            }
            (true, false) => {
                if e.is_loop() {
                    continue;
                }
                let m = e.other(i);
                arcs.push((m, j, -e.weight.clone()));
            }
            (false, true) => {
                if e.is_loop() {
                    continue;
                }
                let m = e.other(j);
                arcs.push((j, m, e.weight.clone()));
            }
            (false, false) => {
                if e.is_loop() {
                    arcs.push((e.u, e.u, e.weight.clone()));
                } else {
                    arcs.push((e.u, e.v, e.weight.clone()));
                    arcs.push((e.v, e.u, e.weight.clone()));
                }
            }
        }
    }
    WeightedDigraph::new(vertices, &arcs)
}

impl<S: Scalar> JumpDigraph<S> {
    /// The merged-vertex multidigraph.
    pub fn digraph(&self) -> &WeightedDigraph<S> {
        &self.digraph
    }

    /// The jump matrix (summed adjacency of the digraph).
    pub fn matrix(&self) -> &DenseMatrix<S> {
        &self.matrix
    }

    /// Anchors in the working labeling.
    pub fn pair(&self) -> (VertexId, VertexId) {
        self.pair
    }

    /// Anchors as supplied by the caller.
    pub fn original_pair(&self) -> (VertexId, VertexId) {
        self.original_pair
    }

    /// The merged vertex's id in the working labeling.
    pub fn merged_vertex(&self) -> VertexId {
        self.pair.1
    }

    /// Position of the weight-1 jump loop in the digraph's arc list.
    pub fn jump_arc(&self) -> ArcId {
        self.jump_arc
    }

    /// Spectral radius of the jump matrix.
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// True if the pair was relabeled to fix position parity.
    pub fn relabeled(&self) -> bool {
        self.to_original.iter().any(|(a, b)| a != b)
    }

    /// Translates a working label back to the caller's labeling.
    pub fn original_label(&self, v: VertexId) -> VertexId {
        *self.to_original.get(&v).unwrap_or(&v)
    }

    /// The t-scaled (and possibly relabeled) graph the walks live in.
    pub fn scaled_graph(&self) -> &WeightedMultigraph<S> {
        &self.scaled_graph
    }

    /// All alternating walks of length exactly k, from both anchors.
    pub fn alternating_walks(
        &self,
        k: usize,
        budget: &mut WalkBudget,
    ) -> Result<Vec<AlternatingWalk>> {
        if k == 0 {
            return Ok(Vec::new());
        }
        let (i, j) = self.pair;
        let g = &self.scaled_graph;
        let inc = g.incidence_table();
        let anchor_i = g.index_of(i)?;
        let anchor_j = g.index_of(j)?;
        let mut walks = Vec::new();
        for &start in &[anchor_j, anchor_i] {
            let mut steps = Vec::with_capacity(k);
            self.walk_dfs(
                &inc,
                (anchor_i, anchor_j),
                start,
                State::AtAnchor(start),
                k,
                &mut steps,
                budget,
                &mut walks,
            )?;
        }
        Ok(walks)
    }

    #[allow(clippy::too_many_arguments)]
    fn walk_dfs(
        &self,
        inc: &[Vec<(usize, usize)>],
        anchors: (usize, usize),
        start: usize,
        state: State,
        left: usize,
        steps: &mut Vec<WalkStep>,
        budget: &mut WalkBudget,
        walks: &mut Vec<AlternatingWalk>,
    ) -> Result<()> {
        budget.spend()?;
        let (ai, aj) = anchors;
        if left == 0 {
            if let State::AtAnchor(_) = state {
                walks.push(AlternatingWalk {
                    start: self.scaled_graph.vertices()[start],
                    steps: steps.clone(),
                });
            }
            return Ok(());
        }
        match state {
            State::AtAnchor(here) => {
                // A jump stays put.
                steps.push(WalkStep::Jump {
                    at: self.scaled_graph.vertices()[here],
                });
                self.walk_dfs(inc, anchors, start, State::AtAnchor(here), left - 1, steps, budget, walks)?;
                steps.pop();
                // Or a hitting segment toward the other anchor begins.
                let target = if here == ai { aj } else { ai };
                for &(edge_pos, next) in &inc[here] {
                    if next == here {
                        continue; // anchor loops never occur in hitting walks
                    }
                    if next != target && (next == ai || next == aj) {
                        continue;
                    }
                    let step = WalkStep::Edge {
                        edge: edge_pos,
                        from: self.scaled_graph.vertices()[here],
                        to: self.scaled_graph.vertices()[next],
                    };
                    steps.push(step);
                    let next_state = if next == target {
                        State::AtAnchor(next)
                    } else {
                        State::Transit { at: next, target }
                    };
                    self.walk_dfs(inc, anchors, start, next_state, left - 1, steps, budget, walks)?;
                    steps.pop();
                }
            }
            State::Transit { at, target } => {
                for &(edge_pos, next) in &inc[at] {
                    if (next == ai || next == aj) && next != target {
                        continue;
                    }
                    let step = WalkStep::Edge {
                        edge: edge_pos,
                        from: self.scaled_graph.vertices()[at],
                        to: self.scaled_graph.vertices()[next],
                    };
                    steps.push(step);
                    let next_state = if next == target {
                        State::AtAnchor(next)
                    } else {
                        State::Transit { at: next, target }
                    };
                    self.walk_dfs(inc, anchors, start, next_state, left - 1, steps, budget, walks)?;
                    steps.pop();
                }
            }
        }
        Ok(())
    }

    /// Independent validity check for a walk with jumps, straight from the
    /// definition: steps chain, jumps sit at anchors, the walk starts and
    /// ends at anchors, and the maximal edge runs are hitting segments
    /// (interiors avoid both anchors) leaving alternating anchors.
    pub fn is_alternating_walk(&self, walk: &AlternatingWalk) -> bool {
        let (i, j) = self.pair;
        let is_anchor = |v: VertexId| v == i || v == j;
        if !is_anchor(walk.start) || walk.steps.is_empty() {
            return false;
        }
        let mut here = walk.start;
        let mut segment_from: Option<VertexId> = None;
        for step in &walk.steps {
            match step {
                WalkStep::Jump { at } => {
                    if segment_from.is_some() || *at != here || !is_anchor(*at) {
                        return false;
                    }
                }
                WalkStep::Edge { edge, from, to } => {
                    if *from != here {
                        return false;
                    }
                    let e = &self.scaled_graph.edges()[*edge];
                    let endpoints_ok = (e.u == *from && e.v == *to) || (e.u == *to && e.v == *from);
                    if !endpoints_ok {
                        return false;
                    }
                    match segment_from {
                        None => {
                            if !is_anchor(*from) {
                                return false;
                            }
                            if is_anchor(*to) {
                                // One-edge hitting segment must reach the
                                // opposite anchor.
                                if *to == *from {
                                    return false;
                                }
                            } else {
                                segment_from = Some(*from);
                            }
                        }
                        Some(origin) => {
                            if is_anchor(*to) {
                                if *to == origin {
                                    return false;
                                }
                                segment_from = None;
                            }
                        }
                    }
                    here = *to;
                    continue;
                }
            }
        }
        segment_from.is_none() && is_anchor(here)
    }

    /// Routes of length 1..=depth: rotation classes of alternating walks,
    /// graded by family. Each class is checked to contain exactly
    /// period-many walks.
    pub fn routes_up_to(
        &self,
        depth: usize,
        budget: &mut WalkBudget,
    ) -> Result<Vec<AlternatingRoute<S>>> {
        let mut routes = Vec::new();
        for k in 1..=depth {
            let walks = self.alternating_walks(k, budget)?;
            let mut groups: HashMap<RouteKey, RouteAccumulator> = HashMap::new();
            for walk in &walks {
                let (family, tokens) = self.tokenize(walk);
                let canonical = canonical_rotation(&tokens);
                let is_representative = tokens == canonical;
                let key = RouteKey {
                    family,
                    tokens: canonical,
                };
                let entry = groups.entry(key).or_insert_with(|| RouteAccumulator {
                    walk_count: 0,
                    canonical_trace: None,
                });
                entry.walk_count += 1;
                if is_representative {
                    entry.canonical_trace = Some(walk.vertex_trace());
                }
            }
            let mut keys: Vec<RouteKey> = groups.keys().cloned().collect();
            keys.sort();
            for key in keys {
                let acc = &groups[&key];
                let period = smallest_period(&key.tokens);
                if acc.walk_count != period {
                    return Err(Error::InternalConsistency(format!(
                        "route {:?} collected {} walks, expected its period {}",
                        key, acc.walk_count, period
                    )));
                }
                let mut weight = S::one();
                let mut hit_parts = 0;
                for token in &key.tokens {
                    if let RouteToken::Hit(edges) = token {
                        hit_parts += 1;
                        for &pos in edges {
                            weight = weight * self.scaled_graph.edges()[pos].weight.clone();
                        }
                    }
                }
                let part_count = key.tokens.len();
                let display_trace = acc.canonical_trace.clone().ok_or_else(|| {
                    Error::InternalConsistency(
                        "no member walk realized the canonical rotation".into(),
                    )
                })?;
                routes.push(AlternatingRoute {
                    family: key.family,
                    length: k,
                    part_count,
                    multiplicity: part_count / period,
                    weight,
                    hit_parts,
                    walk_count: acc.walk_count,
                    display_trace,
                    tokens: key.tokens,
                });
            }
        }
        Ok(routes)
    }

    fn tokenize(&self, walk: &AlternatingWalk) -> ((VertexId, VertexId), Vec<RouteToken>) {
        let mut tokens = Vec::new();
        let mut segment: Vec<usize> = Vec::new();
        let mut end = walk.start;
        for step in &walk.steps {
            match step {
                WalkStep::Jump { at } => {
                    debug_assert!(segment.is_empty());
                    tokens.push(RouteToken::Jump);
                    end = *at;
                }
                WalkStep::Edge { edge, to, .. } => {
                    segment.push(*edge);
                    let (i, j) = self.pair;
                    if *to == i || *to == j {
                        let mut reversed: Vec<usize> = segment.iter().rev().copied().collect();
                        if reversed < segment {
                            std::mem::swap(&mut segment, &mut reversed);
                        }
                        tokens.push(RouteToken::Hit(std::mem::take(&mut segment)));
                        end = *to;
                    }
                }
            }
        }
        debug_assert!(segment.is_empty());
        ((walk.start, end), tokens)
    }

    /// Bijection between circuits through the merged vertex and routes based
    /// at the second anchor, checked per length as count and (weight,
    /// multiplicity) multiset equality; odd negative-arc parity pairs with
    /// open routes, even with closed ones. The mirror digraph (pair
    /// reversed) must match the mirror families the same way.
    pub fn bijection_check(
        &self,
        g: &WeightedMultigraph<S>,
        t: &S,
        depth: usize,
        budget: &mut WalkBudget,
    ) -> Result<BijectionReport> {
        let mirror = jump_digraph(g, t, self.original_pair.1, self.original_pair.0)?;
        let circuits = circuits_up_to(&self.digraph, depth, budget)?;
        let mirror_circuits = circuits_up_to(&mirror.digraph, depth, budget)?;
        let routes = self.routes_up_to(depth, budget)?;

        let (wi, wj) = self.pair;
        let merged = wj;
        let mirror_merged = mirror.pair.1;
        let mut per_length = Vec::with_capacity(depth);
        let mut ok = true;
        let mut open_multiplicities_odd = true;
        for k in 1..=depth {
            let odd = signature_of_circuits(&circuits, &self.digraph, merged, k, true);
            let even = signature_of_circuits(&circuits, &self.digraph, merged, k, false);
            let m_odd = signature_of_circuits(&mirror_circuits, &mirror.digraph, mirror_merged, k, true);
            let m_even =
                signature_of_circuits(&mirror_circuits, &mirror.digraph, mirror_merged, k, false);
            let open = signature_of_routes(&routes, (wj, wi), k);
            let closed = signature_of_routes(&routes, (wj, wj), k);
            let m_open = signature_of_routes(&routes, (wi, wj), k);
            let m_closed = signature_of_routes(&routes, (wi, wi), k);
            for r in routes.iter().filter(|r| r.length == k) {
                if r.family == (wj, wi) && r.multiplicity % 2 == 0 {
                    open_multiplicities_odd = false;
                }
            }
            let matched = signatures_match(&odd, &open)
                && signatures_match(&even, &closed)
                && signatures_match(&m_odd, &m_open)
                && signatures_match(&m_even, &m_closed);
            if !matched {
                ok = false;
            }
            per_length.push(BijectionLengthCheck {
                length: k,
                circuits_odd: odd.len(),
                circuits_even: even.len(),
                open_routes: open.len(),
                closed_routes: closed.len(),
                mirror_open_routes: m_open.len(),
                mirror_closed_routes: m_closed.len(),
                matched,
            });
        }
        Ok(BijectionReport {
            per_length,
            open_multiplicities_odd,
            ok: ok && open_multiplicities_odd,
        })
    }

    /// Circuit expansion of -ln of the pair cofactor of I - tA, computed
    /// from power traces of the jump matrix. Diverges (error) if the jump
    /// matrix's spectral radius reaches 1.
    ///
    /// Up to the enumeration depth cap, the per-length sums are re-derived
    /// two independent ways and must agree: (a) enumerated circuits of the
    /// jump digraph; (b) circuits of the pair-deleted graph plus signed
    /// route sums (closed minus open).
    pub fn cofactor_expansion(
        &self,
        depth: usize,
        budget: &mut WalkBudget,
    ) -> Result<PairExpansion<S>> {
        if self.rho >= 1.0 {
            return Err(Error::Divergence { rho: self.rho });
        }
        let sums = logdet_expansion(&self.digraph, depth)?;
        let checked_depth = depth.min(DEFAULT_DEPTH_CAP);
        if checked_depth > 0 {
            let gamma = circuits_up_to(&self.digraph, checked_depth, budget)?;
            let gamma_sums = circuit_length_sums(&gamma, checked_depth);
            let (wi, wj) = self.pair;
            let deleted_sums = match self.scaled_graph.delete_vertices(&[wi, wj]) {
                Ok(h) => {
                    let circuits = circuits_up_to(&h.directed_version(), checked_depth, budget)?;
                    circuit_length_sums(&circuits, checked_depth)
                }
                Err(Error::EmptyGraph) => vec![S::zero(); checked_depth],
                Err(e) => return Err(e),
            };
            let routes = self.routes_up_to(checked_depth, budget)?;
            let scale = sums
                .per_length
                .iter()
                .map(|s| s.to_f64().abs())
                .fold(1.0, f64::max);
            for k in 1..=checked_depth {
                let mut figure = deleted_sums[k - 1].clone();
                for r in routes.iter().filter(|r| r.length == k) {
                    let term = r.weight.clone() / int(r.multiplicity as i64);
                    if r.family == (wj, wj) {
                        figure = figure + term;
                    } else if r.family == (wj, wi) {
                        figure = figure - term;
                    }
                }
                let enum_gap = (gamma_sums[k - 1].clone() - sums.per_length[k - 1].clone())
                    .to_f64()
                    .abs();
                let figure_gap = (figure.clone() - sums.per_length[k - 1].clone()).to_f64().abs();
                if enum_gap > DEFAULT_TOL * scale || figure_gap > DEFAULT_TOL * scale {
                    return Err(Error::InternalConsistency(format!(
                        "length-{} sums disagree: traces {}, circuits {}, figures {}",
                        k,
                        sums.per_length[k - 1],
                        gamma_sums[k - 1],
                        figure
                    )));
                }
            }
        }
        Ok(PairExpansion {
            sums,
            checked_depth,
        })
    }
}

/// DFS state of the alternating-walk enumeration.
#[derive(Debug, Clone, Copy)]
enum State {
    AtAnchor(usize),
    Transit { at: usize, target: usize },
}

/// One step of a walk with jumps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WalkStep {
    /// Traversal of the weight-1 loop at an anchor.
    Jump { at: VertexId },
    /// Traversal of a graph edge (position into the edge list) in the given
    /// direction.
    Edge {
        edge: usize,
        from: VertexId,
        to: VertexId,
    },
}

/// Alternating walk with jumps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingWalk {
    pub start: VertexId,
    pub steps: Vec<WalkStep>,
}

impl AlternatingWalk {
    /// Number of steps (jumps count as one step each).
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Anchor the walk ends at.
    pub fn end(&self) -> VertexId {
        match self.steps.last() {
            Some(WalkStep::Jump { at }) => *at,
            Some(WalkStep::Edge { to, .. }) => *to,
            None => self.start,
        }
    }

    /// The full vertex sequence v_0 .. v_k (jumps repeat their vertex).
    pub fn vertex_trace(&self) -> Vec<VertexId> {
        let mut trace = Vec::with_capacity(self.steps.len() + 1);
        trace.push(self.start);
        for step in &self.steps {
            match step {
                WalkStep::Jump { at } => trace.push(*at),
                WalkStep::Edge { to, .. } => trace.push(*to),
            }
        }
        trace
    }
}

/// One part of a route partition: a jump pair or a hitting pair, the latter
/// keyed by the lexicographically smaller of its two edge sequences.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RouteToken {
    Jump,
    Hit(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct RouteKey {
    family: (VertexId, VertexId),
    tokens: Vec<RouteToken>,
}

struct RouteAccumulator {
    walk_count: usize,
    canonical_trace: Option<Vec<VertexId>>,
}

/// Rotation class of alternating walks.
#[derive(Debug, Clone)]
pub struct AlternatingRoute<S> {
    /// (start anchor, end anchor); equal anchors mean a closed family.
    pub family: (VertexId, VertexId),
    /// Canonical rotation of the part tokens.
    pub tokens: Vec<RouteToken>,
    /// Number of steps of each member walk.
    pub length: usize,
    /// Number of parts.
    pub part_count: usize,
    /// part_count / smallest period of the token sequence.
    pub multiplicity: usize,
    /// Product of the hit-part edge weights (jumps weigh 1).
    pub weight: S,
    /// Number of hitting parts; odd for open families, even for closed.
    pub hit_parts: usize,
    /// Number of member walks (equals the token period).
    pub walk_count: usize,
    /// Vertex trace of the member walk realizing the canonical rotation.
    pub display_trace: Vec<VertexId>,
}

fn signature_of_circuits<S: Scalar>(
    circuits: &[Circuit<S>],
    d: &WeightedDigraph<S>,
    merged: VertexId,
    length: usize,
    odd: bool,
) -> Vec<(f64, usize)> {
    let mut sig: Vec<(f64, usize)> = circuits
        .iter()
        .filter(|c| c.length == length && c.visits(d, merged) && (c.negative_arcs % 2 == 1) == odd)
        .map(|c| (c.weight.to_f64().abs(), c.multiplicity))
        .collect();
    sort_signature(&mut sig);
    sig
}

/// Orders by multiplicity before weight so that figures of equal weight but
/// different multiplicity cannot be swapped by rounding noise.
fn sort_signature(sig: &mut [(f64, usize)]) {
    sig.sort_by(|a, b| {
        a.1.cmp(&b.1)
            .then(a.0.partial_cmp(&b.0).expect("finite weights"))
    });
}

fn signature_of_routes<S: Scalar>(
    routes: &[AlternatingRoute<S>],
    family: (VertexId, VertexId),
    length: usize,
) -> Vec<(f64, usize)> {
    let mut sig: Vec<(f64, usize)> = routes
        .iter()
        .filter(|r| r.length == length && r.family == family)
        .map(|r| (r.weight.to_f64().abs(), r.multiplicity))
        .collect();
    sort_signature(&mut sig);
    sig
}

fn signatures_match(a: &[(f64, usize)], b: &[(f64, usize)]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            let scale = x.0.abs().max(y.0.abs()).max(1.0);
            (x.0 - y.0).abs() <= 1e-9 * scale && x.1 == y.1
        })
}

/// Per-length outcome of the bijection check.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BijectionLengthCheck {
    pub length: usize,
    pub circuits_odd: usize,
    pub circuits_even: usize,
    pub open_routes: usize,
    pub closed_routes: usize,
    pub mirror_open_routes: usize,
    pub mirror_closed_routes: usize,
    pub matched: bool,
}

/// Outcome of the circuit/route bijection check.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BijectionReport {
    pub per_length: Vec<BijectionLengthCheck>,
    /// Every open route (second anchor to first) had odd multiplicity.
    pub open_multiplicities_odd: bool,
    pub ok: bool,
}

/// Expansion of -ln of the pair cofactor.
#[derive(Debug, Clone)]
pub struct PairExpansion<S> {
    /// Per-length circuit sums of the jump digraph and their running total,
    /// which converges to -ln of the (i,j) cofactor of I - tA.
    pub sums: CircuitSum<S>,
    /// Depth up to which the dual enumerated derivations were verified.
    pub checked_depth: usize,
}

/// A set of figures sharing a vertex trace and multiplicity, displayed as
/// `count/mu(trace)` with unit parts omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FigureCollection {
    pub count: usize,
    pub multiplicity: usize,
    pub trace: Vec<VertexId>,
}

impl std::fmt::Display for FigureCollection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.multiplicity > 1 {
            write!(f, "{}/{}", self.count, self.multiplicity)?;
        } else if self.count > 1 {
            write!(f, "{}", self.count)?;
        }
        let compact = self.trace.iter().all(|v| v.0 <= 9);
        write!(f, "(")?;
        for (idx, v) in self.trace.iter().enumerate() {
            if idx > 0 && !compact {
                write!(f, ",")?;
            }
            write!(f, "{}", v.0)?;
        }
        write!(f, ")")
    }
}

/// Groups (trace, multiplicity) pairs into display collections, sorted by
/// trace and descending multiplicity.
pub fn collect_figures(items: impl IntoIterator<Item = (Vec<VertexId>, usize)>) -> Vec<FigureCollection> {
    let mut counts: BTreeMap<(Vec<VertexId>, std::cmp::Reverse<usize>), usize> = BTreeMap::new();
    for (trace, mu) in items {
        *counts.entry((trace, std::cmp::Reverse(mu))).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .map(|((trace, mu), count)| FigureCollection {
            count,
            multiplicity: mu.0,
            trace,
        })
        .collect()
}

/// One length of the distance expansion.
#[derive(Debug, Clone)]
pub struct ExpansionRow<S> {
    pub length: usize,
    /// Circuits through one anchor avoiding the other (both minors).
    pub circuit_figures: Vec<FigureCollection>,
    /// Closed routes at either anchor.
    pub closed_route_figures: Vec<FigureCollection>,
    /// Open routes in either direction.
    pub open_route_figures: Vec<FigureCollection>,
    /// -circuits + closed - open, summed as w/mu.
    pub signed_sum: S,
    /// Half the running total of the signed sums: the distance partial sum.
    pub cumulative: S,
}

/// Truncated distance expansion for a vertex pair.
#[derive(Debug, Clone)]
pub struct DistanceExpansion<S> {
    pub rows: Vec<ExpansionRow<S>>,
    /// Final partial sum (half the signed total).
    pub total: S,
    /// The distance computed directly through the walk weight matrix.
    pub exact: f64,
    /// |total - exact| in floating point.
    pub residual: f64,
    /// Spectral radius of the jump matrix: the expansion's convergence rate.
    pub rho_jump: f64,
}

/// Expands the walk distance d_t(i, j) as per-length signed figure sums, with
/// Rotates a circuit's vertex cycle to start at the anchor it visits and
/// closes it, picking the smallest such rotation when the anchor repeats.
fn anchored_cycle(cycle: &[VertexId], anchor: VertexId) -> Vec<VertexId> {
    let k = cycle.len();
    let mut best: Option<Vec<VertexId>> = None;
    for p in 0..k {
        if cycle[p] != anchor {
            continue;
        }
        let rotated: Vec<VertexId> = (0..k).map(|s| cycle[(p + s) % k]).collect();
        if best.as_ref().map_or(true, |b| rotated < *b) {
            best = Some(rotated);
        }
    }
    let mut out = best.unwrap_or_else(|| cycle.to_vec());
    if let Some(&first) = out.first() {
        out.push(first);
    }
    out
}

/// figure-collection listings for every length.
pub fn distance_expansion<S: Scalar>(
    g: &WeightedMultigraph<S>,
    t: &S,
    i: VertexId,
    j: VertexId,
    depth: usize,
    budget: &mut WalkBudget,
) -> Result<DistanceExpansion<S>> {
    let jd = jump_digraph(g, t, i, j)?;
    if jd.rho() >= 1.0 {
        return Err(Error::Divergence { rho: jd.rho() });
    }
    let tg = g.scaled(t)?;
    let without_j = tg.delete_vertices(&[j])?.directed_version();
    let without_i = tg.delete_vertices(&[i])?.directed_version();
    let circuits_i = circuits_up_to(&without_j, depth, budget)?;
    let circuits_j = circuits_up_to(&without_i, depth, budget)?;
    let routes = jd.routes_up_to(depth, budget)?;
    let (wi, wj) = jd.pair();

    let mut rows = Vec::with_capacity(depth);
    let mut running = S::zero();
    let half = S::from_ratio(1, 2);
    for k in 1..=depth {
        let mut signed = S::zero();
        let mut circuit_items = Vec::new();
        for (circuits, d, through) in [
            (&circuits_i, &without_j, i),
            (&circuits_j, &without_i, j),
        ] {
            for c in circuits.iter().filter(|c| c.length == k && c.visits(d, through)) {
                signed = signed - c.weight.clone() / int(c.multiplicity as i64);
                let trace = anchored_cycle(&c.canonical_vertex_cycle(d), through);
                circuit_items.push((trace, c.multiplicity));
            }
        }
        let mut closed_items = Vec::new();
        let mut open_items = Vec::new();
        for r in routes.iter().filter(|r| r.length == k) {
            let term = r.weight.clone() / int(r.multiplicity as i64);
            let trace: Vec<VertexId> = r
                .display_trace
                .iter()
                .map(|&v| jd.original_label(v))
                .collect();
            if r.family == (wj, wj) || r.family == (wi, wi) {
                signed = signed + term;
                closed_items.push((trace, r.multiplicity));
            } else {
                signed = signed - term;
                open_items.push((trace, r.multiplicity));
            }
        }
        running = running + signed.clone();
        rows.push(ExpansionRow {
            length: k,
            circuit_figures: collect_figures(circuit_items),
            closed_route_figures: collect_figures(closed_items),
            open_route_figures: collect_figures(open_items),
            signed_sum: signed,
            cumulative: half.clone() * running.clone(),
        });
    }
    let total = half * running;
    let exact = walk_distances(&walk_weights(g, t)?, 1.0)?.distance(i, j)?;
    let residual = (total.to_f64() - exact).abs();
    Ok(DistanceExpansion {
        rows,
        total,
        exact,
        residual,
        rho_jump: jd.rho(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::WalkBudget;
    use approx::assert_relative_eq;
    use num_rational::BigRational;
    use crate::scalar::int;

    fn example_graph() -> WeightedMultigraph<f64> {
        WeightedMultigraph::new(3, &[(1, 2, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap()
    }

    fn example_rational() -> WeightedMultigraph<BigRational> {
        WeightedMultigraph::new(
            3,
            &[(1, 2, int::<BigRational>(1)), (1, 2, int(1)), (2, 3, int(1))],
        )
        .unwrap()
    }

    fn example_jump() -> JumpDigraph<f64> {
        jump_digraph(&example_graph(), &(1.0 / 3.0), VertexId(1), VertexId(3)).unwrap()
    }

    #[test]
    fn swap_transform_examples() {
        let t13: DenseMatrix<f64> = swap_transform(3, 1, 3);
        assert_eq!(t13, DenseMatrix::from_rows(vec![vec![0.0, 1.0], vec![-1.0, 0.0]]));
        let t31: DenseMatrix<f64> = swap_transform(3, 3, 1);
        assert_eq!(t31, DenseMatrix::from_rows(vec![vec![0.0, -1.0], vec![1.0, 0.0]]));
        assert_eq!(t13.transpose(), t31);
    }

    #[test]
    fn swap_transform_properties() {
        for n in 2..=6usize {
            for i in 1..=n {
                for j in 1..=n {
                    if i == j {
                        continue;
                    }
                    let t: DenseMatrix<f64> = swap_transform(n, i, j);
                    // Orthogonal signed permutation.
                    let gram = t.mul(&t.transpose());
                    assert!(gram.max_abs_diff(&DenseMatrix::identity(n - 1)) < 1e-12);
                    // Transposing swaps the pair.
                    assert_eq!(t.transpose(), swap_transform::<f64>(n, j, i));
                    // Determinant tracks pair parity.
                    let expect = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                    assert_relative_eq!(t.determinant(), expect, epsilon = 1e-12);
                    g_inverse_check(n, i, j).unwrap();
                }
            }
        }
    }

    #[test]
    fn jump_matrix_of_the_example() {
        let jd = example_jump();
        let expect = DenseMatrix::from_rows(vec![
            vec![0.0, -2.0 / 3.0],
            vec![1.0 / 3.0, 1.0],
        ]);
        assert!(jd.matrix().max_abs_diff(&expect) < 1e-15);
        assert_relative_eq!(jd.rho(), 2.0 / 3.0, epsilon = 1e-10);
        assert!(!jd.relabeled());
        assert_eq!(jd.merged_vertex(), VertexId(3));
        // One jump loop, one outgoing arc, two negated incoming arcs.
        let d = jd.digraph();
        assert_eq!(d.arc_count(), 4);
        let negatives = d.arcs().iter().filter(|a| a.weight < 0.0).count();
        assert_eq!(negatives, 2);
        assert!(d.arcs().iter().any(|a| a.is_loop() && a.weight == 1.0));
    }

    #[test]
    fn jump_matrix_constructions_agree_exactly() {
        let g = example_rational();
        let third = BigRational::from_ratio(1, 3);
        let (i, j) = (VertexId(1), VertexId(3));
        let a = jump_matrix_algebraic(&g, &third, i, j).unwrap();
        let b = jump_matrix_procedural(&g, &third, i, j).unwrap();
        let jd = jump_digraph(&g, &third, i, j).unwrap();
        assert_eq!(a, b);
        assert_eq!(&a, jd.matrix());
        let expect = DenseMatrix::from_rows(vec![
            vec![int::<BigRational>(0), BigRational::from_ratio(-2, 3)],
            vec![BigRational::from_ratio(1, 3), int(1)],
        ]);
        assert_eq!(a, expect);
    }

    #[test]
    fn odd_pairs_are_relabeled() {
        let g = example_graph();
        let jd = jump_digraph(&g, &0.2, VertexId(1), VertexId(2)).unwrap();
        assert!(jd.relabeled());
        assert_eq!(jd.pair(), (VertexId(1), VertexId(3)));
        assert_eq!(jd.original_pair(), (VertexId(1), VertexId(2)));
        assert_eq!(jd.original_label(VertexId(3)), VertexId(2));
        assert_eq!(jd.original_label(VertexId(2)), VertexId(3));
        // The cofactor expansion still reproduces the original pair's value.
        let mut budget = WalkBudget::standard();
        let exp = jd.cofactor_expansion(40, &mut budget).unwrap();
        let mut ta = g.adjacency();
        ta.scale_in_place(&0.2);
        let b = DenseMatrix::identity(3).sub(&ta);
        let cof = -b.minor_without(0, 1).determinant(); // (-1)^{1+2} det
        assert!(cof > 0.0);
        assert_relative_eq!((-exp.sums.total()).exp(), cof, epsilon = 1e-9);
    }

    #[test]
    fn alternating_walk_counts_on_the_example() {
        let jd = example_jump();
        let mut budget = WalkBudget::standard();
        let counts: Vec<usize> = (1..=3)
            .map(|k| jd.alternating_walks(k, &mut budget).unwrap().len())
            .collect();
        // k=1: a jump at each anchor. k=2: two jump pairs plus four hitting
        // walks (two parallel edges, both directions). k=3: two jump triples
        // plus eight jump-plus-hit walks.
        assert_eq!(counts, vec![2, 6, 10]);
        for k in 1..=3 {
            for walk in jd.alternating_walks(k, &mut budget).unwrap() {
                assert!(jd.is_alternating_walk(&walk), "{walk:?}");
            }
        }
    }

    #[test]
    fn walk_validator_rejects_malformed_walks() {
        let jd = example_jump();
        // Jump away from an anchor.
        let bad = AlternatingWalk {
            start: VertexId(1),
            steps: vec![
                WalkStep::Edge { edge: 0, from: VertexId(1), to: VertexId(2) },
                WalkStep::Jump { at: VertexId(2) },
            ],
        };
        assert!(!jd.is_alternating_walk(&bad));
        // Segment returning to its own anchor.
        let bad = AlternatingWalk {
            start: VertexId(1),
            steps: vec![
                WalkStep::Edge { edge: 0, from: VertexId(1), to: VertexId(2) },
                WalkStep::Edge { edge: 1, from: VertexId(2), to: VertexId(1) },
            ],
        };
        assert!(!jd.is_alternating_walk(&bad));
        // Ends in mid-segment.
        let bad = AlternatingWalk {
            start: VertexId(1),
            steps: vec![WalkStep::Edge { edge: 0, from: VertexId(1), to: VertexId(2) }],
        };
        assert!(!jd.is_alternating_walk(&bad));
    }

    #[test]
    fn routes_of_the_example_match_the_expected_collections() {
        let jd = example_jump();
        let mut budget = WalkBudget::standard();
        let routes = jd.routes_up_to(3, &mut budget).unwrap();
        let summarize = |k: usize, family: (usize, usize)| -> Vec<String> {
            let fam = (VertexId(family.0), VertexId(family.1));
            collect_figures(
                routes
                    .iter()
                    .filter(|r| r.length == k && r.family == fam)
                    .map(|r| (r.display_trace.clone(), r.multiplicity)),
            )
            .iter()
            .map(|c| c.to_string())
            .collect()
        };
        assert_eq!(summarize(1, (1, 1)), vec!["(11)"]);
        assert_eq!(summarize(1, (3, 3)), vec!["(33)"]);
        assert_eq!(summarize(2, (1, 1)), vec!["1/2(111)"]);
        assert_eq!(summarize(2, (1, 3)), vec!["2(123)"]);
        assert_eq!(summarize(2, (3, 1)), vec!["2(321)"]);
        assert_eq!(summarize(3, (1, 1)), vec!["1/3(1111)"]);
        assert_eq!(summarize(3, (1, 3)), vec!["2(1123)"]);
        assert_eq!(summarize(3, (3, 1)), vec!["2(3321)"]);
        assert!(summarize(3, (3, 3)).len() == 1);
    }

    #[test]
    fn bijection_holds_on_the_example() {
        let g = example_graph();
        let jd = example_jump();
        let mut budget = WalkBudget::standard();
        let report = jd.bijection_check(&g, &(1.0 / 3.0), 5, &mut budget).unwrap();
        assert!(report.ok, "{report:?}");
        assert!(report.open_multiplicities_odd);
        let k2 = &report.per_length[1];
        assert_eq!(k2.circuits_odd, 2);
        assert_eq!(k2.circuits_even, 1);
        assert_eq!(k2.open_routes, 2);
        assert_eq!(k2.closed_routes, 1);
    }

    #[test]
    fn pair_cofactor_expansion_converges() {
        let jd = example_jump();
        let mut budget = WalkBudget::standard();
        let exp = jd.cofactor_expansion(40, &mut budget).unwrap();
        assert_eq!(exp.checked_depth, 8);
        assert!(exp.sums.convergent);
        let target = -(2.0f64 / 9.0).ln();
        let bound = (2.0f64 / 3.0).powi(40) / (40.0 * (1.0 / 3.0));
        assert!((exp.sums.total() - target).abs() <= bound);
    }

    #[test]
    fn distance_expansion_matches_the_worked_table() {
        let g = example_graph();
        let mut budget = WalkBudget::standard();
        let exp =
            distance_expansion(&g, &(1.0 / 3.0), VertexId(1), VertexId(3), 5, &mut budget)
                .unwrap();
        assert_relative_eq!(exp.rows[0].signed_sum, 2.0, epsilon = 1e-14);
        assert_relative_eq!(exp.rows[1].signed_sum, 0.0, epsilon = 1e-14);
        assert_relative_eq!(exp.rows[2].signed_sum, 2.0 / 9.0, epsilon = 1e-14);
        assert_relative_eq!(exp.rows[3].signed_sum, 0.0, epsilon = 1e-14);
        assert_relative_eq!(exp.rows[4].signed_sum, 22.0 / 405.0, epsilon = 1e-14);
        assert_relative_eq!(exp.total, 461.0 / 405.0, epsilon = 1e-12);
        assert_relative_eq!(exp.exact, 0.5 * 10f64.ln(), epsilon = 1e-12);
        assert_relative_eq!(exp.rho_jump, 2.0 / 3.0, epsilon = 1e-9);
        let relative = exp.residual / exp.exact;
        assert!(relative > 0.010 && relative < 0.013, "relative {relative}");
    }

    #[test]
    fn distance_expansion_exact_rational() {
        let g = example_rational();
        let third = BigRational::from_ratio(1, 3);
        let mut budget = WalkBudget::standard();
        let exp = distance_expansion(&g, &third, VertexId(1), VertexId(3), 5, &mut budget).unwrap();
        assert_eq!(exp.rows[1].signed_sum, int(0));
        assert_eq!(exp.rows[3].signed_sum, int(0));
        assert_eq!(exp.total, BigRational::from_ratio(461, 405));
    }

    #[test]
    fn validation_errors() {
        let k2 = WeightedMultigraph::new(2, &[(1, 2, 1.0)]).unwrap();
        assert!(matches!(
            jump_digraph(&k2, &0.5, VertexId(1), VertexId(2)),
            Err(Error::Unsupported { min: 3, .. })
        ));
        let g = example_graph();
        assert!(matches!(
            jump_digraph(&g, &0.5, VertexId(1), VertexId(3)),
            Err(Error::ParameterOutOfRange { .. })
        ));
        assert!(matches!(
            jump_digraph(&g, &0.2, VertexId(1), VertexId(1)),
            Err(Error::InvalidParameter(_))
        ));
    }
}
