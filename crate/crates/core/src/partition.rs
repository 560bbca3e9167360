//! Triangle-plus-matching partitions.
//!
//! A factor-critical shadow graph of a 3-uniform hypergraph always splits
//! into one hyperedge and a perfect matching of the rest. The construction
//! takes a maximal odd ear decomposition, picks an odd edge `ab` on the last
//! nontrivial ear and a hyperedge `{a, b, v}`, then builds a perfect matching
//! of `G - v` through `ab` and swaps `ab` for the hyperedge.

use thiserror::Error;

use crate::bipartite::{extract_with_order, BipartiteError, BipartiteGraph};
use crate::ear::{odd_ear_decomposition, EarDecomposition, EarError};
use crate::gen::{Seed, SplitMix64};
use crate::hypergraph::{Hypergraph, VertexId};
use crate::matching::{perfect_matching, perfect_matching_on, Matching};
use crate::verify::{verify, TriangleRule, VerifyOptions};

/// Extraction orders tried by [`lu_subgraph`] before giving up on a residual
/// graph with too many odd components.
pub const LU_ATTEMPTS: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("hypergraph is not {k}-uniform: hyperedge {hyperedge:?}")]
    NotUniform { k: usize, hyperedge: Vec<VertexId> },
    #[error("hypergraph is not {k}-regular: vertex {vertex} has degree {degree}")]
    NotRegular {
        k: usize,
        vertex: VertexId,
        degree: usize,
    },
    #[error("shadow graph is disconnected ({components} components); solve components separately")]
    Disconnected { components: usize },
    #[error("shadow graph is not factor-critical: G - {witness} has no perfect matching")]
    NotFactorCritical { witness: VertexId },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Bipartite(#[from] BipartiteError),
    #[error("residual hypergraph has {found} odd components, expected at most {expected}")]
    OddResidualComponents { found: usize, expected: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<EarError> for SolveError {
    fn from(e: EarError) -> Self {
        match e {
            EarError::NotFactorCritical { witness } => SolveError::NotFactorCritical { witness },
            EarError::TooSmall(n) => SolveError::PreconditionViolated(format!(
                "{n} vertices cannot carry an odd circuit"
            )),
            other => SolveError::Internal(other.to_string()),
        }
    }
}

/// At most one triangle plus disjoint pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriMatchingPartition {
    triangle: Option<[VertexId; 3]>,
    pairs: Vec<(VertexId, VertexId)>,
}

impl TriMatchingPartition {
    pub fn new(
        triangle: Option<[VertexId; 3]>,
        pairs: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Self {
        let triangle = triangle.map(|mut t| {
            t.sort_unstable();
            t
        });
        TriMatchingPartition {
            triangle,
            pairs: Matching::from_pairs(pairs).pairs().to_vec(),
        }
    }

    pub fn triangle(&self) -> Option<[VertexId; 3]> {
        self.triangle
    }

    pub fn pairs(&self) -> &[(VertexId, VertexId)] {
        &self.pairs
    }

    pub fn is_perfect_matching(&self) -> bool {
        self.triangle.is_none()
    }

    pub fn kind(&self) -> &'static str {
        if self.is_perfect_matching() {
            "perfect-matching"
        } else {
            "tri-partition"
        }
    }

    fn relabel(&self, map: &[VertexId]) -> Self {
        TriMatchingPartition::new(
            self.triangle.map(|t| t.map(|v| map[v])),
            self.pairs.iter().map(|&(u, v)| (map[u], map[v])),
        )
    }
}

/// Kept edges of a bipartite graph: B-degrees 1, A-degrees 0 or 2 except
/// at most one A-vertex of degree 3 (per connected component).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LuSubgraph {
    pub kept: Vec<(usize, usize)>,
}

fn check_uniform_regular(h: &Hypergraph, k: usize) -> Result<(), SolveError> {
    let report = h.validate(k);
    if let Some(e) = report.first_bad_hyperedge {
        return Err(SolveError::NotUniform { k, hyperedge: e });
    }
    if let Some((vertex, degree)) = report.first_bad_vertex {
        return Err(SolveError::NotRegular { k, vertex, degree });
    }
    Ok(())
}

fn check_connected(h: &Hypergraph) -> Result<(), SolveError> {
    let components = h.shadow_graph().components().len();
    if components > 1 {
        return Err(SolveError::Disconnected { components });
    }
    Ok(())
}

/// Perfect matching of the host restricted to vertices on ears before
/// `ear`, with `avoid` removed.
fn prefix_matching(
    d: &EarDecomposition<'_>,
    ear: usize,
    avoid: VertexId,
) -> Result<Vec<(VertexId, VertexId)>, SolveError> {
    let host = d.host();
    let mut removed: Vec<VertexId> = (0..host.n()).filter(|&w| d.label(w) >= ear).collect();
    removed.push(avoid);
    perfect_matching_on(host, &removed)
        .map(|m| m.pairs().to_vec())
        .ok_or_else(|| {
            SolveError::Internal(format!(
                "ears 0..{ear} minus vertex {avoid} have no perfect matching"
            ))
        })
}

/// A perfect matching of `host - v` containing the odd edge `ab`, where
/// `ab` lies on a nontrivial ear and `v` first appears on an earlier ear.
pub fn lemma1_matching(
    d: &EarDecomposition<'_>,
    e: (VertexId, VertexId),
    v: VertexId,
) -> Result<Matching, SolveError> {
    let (a, b) = e;
    let host = d.host();
    let n = host.n();
    if v >= n || a >= n || b >= n {
        return Err(SolveError::PreconditionViolated(
            "vertex out of range".into(),
        ));
    }
    let odd = d
        .is_odd_edge(a, b)
        .map_err(|_| SolveError::PreconditionViolated(format!("{a}-{b} is not an edge")))?;
    if !odd {
        return Err(SolveError::PreconditionViolated(format!(
            "{a}-{b} is not an odd edge"
        )));
    }
    let j = d.label(a);
    let on = d.ear_of_edge(a, b).expect("edge checked");
    if on != j || d.ears()[j].is_trivial() {
        return Err(SolveError::PreconditionViolated(format!(
            "{a}-{b} does not lie on a nontrivial ear"
        )));
    }
    if d.label(v) >= j {
        return Err(SolveError::PreconditionViolated(format!(
            "ear({v}) = {} is not below ear({a}) = {j}",
            d.label(v)
        )));
    }
    let mut pairs = prefix_matching(d, j, v)?;
    for ear in &d.ears()[j..] {
        pairs.extend(ear.odd_edges());
    }
    let m = Matching::from_pairs(pairs);
    debug_assert!(m.contains(a, b));
    Ok(m)
}

/// Partition of a 3-uniform hypergraph with factor-critical shadow into one
/// hyperedge and a perfect matching of the remaining shadow graph.
pub fn lemma2_partition(h: &Hypergraph) -> Result<TriMatchingPartition, SolveError> {
    if let Some(e) = h.validate(3).first_bad_hyperedge {
        return Err(SolveError::NotUniform { k: 3, hyperedge: e });
    }
    let g = h.shadow_graph();
    let d = odd_ear_decomposition(&g)?.maximalize()?;
    partition_from_maximal(h, &d)
}

/// The construction behind [`lemma2_partition`] on a given maximal decomposition.
pub fn partition_from_maximal(
    h: &Hypergraph,
    d: &EarDecomposition<'_>,
) -> Result<TriMatchingPartition, SolveError> {
    let k = d.last_nontrivial_ear();
    let ear = &d.ears()[k];
    let x = ear.vertices();
    let (a, b) = (x[1], x[2]);
    let hyperedge = h
        .first_hyperedge_containing(&[a, b])
        .map(|i| &h.hyperedges()[i])
        .ok_or_else(|| SolveError::Internal(format!("shadow edge {a}-{b} in no hyperedge")))?;
    let v = *hyperedge
        .iter()
        .find(|&&w| w != a && w != b)
        .ok_or_else(|| SolveError::Internal("hyperedge has fewer than 3 vertices".into()))?;
    let triangle = [a, b, v];

    let mut pairs = if d.label(v) < k {
        lemma1_matching(d, (a, b), v)?.pairs().to_vec()
    } else {
        same_ear_matching(d, k, a, b, v)?
    };
    let before = pairs.len();
    pairs.retain(|&p| p != (a, b) && p != (b, a));
    if pairs.len() + 1 != before {
        return Err(SolveError::Internal(format!(
            "matching does not contain {a}-{b}"
        )));
    }
    Ok(TriMatchingPartition::new(Some(triangle), pairs))
}

/// Perfect matching of `G - v` through `ab` when `v`, `a` and `b` all first
/// appear on the last nontrivial ear `k`.
fn same_ear_matching(
    d: &EarDecomposition<'_>,
    k: usize,
    a: VertexId,
    b: VertexId,
    v: VertexId,
) -> Result<Vec<(VertexId, VertexId)>, SolveError> {
    let x = d.ears()[k].vertices();
    let l = x.len() - 1;
    let mut seq: Vec<VertexId> = if k == 0 {
        // collapse both endpoints onto a circuit vertex at odd distance from
        // a (away from b) and from b (away from a)
        let (ia, ib) = (d.position(a), d.position(b));
        let (ia, ib) = if (ia + 1) % l == ib {
            (ia, ib)
        } else {
            (ib, ia)
        };
        let j = (0..l)
            .find(|&j| j != ia && j != ib && (ia + l - j) % l % 2 == 1 && (j + l - ib) % l % 2 == 1)
            .ok_or_else(|| {
                SolveError::Internal("no circuit vertex at odd distance from the odd edge".into())
            })?;
        x[j..l].iter().chain(&x[..=j]).copied().collect()
    } else {
        x.to_vec()
    };
    let find = |seq: &[VertexId], w: VertexId| seq[..l].iter().position(|&y| y == w);
    let (Some(mut pa), Some(mut pb), Some(mut pv)) = (find(&seq, a), find(&seq, b), find(&seq, v))
    else {
        return Err(SolveError::Internal(
            "triangle vertex missing from its ear".into(),
        ));
    };
    if pa.abs_diff(pb) != 1 {
        return Err(SolveError::Internal(format!(
            "{a}-{b} is not consecutive on ear {k}"
        )));
    }
    if pv > pa.max(pb) {
        seq.reverse();
        pa = l - pa;
        pb = l - pb;
        pv = l - pv;
    }
    if pa > pb {
        std::mem::swap(&mut pa, &mut pb);
    }
    if pa % 2 == 0 {
        return Err(SolveError::Internal(format!(
            "{a}-{b} sits at even distance from the ear end"
        )));
    }
    if pv % 2 == 1 {
        return Err(SolveError::Internal(format!(
            "path from ear end to {v} is odd; decomposition is not maximal"
        )));
    }
    let mut pairs: Vec<(VertexId, VertexId)> =
        (0..pv).step_by(2).map(|t| (seq[t], seq[t + 1])).collect();
    pairs.extend((pv + 1..l - 1).step_by(2).map(|t| (seq[t], seq[t + 1])));
    if k > 0 {
        pairs.extend(prefix_matching(d, k, seq[0])?);
    }
    Ok(pairs)
}

/// Perfect matching (even order) or triangle-plus-matching partition (odd
/// order) of a connected 3-uniform 3-regular hypergraph.
pub fn solve_3u3r(h: &Hypergraph) -> Result<TriMatchingPartition, SolveError> {
    check_uniform_regular(h, 3)?;
    check_connected(h)?;
    let g = h.shadow_graph();
    let cert = if h.n().is_multiple_of(2) {
        let m = perfect_matching(&g).ok_or_else(|| {
            SolveError::Internal("even shadow graph has no perfect matching".into())
        })?;
        TriMatchingPartition::new(None, m.pairs().iter().copied())
    } else {
        let d = match odd_ear_decomposition(&g) {
            Ok(d) => d,
            Err(EarError::NotFactorCritical { witness }) => {
                return Err(SolveError::Internal(format!(
                    "shadow graph is not factor-critical (witness {witness})"
                )))
            }
            Err(e) => return Err(e.into()),
        };
        partition_from_maximal(h, &d.maximalize()?)?
    };
    let report = verify(h, &cert, VerifyOptions::default());
    if !report.is_ok() {
        return Err(SolveError::Internal(format!(
            "certificate failed verification: {report}"
        )));
    }
    Ok(cert)
}

/// One certificate per connected component, in global vertex ids, ordered
/// by smallest vertex.
pub fn solve_components(h: &Hypergraph) -> Result<Vec<TriMatchingPartition>, SolveError> {
    check_uniform_regular(h, 3)?;
    solve_per_component(h, solve_3u3r)
}

fn solve_per_component(
    h: &Hypergraph,
    solve: impl Fn(&Hypergraph) -> Result<TriMatchingPartition, SolveError>,
) -> Result<Vec<TriMatchingPartition>, SolveError> {
    h.shadow_graph()
        .components()
        .blocks
        .iter()
        .map(|block| solve(&h.restrict(block)).map(|c| c.relabel(block)))
        .collect()
}

/// Component-wise [`solve_k_uniform`].
pub fn solve_k_uniform_components(
    h: &Hypergraph,
    k: usize,
) -> Result<Vec<TriMatchingPartition>, SolveError> {
    check_uniform_regular(h, k)?;
    solve_per_component(h, |sub| solve_k_uniform(sub, k))
}

fn odd_b_components(g: &BipartiteGraph) -> Vec<usize> {
    let comps = g.to_simple().components();
    comps
        .blocks
        .iter()
        .map(|block| block.iter().filter(|&&v| v >= g.n_a()).count())
        .collect()
}

/// Subgraph of a k-regular bipartite graph (k >= 3) with every B-degree 1 and
/// A-degrees 0 or 2, except one A-vertex of degree 3 per component with an
/// odd number of B-vertices.
///
/// Removes k - 3 disjoint perfect matchings, reads the 3-regular residual as
/// a hypergraph on B (one hyperedge per A-vertex), solves it, and keeps the
/// edges from each block to an A-vertex whose neighborhood contains it. When
/// the residual splits into more odd components than the input has, other
/// extraction orders are tried.
pub fn lu_subgraph(g: &BipartiteGraph, k: usize) -> Result<LuSubgraph, SolveError> {
    if k < 3 {
        return Err(SolveError::PreconditionViolated(format!("k = {k} < 3")));
    }
    g.check_regular(k)?;
    let expected = odd_b_components(g).iter().filter(|&&c| c % 2 == 1).count();
    let mut found = 0;
    for attempt in 0..LU_ATTEMPTS {
        let mut rng = SplitMix64::new(Seed(attempt));
        let removed = extract_with_order(g, k - 3, (attempt > 0).then_some(&mut rng))?;
        let removed: Vec<(usize, usize)> = removed.into_iter().flat_map(|m| m.pairs).collect();
        let residual = g.without_edges(&removed);
        found = odd_b_components(&residual)
            .iter()
            .filter(|&&c| c % 2 == 1)
            .count();
        if found > expected {
            continue;
        }
        let h = Hypergraph::new(g.n_b(), (0..g.n_a()).map(|a| residual.neighbors(a)))
            .map_err(|e| SolveError::Internal(e.to_string()))?;
        let certs = solve_components(&h)?;
        return assign_blocks(&residual, &certs).map(|kept| LuSubgraph { kept });
    }
    Err(SolveError::OddResidualComponents { found, expected })
}

fn assign_blocks(
    residual: &BipartiteGraph,
    certs: &[TriMatchingPartition],
) -> Result<Vec<(usize, usize)>, SolveError> {
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); residual.n_b()];
    for a in 0..residual.n_a() {
        for &b in residual.neighbors(a) {
            owners[b].push(a);
        }
    }
    let mut used = vec![false; residual.n_a()];
    let mut kept = Vec::new();
    let blocks = certs.iter().flat_map(|c| {
        c.triangle()
            .map(|t| t.to_vec())
            .into_iter()
            .chain(c.pairs().iter().map(|&(u, v)| vec![u, v]))
    });
    for block in blocks {
        let a = owners[block[0]]
            .iter()
            .copied()
            .find(|&a| block.iter().all(|&b| residual.has_edge(a, b)))
            .ok_or_else(|| {
                SolveError::Internal(format!("block {block:?} lies in no neighborhood"))
            })?;
        if used[a] {
            return Err(SolveError::Internal(format!(
                "A-vertex {a} holds two blocks"
            )));
        }
        used[a] = true;
        kept.extend(block.iter().map(|&b| (a, b)));
    }
    kept.sort_unstable();
    Ok(kept)
}

/// Vertex/hyperedge incidence graph: A = hyperedges (expanded by
/// multiplicity), B = vertices.
pub fn incidence_graph(h: &Hypergraph) -> BipartiteGraph {
    let mut edges = Vec::new();
    let mut a = 0;
    for (e, mult) in h.iter() {
        for _ in 0..mult {
            edges.extend(e.iter().map(|&v| (a, v)));
            a += 1;
        }
    }
    BipartiteGraph::new(a, h.n(), &edges).expect("hyperedges have distinct vertices")
}

/// Partition of a connected k-uniform k-regular hypergraph (k >= 3) into
/// 2-subsets of hyperedges and at most one 3-subset of a hyperedge.
pub fn solve_k_uniform(h: &Hypergraph, k: usize) -> Result<TriMatchingPartition, SolveError> {
    if k < 3 {
        return Err(SolveError::PreconditionViolated(format!("k = {k} < 3")));
    }
    check_uniform_regular(h, k)?;
    check_connected(h)?;
    let lu = lu_subgraph(&incidence_graph(h), k)?;
    let mut groups: Vec<Vec<VertexId>> = Vec::new();
    let mut last = usize::MAX;
    for &(a, b) in &lu.kept {
        if a != last {
            groups.push(Vec::new());
            last = a;
        }
        groups.last_mut().unwrap().push(b);
    }
    let mut triangle = None;
    let mut pairs = Vec::new();
    for g in groups {
        match *g.as_slice() {
            [u, v] => pairs.push((u, v)),
            [u, v, w] if triangle.is_none() => triangle = Some([u, v, w]),
            _ => return Err(SolveError::Internal(format!("unexpected block {g:?}"))),
        }
    }
    let cert = TriMatchingPartition::new(triangle, pairs);
    let opts = VerifyOptions {
        triangle_rule: TriangleRule::SubsetOfHyperedge,
        per_component: false,
    };
    let report = verify(h, &cert, opts);
    if !report.is_ok() {
        return Err(SolveError::Internal(format!(
            "certificate failed verification: {report}"
        )));
    }
    Ok(cert)
}
