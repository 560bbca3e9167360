//! Odd ear decompositions of factor-critical graphs.
//!
//! Every ear is stored as a vertex sequence whose first and last entries are
//! its endpoints; the initial circuit repeats its first vertex at the end, so
//! an ear with `L` edges always lists `L + 1` vertices.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::hypergraph::{SimpleGraph, VertexId};
use crate::matching::Blossom;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EarError {
    #[error("graph is not factor-critical: G - {witness} has no perfect matching")]
    NotFactorCritical { witness: VertexId },
    #[error("graph with {0} vertices has no odd circuit")]
    TooSmall(usize),
    #[error("invalid ear decomposition: {0}")]
    InvariantViolation(String),
    #[error("{0}-{1} is not an edge of the host graph")]
    NotAnEdge(VertexId, VertexId),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
}

fn violation(msg: impl Into<String>) -> EarError {
    EarError::InvariantViolation(msg.into())
}

/// One ear: a circuit (index 0) or a path attached at its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ear {
    vertices: Vec<VertexId>,
}

impl Ear {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        Ear { vertices }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.vertices[0], self.vertices[self.vertices.len() - 1])
    }

    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    pub fn is_closed(&self) -> bool {
        let (u1, u2) = self.endpoints();
        u1 == u2
    }

    /// Vertices strictly between the endpoints.
    pub fn internal(&self) -> &[VertexId] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// Edges at odd distance from both endpoints: `(x1,x2), (x3,x4), ...`.
    /// They pair off every internal vertex.
    pub fn odd_edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let l = self.len();
        (1..l.saturating_sub(1))
            .step_by(2)
            .map(move |i| (self.vertices[i], self.vertices[i + 1]))
    }
}

/// An odd ear decomposition of a host graph with per-vertex first-ear labels.
#[derive(Debug, Clone)]
pub struct EarDecomposition<'g> {
    host: &'g SimpleGraph,
    ears: Vec<Ear>,
    label: Vec<usize>,
    // position of each vertex on the ear given by its label
    pos: Vec<usize>,
    // ear index of each host edge, by edge id
    owner: Vec<usize>,
}

impl PartialEq for EarDecomposition<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.host == other.host && self.ears == other.ears
    }
}

impl<'g> EarDecomposition<'g> {
    /// Validates `ears` against `host` and computes labels.
    ///
    /// Checks that ear 0 is an odd circuit, every later ear is an odd path
    /// whose endpoints are already placed and whose internal vertices are new,
    /// consecutive vertices are adjacent, and the ears partition the edges.
    pub fn from_ears(host: &'g SimpleGraph, ears: Vec<Ear>) -> Result<Self, EarError> {
        let n = host.n();
        let mut label = vec![NONE; n];
        let mut pos = vec![NONE; n];
        let mut owner = vec![NONE; host.m()];
        let Some(first) = ears.first() else {
            return Err(violation("no ears"));
        };
        if first.len() < 3 || !first.is_closed() || first.len() % 2 == 0 {
            return Err(violation(
                "ear 0 must be a closed circuit with an odd number (>= 3) of edges",
            ));
        }
        for (i, ear) in ears.iter().enumerate() {
            if ear.len() % 2 == 0 {
                return Err(violation(format!("ear {i} has an even number of edges")));
            }
            if ear.vertices.iter().any(|&v| v >= n) {
                return Err(violation(format!("ear {i} has an out-of-range vertex")));
            }
            let (u1, u2) = ear.endpoints();
            if i == 0 {
                for (p, &v) in ear.vertices[..ear.len()].iter().enumerate() {
                    if label[v] != NONE {
                        return Err(violation(format!("circuit repeats vertex {v}")));
                    }
                    label[v] = 0;
                    pos[v] = p;
                }
            } else {
                if label[u1] == NONE || label[u2] == NONE {
                    return Err(violation(format!(
                        "ear {i} has an endpoint not on an earlier ear"
                    )));
                }
                for (p, &v) in ear.internal().iter().enumerate() {
                    if label[v] != NONE {
                        return Err(violation(format!(
                            "internal vertex {v} of ear {i} already placed"
                        )));
                    }
                    label[v] = i;
                    pos[v] = p + 1;
                }
            }
            for (x, y) in ear.edges() {
                let Some(id) = host.edge_id(x, y) else {
                    return Err(violation(format!("ear {i} uses non-edge {x}-{y}")));
                };
                if owner[id] != NONE {
                    return Err(violation(format!("edge {x}-{y} lies on two ears")));
                }
                owner[id] = i;
            }
        }
        if let Some(v) = label.iter().position(|&l| l == NONE) {
            return Err(violation(format!("vertex {v} is on no ear")));
        }
        if let Some(id) = owner.iter().position(|&o| o == NONE) {
            let (x, y) = host.edges()[id];
            return Err(violation(format!("edge {x}-{y} is on no ear")));
        }
        Ok(EarDecomposition {
            host,
            ears,
            label,
            pos,
            owner,
        })
    }

    pub fn host(&self) -> &'g SimpleGraph {
        self.host
    }

    pub fn ears(&self) -> &[Ear] {
        &self.ears
    }

    /// Index of the first ear containing `v`.
    pub fn ear_label(&self, v: VertexId) -> Result<usize, EarError> {
        self.label
            .get(v)
            .copied()
            .ok_or(EarError::VertexOutOfRange(v))
    }

    pub(crate) fn label(&self, v: VertexId) -> usize {
        self.label[v]
    }

    /// Position of `v` on ear `ear_label(v)`.
    pub(crate) fn position(&self, v: VertexId) -> usize {
        self.pos[v]
    }

    /// Ear holding the edge `{u, v}`.
    pub fn ear_of_edge(&self, u: VertexId, v: VertexId) -> Result<usize, EarError> {
        self.host
            .edge_id(u, v)
            .map(|id| self.owner[id])
            .ok_or(EarError::NotAnEdge(u, v))
    }

    pub fn nontrivial_count(&self) -> usize {
        self.ears.iter().filter(|e| !e.is_trivial()).count()
    }

    /// Largest index of a nontrivial ear (0 if only the circuit is nontrivial).
    pub fn last_nontrivial_ear(&self) -> usize {
        self.ears
            .iter()
            .rposition(|e| !e.is_trivial())
            .expect("the circuit is nontrivial")
    }

    /// Whether `{a, b}` is an odd edge: both ends first appear on the same ear
    /// `i`, and for `i >= 1` each end reaches an endpoint of ear `i` along an
    /// odd subpath avoiding the other end.
    pub fn is_odd_edge(&self, a: VertexId, b: VertexId) -> Result<bool, EarError> {
        if !self.host.has_edge(a, b) {
            return Err(EarError::NotAnEdge(a, b));
        }
        Ok(self.odd_unchecked(a, b))
    }

    fn odd_unchecked(&self, a: VertexId, b: VertexId) -> bool {
        let i = self.label[a];
        if self.label[b] != i {
            return false;
        }
        if i == 0 {
            return true;
        }
        let l = self.ears[i].len();
        let (near, far) = if self.pos[a] < self.pos[b] {
            (self.pos[a], self.pos[b])
        } else {
            (self.pos[b], self.pos[a])
        };
        near % 2 == 1 && (l - far) % 2 == 1
    }

    /// True iff every odd edge lies on the ear its endpoints first appear on.
    pub fn is_maximal(&self) -> bool {
        self.host
            .edges()
            .iter()
            .enumerate()
            .all(|(id, &(a, b))| !self.odd_unchecked(a, b) || self.owner[id] == self.label[a])
    }

    /// First off-ear odd edge in processing order: lowest ear label, then
    /// lowest edge.
    fn off_ear_odd_edge(&self) -> Option<(usize, VertexId, VertexId)> {
        self.ears
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_trivial())
            .filter_map(|(idx, e)| {
                let (a, b) = e.endpoints();
                (self.odd_unchecked(a, b) && self.label[a] != idx)
                    .then(|| (self.label[a], a.min(b), a.max(b)))
            })
            .min()
    }

    /// Repeatedly slices an ear along an off-ear odd edge into two odd ears
    /// until the decomposition is maximal. Each slice turns one trivial ear
    /// into a nontrivial one.
    pub fn maximalize(&self) -> Result<EarDecomposition<'g>, EarError> {
        let mut current = self.clone();
        while let Some((i, a, b)) = current.off_ear_odd_edge() {
            let mut ears = current.ears.clone();
            let trivial = ears
                .iter()
                .position(|e| {
                    e.is_trivial() && {
                        let (x, y) = e.endpoints();
                        (x.min(y), x.max(y)) == (a, b)
                    }
                })
                .expect("odd edge is a trivial ear");
            ears.remove(trivial);
            let (first, second) = slice_ear(&ears[i], i, current.pos[a], current.pos[b]);
            ears[i] = first;
            ears.insert(i + 1, second);
            let next = EarDecomposition::from_ears(current.host, ears)?;
            debug_assert!(next.nontrivial_count() == current.nontrivial_count() + 1);
            current = next;
        }
        Ok(current)
    }

    /// One line per ear: `ear <i> <trivial|nontrivial> : v0 v1 ... vL`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, ear) in self.ears.iter().enumerate() {
            let kind = if ear.is_trivial() {
                "trivial"
            } else {
                "nontrivial"
            };
            write!(out, "ear {i} {kind} :").unwrap();
            for v in &ear.vertices {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for EarDecomposition<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

/// Splits ear `i` along the chord between positions `p` and `q`.
///
/// For a path ear `x0..xL` with `p < q`, the replacement is the odd path
/// `x0..xp, xq..xL` followed by the odd segment `xp..xq`. For the circuit,
/// the even arc closed by the chord becomes the new circuit and the odd arc
/// becomes ear 1.
fn slice_ear(ear: &Ear, i: usize, p: usize, q: usize) -> (Ear, Ear) {
    let (p, q) = (p.min(q), p.max(q));
    let x = &ear.vertices;
    let l = ear.len();
    if i == 0 {
        let inner: Vec<_> = x[p..=q].to_vec();
        let mut outer: Vec<_> = x[q..=l].to_vec();
        outer.extend_from_slice(&x[1..=p]);
        if (q - p) % 2 == 0 {
            let mut circuit = inner;
            circuit.push(x[p]);
            (Ear::new(circuit), Ear::new(outer))
        } else {
            let mut circuit = outer;
            circuit.push(x[q]);
            (Ear::new(circuit), Ear::new(inner))
        }
    } else {
        let mut first: Vec<_> = x[..=p].to_vec();
        first.extend_from_slice(&x[q..]);
        (Ear::new(first), Ear::new(x[p..=q].to_vec()))
    }
}

/// Builds an odd ear decomposition of a factor-critical graph.
///
/// Fix a near-perfect matching `M` missing vertex 0. Starting from the placed
/// set `{0}`, take the first edge `uv` from a placed `u` to an unplaced `v`,
/// compute a perfect matching `M'` of `G - v` by one augmentation, and walk
/// the `M`/`M'`-alternating path from `v` until it re-enters the placed set.
/// Together with `uv` this is an odd ear (the first one closes into an odd
/// circuit at 0). Leftover edges become trivial ears at the end.
pub fn odd_ear_decomposition(g: &SimpleGraph) -> Result<EarDecomposition<'_>, EarError> {
    let n = g.n();
    if n < 3 {
        return Err(EarError::TooSmall(n));
    }
    let root = 0;
    let mut engine = Blossom::new(g);
    engine.deactivate(root);
    engine.greedy();
    engine.maximize();
    if !engine.is_perfect() {
        return Err(EarError::NotFactorCritical { witness: root });
    }
    let base = engine.mates().to_vec();
    engine.activate(root);

    let mut placed = vec![false; n];
    placed[root] = true;
    let mut order = vec![root];
    let mut used = vec![false; g.m()];
    let mut ears = Vec::new();
    let mut cursor = vec![0usize; n];
    let mut idx = 0;
    while idx < order.len() {
        let u = order[idx];
        let nbrs = g.neighbors(u);
        while cursor[u] < nbrs.len() && placed[nbrs[cursor[u]]] {
            cursor[u] += 1;
        }
        let Some(&v) = nbrs.get(cursor[u]) else {
            idx += 1;
            continue;
        };
        let path = alternating_ear(&mut engine, &base, &placed, u, v)?;
        for &w in &path[1..path.len() - 1] {
            placed[w] = true;
            order.push(w);
        }
        for w in path.windows(2) {
            used[g.edge_id(w[0], w[1]).expect("ear follows edges")] = true;
        }
        ears.push(Ear::new(path));
    }
    if let Some(w) = placed.iter().position(|&p| !p) {
        // w lies in a component of even order away from the root
        return Err(EarError::NotFactorCritical { witness: w });
    }
    if ears.is_empty() {
        return Err(EarError::NotFactorCritical { witness: 1 });
    }
    for (id, &(a, b)) in g.edges().iter().enumerate() {
        if !used[id] {
            ears.push(Ear::new(vec![a, b]));
        }
    }
    EarDecomposition::from_ears(g, ears)
}

fn alternating_ear(
    engine: &mut Blossom<'_>,
    base: &[usize],
    placed: &[bool],
    u: VertexId,
    v: VertexId,
) -> Result<Vec<VertexId>, EarError> {
    let root = base
        .iter()
        .position(|&m| m == NONE)
        .expect("base matching misses the root");
    let a = base[v];
    debug_assert!(a != NONE && !placed[a]);
    engine.set_mates(base);
    engine.deactivate(v);
    let found = engine.augment_from(root);
    engine.activate(v);
    if !found {
        return Err(EarError::NotFactorCritical { witness: v });
    }
    let other = engine.mates();
    let mut path = vec![u, v, a];
    let mut cur = a;
    loop {
        let next = other[cur];
        path.push(next);
        if placed[next] {
            break;
        }
        cur = base[next];
        path.push(cur);
    }
    Ok(path)
}
