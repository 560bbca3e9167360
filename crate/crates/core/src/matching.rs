//! Maximum-cardinality matching in general graphs.
//!
//! The engine is Edmonds' blossom algorithm with blossoms tracked by a
//! union-find over base vertices. Every search is deterministic: vertices are
//! scanned in increasing order, neighbors in sorted order, and the search
//! queue is FIFO.

use std::collections::VecDeque;

use thiserror::Error;

use crate::hypergraph::{GraphError, Hypergraph, SimpleGraph, VertexId};

const NONE: usize = usize::MAX;

/// A set of pairwise vertex-disjoint edges, stored as sorted `(u, v)` pairs
/// with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Matching {
    pairs: Vec<(VertexId, VertexId)>,
}

impl Matching {
    /// Canonicalizes the pairs. Does not check disjointness; see
    /// [`Matching::is_matching_in`].
    pub fn from_pairs<I: IntoIterator<Item = (VertexId, VertexId)>>(pairs: I) -> Self {
        let mut pairs: Vec<_> = pairs
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        Matching { pairs }
    }

    pub(crate) fn from_mates(mate: &[usize]) -> Self {
        Matching {
            pairs: mate
                .iter()
                .enumerate()
                .filter(|&(u, &v)| v != NONE && u < v)
                .map(|(u, &v)| (u, v))
                .collect(),
        }
    }

    pub fn pairs(&self) -> &[(VertexId, VertexId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, u: VertexId, v: VertexId) -> bool {
        self.pairs.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// True iff every pair is an edge of `g` and no vertex is used twice.
    pub fn is_matching_in(&self, g: &SimpleGraph) -> bool {
        let mut used = vec![false; g.n()];
        for &(u, v) in &self.pairs {
            if !g.has_edge(u, v) || used[u] || used[v] {
                return false;
            }
            used[u] = true;
            used[v] = true;
        }
        true
    }

    /// Vertices of `0..n` left uncovered.
    pub fn exposed(&self, n: usize) -> Vec<VertexId> {
        let mut covered = vec![false; n];
        for &(u, v) in &self.pairs {
            covered[u] = true;
            covered[v] = true;
        }
        (0..n).filter(|&v| !covered[v]).collect()
    }
}

/// Blossom search state over a graph with an optional set of deleted vertices.
pub(crate) struct Blossom<'g> {
    g: &'g SimpleGraph,
    active: Vec<bool>,
    mate: Vec<usize>,
    base: Vec<usize>,
    parent: Vec<usize>,
    // 0 = unreached, 1 = outer, 2 = inner
    label: Vec<u8>,
    stamp: Vec<u32>,
    clock: u32,
    queue: VecDeque<usize>,
}

impl<'g> Blossom<'g> {
    pub(crate) fn new(g: &'g SimpleGraph) -> Self {
        let n = g.n();
        Blossom {
            g,
            active: vec![true; n],
            mate: vec![NONE; n],
            base: (0..n).collect(),
            parent: vec![NONE; n],
            label: vec![0; n],
            stamp: vec![0; n],
            clock: 0,
            queue: VecDeque::new(),
        }
    }

    pub(crate) fn deactivate(&mut self, v: VertexId) {
        let m = self.mate[v];
        if m != NONE {
            self.mate[m] = NONE;
            self.mate[v] = NONE;
        }
        self.active[v] = false;
    }

    pub(crate) fn activate(&mut self, v: VertexId) {
        self.active[v] = true;
    }

    pub(crate) fn mates(&self) -> &[usize] {
        &self.mate
    }

    /// Replaces the current matching. `mate` must be a matching of the active subgraph.
    pub(crate) fn set_mates(&mut self, mate: &[usize]) {
        self.mate.copy_from_slice(mate);
    }

    pub(crate) fn matching(&self) -> Matching {
        Matching::from_mates(&self.mate)
    }

    pub(crate) fn active_count(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.base[root] != root {
            root = self.base[root];
        }
        while self.base[x] != root {
            let next = self.base[x];
            self.base[x] = root;
            x = next;
        }
        root
    }

    fn lca(&mut self, x: usize, y: usize) -> usize {
        self.clock = self.clock.wrapping_add(1);
        if self.clock == 0 {
            self.stamp.fill(0);
            self.clock = 1;
        }
        let mut x = self.find(x);
        let mut y = self.find(y);
        loop {
            if x != NONE {
                if self.stamp[x] == self.clock {
                    return x;
                }
                self.stamp[x] = self.clock;
                x = if self.mate[x] == NONE {
                    NONE
                } else {
                    let p = self.parent[self.mate[x]];
                    self.find(p)
                };
            }
            if y != NONE {
                std::mem::swap(&mut x, &mut y);
            }
        }
    }

    fn shrink(&mut self, mut x: usize, mut y: usize, l: usize) {
        while self.find(x) != l {
            self.parent[x] = y;
            y = self.mate[x];
            if self.label[y] == 2 {
                self.label[y] = 1;
                self.queue.push_back(y);
            }
            if self.find(x) == x {
                self.base[x] = l;
            }
            if self.find(y) == y {
                self.base[y] = l;
            }
            x = self.parent[y];
        }
    }

    /// Searches for an augmenting path from the exposed vertex `root` and
    /// flips it. Returns false if none exists.
    pub(crate) fn augment_from(&mut self, root: VertexId) -> bool {
        debug_assert!(self.active[root] && self.mate[root] == NONE);
        for i in 0..self.base.len() {
            self.base[i] = i;
        }
        self.label.fill(0);
        self.parent.fill(NONE);
        self.queue.clear();
        self.label[root] = 1;
        self.queue.push_back(root);
        let g = self.g;
        while let Some(x) = self.queue.pop_front() {
            for &y in g.neighbors(x) {
                if !self.active[y] || self.label[y] == 2 || self.find(x) == self.find(y) {
                    continue;
                }
                if self.label[y] == 0 {
                    self.label[y] = 2;
                    self.parent[y] = x;
                    if self.mate[y] == NONE {
                        let mut u = y;
                        while u != NONE {
                            let p = self.parent[u];
                            let next = self.mate[p];
                            self.mate[u] = p;
                            self.mate[p] = u;
                            u = next;
                        }
                        return true;
                    }
                    let m = self.mate[y];
                    self.label[m] = 1;
                    self.queue.push_back(m);
                } else {
                    let l = self.lca(x, y);
                    self.shrink(x, y, l);
                    self.shrink(y, x, l);
                }
            }
        }
        false
    }

    pub(crate) fn greedy(&mut self) {
        let g = self.g;
        for u in 0..g.n() {
            if !self.active[u] || self.mate[u] != NONE {
                continue;
            }
            if let Some(&v) = g
                .neighbors(u)
                .iter()
                .find(|&&v| self.active[v] && self.mate[v] == NONE)
            {
                self.mate[u] = v;
                self.mate[v] = u;
            }
        }
    }

    /// Grows the current matching to maximum cardinality on the active subgraph.
    pub(crate) fn maximize(&mut self) {
        for s in 0..self.g.n() {
            if self.active[s] && self.mate[s] == NONE {
                self.augment_from(s);
            }
        }
    }

    pub(crate) fn is_perfect(&self) -> bool {
        (0..self.g.n()).all(|v| !self.active[v] || self.mate[v] != NONE)
    }
}

/// Maximum-cardinality matching.
pub fn maximum_matching(g: &SimpleGraph) -> Matching {
    let mut engine = Blossom::new(g);
    engine.greedy();
    engine.maximize();
    engine.matching()
}

/// A perfect matching of `g`, if one exists.
pub fn perfect_matching(g: &SimpleGraph) -> Option<Matching> {
    perfect_matching_on(g, &[])
}

/// A perfect matching of `g - v`, if one exists.
pub fn perfect_matching_avoiding(
    g: &SimpleGraph,
    v: VertexId,
) -> Result<Option<Matching>, GraphError> {
    if v >= g.n() {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    Ok(perfect_matching_on(g, &[v]))
}

/// A perfect matching of `g` with the `removed` vertices deleted.
pub fn perfect_matching_on(g: &SimpleGraph, removed: &[VertexId]) -> Option<Matching> {
    let mut engine = Blossom::new(g);
    for &v in removed {
        engine.deactivate(v);
    }
    if engine.active_count() % 2 == 1 {
        return None;
    }
    engine.greedy();
    engine.maximize();
    engine.is_perfect().then(|| engine.matching())
}

/// True iff `g - v` has a perfect matching for every vertex `v`.
pub fn is_factor_critical(g: &SimpleGraph) -> bool {
    factor_critical_witness(g).is_none()
}

/// A vertex `v` such that `g - v` has no perfect matching, if any.
pub fn factor_critical_witness(g: &SimpleGraph) -> Option<VertexId> {
    if g.n() == 0 {
        return None;
    }
    if g.n().is_multiple_of(2) {
        return Some(0);
    }
    (0..g.n()).find(|&v| perfect_matching_on(g, &[v]).is_none())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundCheckError {
    #[error("vertex set X must be nonempty")]
    EmptySet,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Number of components of the shadow graph with `x` deleted, and `|x|`.
pub fn component_bound_check(
    h: &Hypergraph,
    x: &[VertexId],
) -> Result<(usize, usize), BoundCheckError> {
    if x.is_empty() {
        return Err(BoundCheckError::EmptySet);
    }
    let mut set = x.to_vec();
    set.sort_unstable();
    set.dedup();
    if let Some(&v) = set.iter().find(|&&v| v >= h.n()) {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            n: h.n(),
        }
        .into());
    }
    let g = h.shadow_graph();
    Ok((g.components_without(&set).len(), set.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::fixtures::*;

    fn star3() -> SimpleGraph {
        SimpleGraph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn maximum_sizes() {
        assert_eq!(maximum_matching(&cycle(5)).len(), 2);
        assert_eq!(maximum_matching(&complete(4)).len(), 2);
        assert_eq!(maximum_matching(&star3()).len(), 1);
    }

    #[test]
    fn perfect() {
        let m = perfect_matching(&complete(4)).unwrap();
        assert_eq!(m.len(), 2);
        assert!(m.is_matching_in(&complete(4)));
        assert!(perfect_matching(&cycle(5)).is_none());
        let m = perfect_matching(&cycle(6)).unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.is_matching_in(&cycle(6)));
    }

    #[test]
    fn avoiding() {
        assert_eq!(
            perfect_matching_avoiding(&cycle(5), 0)
                .unwrap()
                .unwrap()
                .pairs(),
            &[(1, 2), (3, 4)]
        );
        assert!(perfect_matching_avoiding(&complete(4), 0)
            .unwrap()
            .is_none());
        assert_eq!(
            perfect_matching_avoiding(&complete(3), 2)
                .unwrap()
                .unwrap()
                .pairs(),
            &[(0, 1)]
        );
        assert!(perfect_matching_avoiding(&complete(3), 3).is_err());
    }

    #[test]
    fn factor_critical() {
        assert!(is_factor_critical(&complete(3)));
        assert!(is_factor_critical(&cycle(5)));
        assert!(!is_factor_critical(&complete(4)));
        // two triangles sharing nothing: odd n impossible, so 3 + 3 + isolated
        let g = SimpleGraph::new(7, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!is_factor_critical(&g));
    }

    #[test]
    fn blossom_needed() {
        // Odd cycle 0-1-2-3-4 with pendant 5 on 0 and pendant 6 on 2, 7 on 6:
        // the augmenting path must pass through the contracted 5-cycle.
        let g = SimpleGraph::new(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (2, 6),
                (6, 7),
                (3, 7),
            ],
        )
        .unwrap();
        assert_eq!(maximum_matching(&g).len(), 4);
    }

    #[test]
    fn bound_check() {
        assert_eq!(component_bound_check(&triple(), &[0]), Ok((1, 1)));
        assert_eq!(component_bound_check(&four_triples(), &[0, 1]), Ok((1, 2)));
        let (c, x) = component_bound_check(&fano(), &[0, 1, 2]).unwrap();
        assert_eq!(x, 3);
        // K7 minus 3 vertices is K4
        assert_eq!(c, 1);
        assert_eq!(
            component_bound_check(&triple(), &[]),
            Err(BoundCheckError::EmptySet)
        );
    }
}
