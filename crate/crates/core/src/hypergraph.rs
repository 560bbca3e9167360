//! Hypergraphs, simple graphs, shadow graphs and connected components.
//!
//! Vertices are dense indices `0..n`. A [`Hypergraph`] keeps its hyperedges in
//! canonical form: each hyperedge is a sorted vertex tuple, the list is sorted
//! lexicographically, and repeated hyperedges are folded into a multiplicity
//! counter.

use std::collections::BTreeMap;

use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("hyperedge {0:?} repeats a vertex")]
    RepeatedVertex(Vec<VertexId>),
    #[error("empty hyperedge")]
    EmptyHyperedge,
    #[error("hyperedge multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(VertexId, VertexId),
    #[error("subset size {size} exceeds hyperedge size {rank}")]
    SubsetTooLarge { size: usize, rank: usize },
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
}

/// Hypergraph with hyperedge multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    hyperedges: Vec<Vec<VertexId>>,
    multiplicity: Vec<usize>,
}

impl Hypergraph {
    /// Builds a hypergraph from a list of hyperedges; repeated entries
    /// accumulate multiplicity.
    pub fn new<I, E>(n: usize, hyperedges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[VertexId]>,
    {
        Self::with_multiplicities(n, hyperedges.into_iter().map(|e| (e, 1)))
    }

    pub fn with_multiplicities<I, E>(n: usize, hyperedges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (E, usize)>,
        E: AsRef<[VertexId]>,
    {
        let mut acc: BTreeMap<Vec<VertexId>, usize> = BTreeMap::new();
        for (e, mult) in hyperedges {
            let mut e = e.as_ref().to_vec();
            if e.is_empty() {
                return Err(GraphError::EmptyHyperedge);
            }
            if mult == 0 {
                return Err(GraphError::ZeroMultiplicity);
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(GraphError::RepeatedVertex(e));
            }
            *acc.entry(e).or_insert(0) += mult;
        }
        let (hyperedges, multiplicity) = acc.into_iter().unzip();
        Ok(Hypergraph {
            n,
            hyperedges,
            multiplicity,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Distinct hyperedges, sorted.
    pub fn hyperedges(&self) -> &[Vec<VertexId>] {
        &self.hyperedges
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicity
    }

    /// Hyperedges paired with multiplicity.
    pub fn iter(&self) -> impl Iterator<Item = (&[VertexId], usize)> + '_ {
        self.hyperedges
            .iter()
            .map(Vec::as_slice)
            .zip(self.multiplicity.iter().copied())
    }

    /// Number of hyperedges counted with multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.multiplicity.iter().sum()
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(self
            .iter()
            .filter(|(e, _)| e.binary_search(&v).is_ok())
            .map(|(_, m)| m)
            .sum())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for (e, m) in self.iter() {
            for &v in e {
                deg[v] += m;
            }
        }
        deg
    }

    /// Index of the first (lowest) distinct hyperedge containing every vertex of `set`.
    pub fn first_hyperedge_containing(&self, set: &[VertexId]) -> Option<usize> {
        self.hyperedges
            .iter()
            .position(|e| set.iter().all(|v| e.binary_search(v).is_ok()))
    }

    pub fn contains_hyperedge(&self, set: &[VertexId]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.hyperedges.binary_search(&s).is_ok()
    }

    /// Checks k-uniformity and k-regularity.
    pub fn validate(&self, k: usize) -> ValidationReport {
        let first_bad_hyperedge = self.hyperedges.iter().position(|e| e.len() != k);
        let first_bad_vertex = self
            .degrees()
            .into_iter()
            .enumerate()
            .find(|&(_, d)| d != k);
        ValidationReport {
            k,
            uniform: first_bad_hyperedge.is_none(),
            regular: first_bad_vertex.is_none(),
            first_bad_hyperedge: first_bad_hyperedge.map(|i| self.hyperedges[i].clone()),
            first_bad_vertex,
        }
    }

    /// Deduplicated subsets of the given size of all hyperedges (members of the
    /// hereditary closure), sorted.
    pub fn hereditary_members(&self, size: usize) -> Result<Vec<Vec<VertexId>>, GraphError> {
        let rank = self.hyperedges.iter().map(Vec::len).max().unwrap_or(0);
        if size > rank {
            return Err(GraphError::SubsetTooLarge { size, rank });
        }
        let mut out = Vec::new();
        for e in &self.hyperedges {
            for_each_subset(e, size, &mut |s| out.push(s.to_vec()));
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// The simple graph of all 2-element subsets of hyperedges.
    pub fn shadow_graph(&self) -> SimpleGraph {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.hyperedges {
            for (i, &u) in e.iter().enumerate() {
                for &v in &e[i + 1..] {
                    adj[u].push(v);
                    adj[v].push(u);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        SimpleGraph::from_sorted_adjacency(adj)
    }

    /// Sub-hypergraph induced by hyperedges inside `block`, relabeled so the
    /// `i`-th smallest vertex of `block` becomes `i`.
    pub fn restrict(&self, block: &[VertexId]) -> Hypergraph {
        let mut local = vec![usize::MAX; self.n];
        let mut sorted = block.to_vec();
        sorted.sort_unstable();
        for (i, &v) in sorted.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .iter()
            .filter(|(e, _)| e.iter().all(|&v| local[v] != usize::MAX))
            .map(|(e, m)| (e.iter().map(|&v| local[v]).collect::<Vec<_>>(), m));
        Hypergraph::with_multiplicities(sorted.len(), edges).expect("relabeling preserves validity")
    }
}

fn for_each_subset(items: &[VertexId], size: usize, f: &mut impl FnMut(&[VertexId])) {
    fn rec(
        items: &[VertexId],
        size: usize,
        start: usize,
        cur: &mut Vec<VertexId>,
        f: &mut impl FnMut(&[VertexId]),
    ) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, size, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(items, size, 0, &mut Vec::with_capacity(size), f);
}

/// Outcome of [`Hypergraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub k: usize,
    pub uniform: bool,
    pub regular: bool,
    pub first_bad_hyperedge: Option<Vec<VertexId>>,
    /// First vertex whose degree differs from `k`, with its degree.
    pub first_bad_vertex: Option<(VertexId, usize)>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.uniform && self.regular
    }
}

/// Loopless undirected graph without parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<VertexId>>,
    /// Edge ids aligned with `adj`.
    adj_edge: Vec<Vec<usize>>,
    edges: Vec<(VertexId, VertexId)>,
}

impl SimpleGraph {
    /// Builds a graph from an edge list, rejecting loops and parallel edges.
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::ParallelEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self::from_sorted_adjacency(adj))
    }

    fn from_sorted_adjacency(adj: Vec<Vec<VertexId>>) -> Self {
        let mut edges = Vec::new();
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        let adj_edge = adj
            .iter()
            .enumerate()
            .map(|(u, list)| {
                list.iter()
                    .map(|&v| {
                        let key = (u.min(v), u.max(v));
                        edges.binary_search(&key).expect("edge listed")
                    })
                    .collect()
            })
            .collect();
        SimpleGraph {
            adj,
            adj_edge,
            edges,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    /// Canonical edge list: `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Position of the edge `{u, v}` in [`SimpleGraph::edges`].
    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<usize> {
        if u >= self.n() || v >= self.n() {
            return None;
        }
        self.adj[u]
            .binary_search(&v)
            .ok()
            .map(|i| self.adj_edge[u][i])
    }

    /// Connected components, each block sorted, blocks ordered by smallest member.
    pub fn components(&self) -> ComponentPartition {
        self.components_without(&[])
    }

    /// Components of the graph with the given vertices deleted.
    pub fn components_without(&self, removed: &[VertexId]) -> ComponentPartition {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        for &x in removed {
            comp[x] = usize::MAX - 1;
        }
        let mut blocks = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let mut block = vec![s];
            comp[s] = id;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        block.push(w);
                        stack.push(w);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        ComponentPartition { blocks }
    }

    pub fn is_connected(&self) -> bool {
        self.components().blocks.len() <= 1
    }
}

/// Vertex sets of connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub blocks: Vec<Vec<VertexId>>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn triple() -> Hypergraph {
        Hypergraph::new(3, [[0, 1, 2]; 3]).unwrap()
    }

    pub fn four_triples() -> Hypergraph {
        Hypergraph::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap()
    }

    pub fn fano() -> Hypergraph {
        Hypergraph::new(
            7,
            [
                [0, 1, 2],
                [0, 3, 4],
                [0, 5, 6],
                [1, 3, 5],
                [1, 4, 6],
                [2, 3, 6],
                [2, 4, 5],
            ],
        )
        .unwrap()
    }

    pub fn cycle(n: usize) -> SimpleGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::new(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> SimpleGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        SimpleGraph::new(n, &edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn shadow_of_known_instances() {
        let g = triple().shadow_graph();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(four_triples().shadow_graph().m(), 6);
        assert_eq!(fano().shadow_graph().m(), 21);
    }

    #[test]
    fn multiplicity_accumulates() {
        let h = triple();
        assert_eq!(h.hyperedges().len(), 1);
        assert_eq!(h.multiplicities(), &[3]);
        assert_eq!(h.total_multiplicity(), 3);
    }

    #[test]
    fn degrees() {
        assert_eq!(triple().degree(0), Ok(3));
        for v in 0..7 {
            assert_eq!(fano().degree(v), Ok(3));
        }
        let h = Hypergraph::new(4, [[0, 1, 2]]).unwrap();
        assert_eq!(h.degree(3), Ok(0));
        assert!(matches!(
            h.degree(4),
            Err(GraphError::VertexOutOfRange { vertex: 4, n: 4 })
        ));
    }

    #[test]
    fn validate_reports() {
        assert!(triple().validate(3).is_ok());
        assert!(four_triples().validate(3).is_ok());
        let r = Hypergraph::new(3, [[0, 1, 2]]).unwrap().validate(3);
        assert!(r.uniform);
        assert!(!r.regular);
        assert_eq!(r.first_bad_vertex, Some((0, 1)));
        let r = triple().validate(4);
        assert!(!r.uniform);
        assert_eq!(r.first_bad_hyperedge, Some(vec![0, 1, 2]));
    }

    #[test]
    fn components_basic() {
        assert_eq!(complete(3).components().blocks, vec![vec![0, 1, 2]]);
        let two = SimpleGraph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(two.components().blocks, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        let empty = SimpleGraph::new(2, &[]).unwrap();
        assert_eq!(empty.components().blocks, vec![vec![0], vec![1]]);
    }

    #[test]
    fn hereditary() {
        let h = triple();
        assert_eq!(
            h.hereditary_members(2).unwrap(),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        assert_eq!(h.hereditary_members(3).unwrap(), vec![vec![0, 1, 2]]);
        assert_eq!(fano().hereditary_members(2).unwrap().len(), 21);
        assert!(matches!(
            h.hereditary_members(4),
            Err(GraphError::SubsetTooLarge { size: 4, rank: 3 })
        ));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Hypergraph::new(3, [[0, 0, 1]]),
            Err(GraphError::RepeatedVertex(_))
        ));
        assert!(matches!(
            SimpleGraph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::ParallelEdge(0, 1))
        ));
        assert!(matches!(
            SimpleGraph::new(3, &[(1, 1)]),
            Err(GraphError::Loop(1))
        ));
    }

    #[test]
    fn restrict_relabels() {
        let h = Hypergraph::new(6, [[0, 2, 4], [0, 2, 4], [0, 2, 4], [1, 3, 5]]).unwrap();
        let sub = h.restrict(&[4, 2, 0]);
        assert_eq!(sub, triple());
    }
}
