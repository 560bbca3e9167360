//! Bipartite graphs, Hopcroft-Karp perfect matching, and extraction of
//! pairwise disjoint perfect matchings from regular bipartite graphs.

use std::collections::VecDeque;

use thiserror::Error;

use crate::gen::SplitMix64;
use crate::hypergraph::{SimpleGraph, VertexId};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BipartiteError {
    #[error("edge ({a}, {b}) out of range (n_a = {n_a}, n_b = {n_b})")]
    OutOfRange {
        a: usize,
        b: usize,
        n_a: usize,
        n_b: usize,
    },
    #[error("parallel edge ({0}, {1})")]
    ParallelEdges(usize, usize),
    #[error("graph is not {expected}-regular: {side} vertex {vertex} has degree {degree}")]
    NotRegular {
        expected: usize,
        side: char,
        vertex: usize,
        degree: usize,
    },
    #[error("cannot extract {requested} disjoint perfect matchings from a {degree}-regular graph")]
    TooManyMatchings { requested: usize, degree: usize },
    #[error("no perfect matching in residual graph after {0} extractions")]
    NoPerfectMatching(usize),
}

/// Simple bipartite graph with sides `A = 0..n_a` and `B = 0..n_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_a: usize,
    n_b: usize,
    adj_a: Vec<Vec<usize>>,
    deg_b: Vec<usize>,
}

impl BipartiteGraph {
    pub fn new(n_a: usize, n_b: usize, edges: &[(usize, usize)]) -> Result<Self, BipartiteError> {
        let mut adj_a = vec![Vec::new(); n_a];
        let mut deg_b = vec![0; n_b];
        for &(a, b) in edges {
            if a >= n_a || b >= n_b {
                return Err(BipartiteError::OutOfRange { a, b, n_a, n_b });
            }
            adj_a[a].push(b);
            deg_b[b] += 1;
        }
        for (a, list) in adj_a.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(BipartiteError::ParallelEdges(a, w[0]));
            }
        }
        Ok(BipartiteGraph {
            n_a,
            n_b,
            adj_a,
            deg_b,
        })
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn m(&self) -> usize {
        self.adj_a.iter().map(Vec::len).sum()
    }

    /// Sorted B-neighbors of `a`.
    pub fn neighbors(&self, a: usize) -> &[usize] {
        &self.adj_a[a]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n_a && self.adj_a[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj_a
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().map(move |&b| (a, b)))
            .collect()
    }

    pub fn degree_b(&self, b: usize) -> usize {
        self.deg_b[b]
    }

    /// The common degree if every vertex on both sides has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self
            .adj_a
            .first()
            .map(Vec::len)
            .or_else(|| self.deg_b.first().copied())
            .unwrap_or(0);
        self.check_regular(k).ok().map(|_| k)
    }

    pub fn check_regular(&self, k: usize) -> Result<(), BipartiteError> {
        if let Some((a, list)) = self.adj_a.iter().enumerate().find(|(_, l)| l.len() != k) {
            return Err(BipartiteError::NotRegular {
                expected: k,
                side: 'A',
                vertex: a,
                degree: list.len(),
            });
        }
        if let Some((b, &d)) = self.deg_b.iter().enumerate().find(|(_, &d)| d != k) {
            return Err(BipartiteError::NotRegular {
                expected: k,
                side: 'B',
                vertex: b,
                degree: d,
            });
        }
        Ok(())
    }

    /// The graph with the given edges removed.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> BipartiteGraph {
        let mut adj_a = self.adj_a.clone();
        let mut deg_b = self.deg_b.clone();
        for &(a, b) in removed {
            if let Ok(i) = adj_a[a].binary_search(&b) {
                adj_a[a].remove(i);
                deg_b[b] -= 1;
            }
        }
        BipartiteGraph {
            n_a: self.n_a,
            n_b: self.n_b,
            adj_a,
            deg_b,
        }
    }

    /// The same graph as a [`SimpleGraph`] on `n_a + n_b` vertices, B shifted by `n_a`.
    pub fn to_simple(&self) -> SimpleGraph {
        let edges: Vec<(VertexId, VertexId)> = self
            .edges()
            .into_iter()
            .map(|(a, b)| (a, self.n_a + b))
            .collect();
        SimpleGraph::new(self.n_a + self.n_b, &edges).expect("bipartite graph is simple")
    }
}

/// A bipartite matching as `(a, b)` pairs sorted by `a`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BipartiteMatching {
    pub pairs: Vec<(usize, usize)>,
}

impl BipartiteMatching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_perfect_in(&self, g: &BipartiteGraph) -> bool {
        if g.n_a != g.n_b || self.pairs.len() != g.n_a {
            return false;
        }
        let mut seen_a = vec![false; g.n_a];
        let mut seen_b = vec![false; g.n_b];
        for &(a, b) in &self.pairs {
            if !g.has_edge(a, b) || seen_a[a] || seen_b[b] {
                return false;
            }
            seen_a[a] = true;
            seen_b[b] = true;
        }
        true
    }
}

struct HopcroftKarp<'a> {
    adj: &'a [Vec<usize>],
    mate_a: Vec<usize>,
    mate_b: Vec<usize>,
    dist: Vec<usize>,
}

impl<'a> HopcroftKarp<'a> {
    fn new(adj: &'a [Vec<usize>], n_b: usize) -> Self {
        HopcroftKarp {
            adj,
            mate_a: vec![NONE; adj.len()],
            mate_b: vec![NONE; n_b],
            dist: vec![NONE; adj.len()],
        }
    }

    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for a in 0..self.adj.len() {
            if self.mate_a[a] == NONE {
                self.dist[a] = 0;
                queue.push_back(a);
            } else {
                self.dist[a] = NONE;
            }
        }
        let mut found = false;
        while let Some(a) = queue.pop_front() {
            for &b in &self.adj[a] {
                let next = self.mate_b[b];
                if next == NONE {
                    found = true;
                } else if self.dist[next] == NONE {
                    self.dist[next] = self.dist[a] + 1;
                    queue.push_back(next);
                }
            }
        }
        found
    }

    fn dfs(&mut self, a: usize) -> bool {
        for i in 0..self.adj[a].len() {
            let b = self.adj[a][i];
            let next = self.mate_b[b];
            if next == NONE || (self.dist[next] == self.dist[a] + 1 && self.dfs(next)) {
                self.mate_a[a] = b;
                self.mate_b[b] = a;
                return true;
            }
        }
        self.dist[a] = NONE;
        false
    }

    fn run(mut self) -> Vec<usize> {
        while self.bfs() {
            for a in 0..self.adj.len() {
                if self.mate_a[a] == NONE {
                    self.dfs(a);
                }
            }
        }
        self.mate_a
    }
}

fn matching_from_adj(adj: &[Vec<usize>], n_a: usize, n_b: usize) -> Option<BipartiteMatching> {
    if n_a != n_b {
        return None;
    }
    let mate = HopcroftKarp::new(adj, n_b).run();
    if mate.contains(&NONE) {
        return None;
    }
    Some(BipartiteMatching {
        pairs: mate.into_iter().enumerate().collect(),
    })
}

/// A perfect matching covering both sides, if one exists.
pub fn bipartite_perfect_matching(g: &BipartiteGraph) -> Option<BipartiteMatching> {
    matching_from_adj(&g.adj_a, g.n_a, g.n_b)
}

/// Removes `t` pairwise edge-disjoint perfect matchings one at a time from a
/// regular bipartite graph.
pub fn extract_disjoint_perfect_matchings(
    g: &BipartiteGraph,
    t: usize,
) -> Result<Vec<BipartiteMatching>, BipartiteError> {
    extract_with_order(g, t, None)
}

/// As [`extract_disjoint_perfect_matchings`]; when `rng` is given, neighbor
/// lists are shuffled before each extraction so different matchings come out.
pub(crate) fn extract_with_order(
    g: &BipartiteGraph,
    t: usize,
    mut rng: Option<&mut SplitMix64>,
) -> Result<Vec<BipartiteMatching>, BipartiteError> {
    let k = g.adj_a.first().map(Vec::len).unwrap_or(0);
    g.check_regular(k)?;
    if t > k {
        return Err(BipartiteError::TooManyMatchings {
            requested: t,
            degree: k,
        });
    }
    let mut residual = g.clone();
    let mut out = Vec::with_capacity(t);
    for round in 0..t {
        let mut adj = residual.adj_a.clone();
        if let Some(r) = rng.as_deref_mut() {
            for list in &mut adj {
                r.shuffle(list);
            }
        }
        let m = matching_from_adj(&adj, residual.n_a, residual.n_b)
            .ok_or(BipartiteError::NoPerfectMatching(round))?;
        residual = residual.without_edges(&m.pairs);
        out.push(m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k33() -> BipartiteGraph {
        let edges: Vec<_> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
        BipartiteGraph::new(3, 3, &edges).unwrap()
    }

    #[test]
    fn perfect_matchings() {
        let m = bipartite_perfect_matching(&k33()).unwrap();
        assert!(m.is_perfect_in(&k33()));
        let single = BipartiteGraph::new(1, 1, &[(0, 0)]).unwrap();
        assert_eq!(
            bipartite_perfect_matching(&single).unwrap().pairs,
            vec![(0, 0)]
        );
        let empty = BipartiteGraph::new(1, 1, &[]).unwrap();
        assert!(bipartite_perfect_matching(&empty).is_none());
    }

    #[test]
    fn extraction_partitions_k33() {
        assert!(extract_disjoint_perfect_matchings(&k33(), 0)
            .unwrap()
            .is_empty());
        let ms = extract_disjoint_perfect_matchings(&k33(), 3).unwrap();
        let mut all: Vec<_> = ms.iter().flat_map(|m| m.pairs.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, k33().edges());
        assert!(matches!(
            extract_disjoint_perfect_matchings(&k33(), 4),
            Err(BipartiteError::TooManyMatchings { .. })
        ));
    }

    #[test]
    fn extraction_from_two_c8() {
        // Two edge-disjoint 8-cycles overlaid on A = B = 0..4: 4-regular.
        let mut edges = Vec::new();
        for i in 0..4 {
            edges.push((i, i));
            edges.push((i, (i + 1) % 4));
            edges.push((i, (i + 2) % 4));
            edges.push((i, (i + 3) % 4));
        }
        let g = BipartiteGraph::new(4, 4, &edges).unwrap();
        let ms = extract_disjoint_perfect_matchings(&g, 1).unwrap();
        assert!(ms[0].is_perfect_in(&g));
        let residual = g.without_edges(&ms[0].pairs);
        assert_eq!(residual.regular_degree(), Some(3));
    }

    #[test]
    fn rejects_irregular_and_parallel() {
        let g = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        assert!(matches!(
            extract_disjoint_perfect_matchings(&g, 1),
            Err(BipartiteError::NotRegular { .. })
        ));
        assert_eq!(
            BipartiteGraph::new(2, 2, &[(0, 1), (0, 1)]),
            Err(BipartiteError::ParallelEdges(0, 1))
        );
    }
}
