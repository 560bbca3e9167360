//! Exhaustive backtracking oracles for small instances.
//!
//! Nothing here touches the blossom engine or the ear machinery: every search
//! branches on the lowest uncovered vertex and tries its partners in order.

use thiserror::Error;

use crate::hypergraph::{Hypergraph, SimpleGraph, VertexId};
use crate::matching::Matching;
use crate::partition::TriMatchingPartition;
use crate::verify::TriangleRule;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    /// Cap on backtracking nodes per oracle call.
    pub max_nodes: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 14,
            max_nodes: 50_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {n} vertices, oracle cap is {cap}")]
    TooManyVertices { n: usize, cap: usize },
    #[error("backtracking exceeded {0} nodes")]
    TooManyNodes(u64),
}

type Visit<'f> = &'f mut dyn FnMut(&[(VertexId, VertexId)]) -> bool;

struct Search<'a> {
    g: &'a SimpleGraph,
    covered: Vec<bool>,
    stack: Vec<(VertexId, VertexId)>,
    nodes: u64,
    max_nodes: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a SimpleGraph, removed: &[VertexId], budget: OracleBudget) -> Self {
        let mut covered = vec![false; g.n()];
        for &v in removed {
            covered[v] = true;
        }
        Search {
            g,
            covered,
            stack: Vec::new(),
            nodes: 0,
            max_nodes: budget.max_nodes,
        }
    }

    fn tick(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(OracleError::TooManyNodes(self.max_nodes));
        }
        Ok(())
    }

    /// Calls `found` for every perfect matching of the uncovered vertices;
    /// stops early when `found` returns true.
    fn perfect(&mut self, found: Visit<'_>) -> Result<bool, OracleError> {
        self.tick()?;
        let Some(v) = self.covered.iter().position(|&c| !c) else {
            return Ok(found(&self.stack));
        };
        self.covered[v] = true;
        for &u in self.g.neighbors(v) {
            if self.covered[u] {
                continue;
            }
            self.covered[u] = true;
            self.stack.push((v, u));
            let stop = self.perfect(found)?;
            self.stack.pop();
            self.covered[u] = false;
            if stop {
                self.covered[v] = false;
                return Ok(true);
            }
        }
        self.covered[v] = false;
        Ok(false)
    }

    fn max_size(&mut self) -> Result<usize, OracleError> {
        self.tick()?;
        let Some(v) = self.covered.iter().position(|&c| !c) else {
            return Ok(0);
        };
        self.covered[v] = true;
        let mut best = self.max_size()?;
        for &u in self.g.neighbors(v) {
            if self.covered[u] {
                continue;
            }
            self.covered[u] = true;
            best = best.max(1 + self.max_size()?);
            self.covered[u] = false;
        }
        self.covered[v] = false;
        Ok(best)
    }
}

fn check_size(n: usize, budget: OracleBudget) -> Result<(), OracleError> {
    if n > budget.max_vertices {
        return Err(OracleError::TooManyVertices {
            n,
            cap: budget.max_vertices,
        });
    }
    Ok(())
}

fn all_perfect_on(
    g: &SimpleGraph,
    removed: &[VertexId],
    budget: OracleBudget,
) -> Result<Vec<Matching>, OracleError> {
    let mut out = Vec::new();
    Search::new(g, removed, budget).perfect(&mut |pairs| {
        out.push(Matching::from_pairs(pairs.iter().copied()));
        false
    })?;
    out.sort();
    Ok(out)
}

/// Every perfect matching of `g`, sorted.
pub fn oracle_all_perfect_matchings(
    g: &SimpleGraph,
    budget: OracleBudget,
) -> Result<Vec<Matching>, OracleError> {
    check_size(g.n(), budget)?;
    all_perfect_on(g, &[], budget)
}

/// Every perfect matching of `g` with `removed` deleted, sorted.
pub fn oracle_perfect_matchings_without(
    g: &SimpleGraph,
    removed: &[VertexId],
    budget: OracleBudget,
) -> Result<Vec<Matching>, OracleError> {
    check_size(g.n(), budget)?;
    all_perfect_on(g, removed, budget)
}

/// Size of a maximum matching by exhaustive search.
pub fn oracle_max_matching_size(
    g: &SimpleGraph,
    budget: OracleBudget,
) -> Result<usize, OracleError> {
    check_size(g.n(), budget)?;
    Search::new(g, &[], budget).max_size()
}

/// Every partition of the vertex set into at most one triangle and shadow
/// edges, sorted.
pub fn oracle_tri_partitions(
    h: &Hypergraph,
    rule: TriangleRule,
    budget: OracleBudget,
) -> Result<Vec<TriMatchingPartition>, OracleError> {
    check_size(h.n(), budget)?;
    let g = h.shadow_graph();
    let candidates: Vec<Vec<VertexId>> = match rule {
        TriangleRule::Hyperedge => h
            .hyperedges()
            .iter()
            .filter(|e| e.len() == 3)
            .cloned()
            .collect(),
        TriangleRule::SubsetOfHyperedge => h.hereditary_members(3).unwrap_or_default(),
    };
    let mut out: Vec<TriMatchingPartition> = all_perfect_on(&g, &[], budget)?
        .into_iter()
        .map(|m| TriMatchingPartition::new(None, m.pairs().iter().copied()))
        .collect();
    for t in candidates {
        for m in all_perfect_on(&g, &t, budget)? {
            out.push(TriMatchingPartition::new(
                Some([t[0], t[1], t[2]]),
                m.pairs().iter().copied(),
            ));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Ground-truth factor-criticality: `g - v` has a perfect matching for every `v`.
pub fn oracle_factor_critical(g: &SimpleGraph, budget: OracleBudget) -> Result<bool, OracleError> {
    check_size(g.n(), budget)?;
    for v in 0..g.n() {
        let found = Search::new(g, &[v], budget).perfect(&mut |_| true)?;
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}
