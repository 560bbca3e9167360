//! Independent certificate checks.

use std::fmt;

use crate::bipartite::BipartiteGraph;
use crate::hypergraph::{Hypergraph, VertexId};
use crate::partition::TriMatchingPartition;

/// What a triangle block must be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TriangleRule {
    /// A hyperedge of the instance.
    #[default]
    Hyperedge,
    /// A 3-subset of some hyperedge.
    SubsetOfHyperedge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyOptions {
    pub triangle_rule: TriangleRule,
    /// Allow one triangle per connected component instead of one overall.
    pub per_component: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange(VertexId),
    RepeatedInBlock(Vec<VertexId>),
    Uncovered(VertexId),
    Overlap(VertexId),
    PairNotInHyperedge(VertexId, VertexId),
    TriangleNotHyperedge([VertexId; 3]),
    TriangleNotInHyperedge([VertexId; 3]),
    TooManyTriangles {
        count: usize,
        component: Option<usize>,
    },
    KeptNotEdge(usize, usize),
    BDegree {
        b: usize,
        degree: usize,
    },
    ADegree {
        a: usize,
        degree: usize,
    },
    TooManyDegreeThree {
        count: usize,
        component: usize,
    },
}

impl Violation {
    /// Violations caused by a certificate that does not fit the instance at all.
    pub fn is_size_mismatch(&self) -> bool {
        matches!(self, Violation::VertexOutOfRange(_))
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            Violation::RepeatedInBlock(b) => write!(f, "block {b:?} repeats a vertex"),
            Violation::Uncovered(v) => write!(f, "coverage: vertex {v} is not covered"),
            Violation::Overlap(v) => {
                write!(f, "not disjoint: vertex {v} is covered more than once")
            }
            Violation::PairNotInHyperedge(u, v) => {
                write!(f, "pair {u} {v}: block not in hereditary closure")
            }
            Violation::TriangleNotHyperedge(t) => {
                write!(f, "triangle {} {} {}: not a hyperedge", t[0], t[1], t[2])
            }
            Violation::TriangleNotInHyperedge(t) => {
                write!(
                    f,
                    "triangle {} {} {}: block not in hereditary closure",
                    t[0], t[1], t[2]
                )
            }
            Violation::TooManyTriangles {
                count,
                component: None,
            } => {
                write!(f, "{count} triangles, at most 1 allowed")
            }
            Violation::TooManyTriangles {
                count,
                component: Some(c),
            } => {
                write!(f, "{count} triangles in component {c}, at most 1 allowed")
            }
            Violation::KeptNotEdge(a, b) => write!(f, "keep {a} {b}: not an edge"),
            Violation::BDegree { b, degree } => {
                write!(f, "B-vertex {b} has kept degree {degree}, expected 1")
            }
            Violation::ADegree { a, degree } => {
                write!(
                    f,
                    "A-vertex {a} has kept degree {degree}, expected 0, 2 or 3"
                )
            }
            Violation::TooManyDegreeThree { count, component } => {
                write!(
                    f,
                    "{count} A-vertices of degree 3 in component {component}, at most 1 allowed"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_size_mismatch(&self) -> bool {
        self.violations.iter().any(Violation::is_size_mismatch)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return writeln!(f, "OK");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn verify(h: &Hypergraph, cert: &TriMatchingPartition, opts: VerifyOptions) -> VerifyReport {
    let triangles: Vec<[VertexId; 3]> = cert.triangle().into_iter().collect();
    verify_blocks(h, &triangles, cert.pairs(), opts)
}

/// Checks that triangles and pairs partition the vertex set, pairs are shadow
/// edges, triangles obey `opts.triangle_rule`, and the triangle count limit holds.
pub fn verify_blocks(
    h: &Hypergraph,
    triangles: &[[VertexId; 3]],
    pairs: &[(VertexId, VertexId)],
    opts: VerifyOptions,
) -> VerifyReport {
    let n = h.n();
    let mut violations = Vec::new();
    let blocks = triangles
        .iter()
        .map(|t| t.to_vec())
        .chain(pairs.iter().map(|&(u, v)| vec![u, v]));
    let mut count = vec![0usize; n];
    for block in blocks {
        let mut sorted = block.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            violations.push(Violation::RepeatedInBlock(block.clone()));
        }
        for &v in &block {
            if v >= n {
                violations.push(Violation::VertexOutOfRange(v));
            } else {
                count[v] += 1;
            }
        }
    }
    if violations.iter().any(Violation::is_size_mismatch) {
        return VerifyReport { violations };
    }
    for (v, &c) in count.iter().enumerate() {
        match c {
            0 => violations.push(Violation::Uncovered(v)),
            1 => {}
            _ => violations.push(Violation::Overlap(v)),
        }
    }
    let shadow = h.shadow_graph();
    for &(u, v) in pairs {
        if u != v && !shadow.has_edge(u, v) {
            violations.push(Violation::PairNotInHyperedge(u, v));
        }
    }
    for t in triangles {
        let mut s = *t;
        s.sort_unstable();
        match opts.triangle_rule {
            TriangleRule::Hyperedge if !h.contains_hyperedge(&s) => {
                violations.push(Violation::TriangleNotHyperedge(s))
            }
            TriangleRule::SubsetOfHyperedge if h.first_hyperedge_containing(&s).is_none() => {
                violations.push(Violation::TriangleNotInHyperedge(s))
            }
            _ => {}
        }
    }
    if opts.per_component {
        let comps = shadow.components();
        let mut comp_of = vec![0; n];
        for (i, block) in comps.blocks.iter().enumerate() {
            for &v in block {
                comp_of[v] = i;
            }
        }
        let mut per = vec![0usize; comps.len()];
        for t in triangles {
            per[comp_of[t[0]]] += 1;
        }
        for (c, &count) in per.iter().enumerate() {
            if count > 1 {
                violations.push(Violation::TooManyTriangles {
                    count,
                    component: Some(c),
                });
            }
        }
    } else if triangles.len() > 1 {
        violations.push(Violation::TooManyTriangles {
            count: triangles.len(),
            component: None,
        });
    }
    VerifyReport { violations }
}

/// Checks a kept-edge set: edges of `g`, every B-degree 1, A-degrees in
/// {0, 2, 3}, and at most one degree-3 A-vertex per connected component.
pub fn verify_lu(g: &BipartiteGraph, kept: &[(usize, usize)]) -> VerifyReport {
    let mut violations = Vec::new();
    let mut deg_a = vec![0usize; g.n_a()];
    let mut deg_b = vec![0usize; g.n_b()];
    for &(a, b) in kept {
        if a >= g.n_a() {
            violations.push(Violation::VertexOutOfRange(a));
            continue;
        }
        if b >= g.n_b() {
            violations.push(Violation::VertexOutOfRange(b));
            continue;
        }
        if !g.has_edge(a, b) {
            violations.push(Violation::KeptNotEdge(a, b));
        }
        deg_a[a] += 1;
        deg_b[b] += 1;
    }
    if violations.iter().any(Violation::is_size_mismatch) {
        return VerifyReport { violations };
    }
    for (b, &d) in deg_b.iter().enumerate() {
        if d != 1 {
            violations.push(Violation::BDegree { b, degree: d });
        }
    }
    for (a, &d) in deg_a.iter().enumerate() {
        if !matches!(d, 0 | 2 | 3) {
            violations.push(Violation::ADegree { a, degree: d });
        }
    }
    let comps = g.to_simple().components();
    for (c, block) in comps.blocks.iter().enumerate() {
        let count = block
            .iter()
            .filter(|&&v| v < g.n_a() && deg_a[v] == 3)
            .count();
        if count > 1 {
            violations.push(Violation::TooManyDegreeThree {
                count,
                component: c,
            });
        }
    }
    VerifyReport { violations }
}
