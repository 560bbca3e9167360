//! Seeded instance generators.
//!
//! All randomness comes from [`SplitMix64`], spelled out here so corpora can
//! be reproduced bit-for-bit by other implementations:
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15            (wrapping)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9      (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB      (wrapping)
//! output z ^ (z >> 31)
//! ```
//!
//! `below(n)` draws `x` until `x < 2^64 - (2^64 mod n)` and returns `x mod n`.
//! Shuffles are Fisher-Yates from the top: for `i = len-1 .. 1`, swap `i`
//! with `below(i + 1)`.

use thiserror::Error;

use crate::bipartite::BipartiteGraph;
use crate::hypergraph::Hypergraph;

/// Maximum rejection rounds before a generator gives up.
pub const MAX_ROUNDS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub u64);

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: Seed) -> Self {
        SplitMix64 { state: seed.0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Independent child stream seeded from this one.
    pub fn split(&mut self) -> SplitMix64 {
        SplitMix64 {
            state: self.next_u64(),
        }
    }

    /// Uniform integer in `0..n`. Panics if `n == 0`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below(0)");
        let n = n as u64;
        let limit = u64::MAX - (u64::MAX % n);
        loop {
            let x = self.next_u64();
            if x < limit {
                return (x % n) as usize;
            }
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        self.shuffle(&mut p);
        p
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("generation failed after {0} rejection rounds")]
    GenerationFailed(usize),
}

/// Random 3-uniform 3-regular hypergraph on `n` vertices.
pub fn gen_3u3r(n: usize, seed: Seed, require_connected: bool) -> Result<Hypergraph, GenError> {
    gen_uniform_regular(n, 3, seed, require_connected)
}

/// Random k-uniform k-regular hypergraph from the permutation model: hyperedge
/// `i` is `{p_0(i), ..., p_{k-1}(i)}` for independent random permutations
/// `p_j`, redrawn while some hyperedge repeats a vertex (or, optionally, while
/// the shadow graph is disconnected). For `k >= 4` each permutation is redrawn
/// separately, since whole-tuple rejection almost never succeeds.
pub fn gen_uniform_regular(
    n: usize,
    k: usize,
    seed: Seed,
    require_connected: bool,
) -> Result<Hypergraph, GenError> {
    if k < 2 || n < k {
        return Err(GenError::InvalidParameters(format!(
            "need k >= 2 and n >= k (n = {n}, k = {k})"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut rounds = 0;
    while rounds < MAX_ROUNDS {
        let perms = if k <= 3 {
            rounds += 1;
            (0..k).map(|_| rng.permutation(n)).collect()
        } else {
            match draw_compatible(n, k, &mut rng, &mut rounds) {
                Some(perms) => perms,
                None => break,
            }
        };
        let edges: Vec<Vec<usize>> = (0..n)
            .map(|i| perms.iter().map(|p| p[i]).collect())
            .collect();
        let Ok(h) = Hypergraph::new(n, &edges) else {
            continue;
        };
        if require_connected && !h.shadow_graph().is_connected() {
            continue;
        }
        return Ok(h);
    }
    Err(GenError::GenerationFailed(MAX_ROUNDS))
}

/// Draws `k` permutations, redrawing each until no slot repeats a vertex of
/// an earlier permutation. Every draw counts against `rounds`.
fn draw_compatible(
    n: usize,
    k: usize,
    rng: &mut SplitMix64,
    rounds: &mut usize,
) -> Option<Vec<Vec<usize>>> {
    let mut perms: Vec<Vec<usize>> = Vec::with_capacity(k);
    while perms.len() < k {
        if *rounds >= MAX_ROUNDS {
            return None;
        }
        *rounds += 1;
        let p = rng.permutation(n);
        if (0..n).all(|i| perms.iter().all(|q| q[i] != p[i])) {
            perms.push(p);
        }
    }
    Some(perms)
}

/// Random simple k-regular bipartite graph with `n_a` vertices per side, the
/// union of k perfect matchings. Each matching is redrawn until it avoids all
/// earlier ones; the rejection budget is shared across matchings.
pub fn gen_bip_regular(n_a: usize, k: usize, seed: Seed) -> Result<BipartiteGraph, GenError> {
    if k == 0 || n_a < k {
        return Err(GenError::InvalidParameters(format!(
            "need n_a >= k >= 1 (n_a = {n_a}, k = {k})"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(k); n_a];
    let mut rounds = 0;
    for _ in 0..k {
        loop {
            if rounds == MAX_ROUNDS {
                return Err(GenError::GenerationFailed(MAX_ROUNDS));
            }
            rounds += 1;
            let p = rng.permutation(n_a);
            if (0..n_a).all(|a| !adj[a].contains(&p[a])) {
                for (a, list) in adj.iter_mut().enumerate() {
                    list.push(p[a]);
                }
                break;
            }
        }
    }
    let edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(a, list)| list.iter().map(move |&b| (a, b)))
        .collect();
    Ok(BipartiteGraph::new(n_a, n_a, &edges).expect("matchings are disjoint"))
}
