use proptest::prelude::*;

use earslice::format::{
    parse_bipartite, parse_certificate, parse_graph, parse_hypergraph, write_bipartite,
    write_graph, write_hypergraph, write_partitions,
};
use earslice::oracle::{oracle_factor_critical, oracle_max_matching_size, OracleBudget};
use earslice::partition::{solve_k_uniform_components, TriMatchingPartition};
use earslice::{
    extract_disjoint_perfect_matchings, gen_3u3r, gen_bip_regular, gen_uniform_regular,
    is_factor_critical, lu_subgraph, maximum_matching, odd_ear_decomposition, perfect_matching,
    solve_3u3r, solve_components, solve_k_uniform, verify, verify_lu, EarDecomposition, Hypergraph,
    Seed, SimpleGraph, TriangleRule, VerifyOptions,
};

fn graph_from_mask(n: usize, mask: u64) -> SimpleGraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    SimpleGraph::new(n, &edges).unwrap()
}

fn disjoint_union(a: &Hypergraph, b: &Hypergraph) -> Hypergraph {
    let shift = a.n();
    let edges = a.iter().map(|(e, m)| (e.to_vec(), m)).chain(
        b.iter()
            .map(|(e, m)| (e.iter().map(|v| v + shift).collect::<Vec<_>>(), m)),
    );
    Hypergraph::with_multiplicities(a.n() + b.n(), edges).unwrap()
}

fn opts(rule: TriangleRule, per_component: bool) -> VerifyOptions {
    VerifyOptions {
        triangle_rule: rule,
        per_component,
    }
}

#[test]
fn engine_matches_oracle_on_all_graphs_up_to_six_vertices() {
    let budget = OracleBudget::default();
    for n in 1..=6usize {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u64 << pairs {
            let g = graph_from_mask(n, mask);
            let m = maximum_matching(&g);
            assert!(m.is_matching_in(&g));
            assert_eq!(
                m.len(),
                oracle_max_matching_size(&g, budget).unwrap(),
                "n={n} mask={mask:#x}"
            );
            let fc = oracle_factor_critical(&g, budget).unwrap();
            assert_eq!(is_factor_critical(&g), fc, "n={n} mask={mask:#x}");
            if fc && n >= 3 {
                let d = odd_ear_decomposition(&g).unwrap();
                assert!(d.maximalize().unwrap().is_maximal());
            } else if !fc {
                assert!(odd_ear_decomposition(&g).is_err());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn matching_engine_agrees_with_oracle(n in 2usize..=10, mask in any::<u64>()) {
        let g = graph_from_mask(n, mask);
        let budget = OracleBudget::default();
        let m = maximum_matching(&g);
        prop_assert!(m.is_matching_in(&g));
        prop_assert_eq!(m.len(), oracle_max_matching_size(&g, budget).unwrap());
        prop_assert_eq!(is_factor_critical(&g), oracle_factor_critical(&g, budget).unwrap());
        prop_assert_eq!(perfect_matching(&g).is_some(), 2 * m.len() == n);
    }

    #[test]
    fn solve_3u3r_is_valid_with_parity(n in 3usize..60, seed in any::<u64>()) {
        let h = gen_3u3r(n, Seed(seed), true).unwrap();
        let cert = solve_3u3r(&h).unwrap();
        prop_assert!(verify(&h, &cert, opts(TriangleRule::Hyperedge, false)).is_ok());
        prop_assert_eq!(cert.triangle().is_some(), n % 2 == 1);
        if n % 2 == 1 {
            prop_assert!(is_factor_critical(&h.shadow_graph()));
        }
    }

    #[test]
    fn ear_decompositions_are_valid(n in 1usize..25, seed in any::<u64>()) {
        let h = gen_3u3r(2 * n + 1, Seed(seed), true).unwrap();
        let g = h.shadow_graph();
        let d = odd_ear_decomposition(&g).unwrap();
        prop_assert!(EarDecomposition::from_ears(&g, d.ears().to_vec()).is_ok());
        let m = d.maximalize().unwrap();
        prop_assert!(EarDecomposition::from_ears(&g, m.ears().to_vec()).is_ok());
        prop_assert!(m.is_maximal());
        prop_assert!(m.nontrivial_count() >= d.nontrivial_count());
    }

    #[test]
    fn components_get_one_triangle_each(a in 3usize..15, b in 3usize..15, seed in any::<u64>()) {
        let h = disjoint_union(
            &gen_3u3r(a, Seed(seed), true).unwrap(),
            &gen_3u3r(b, Seed(seed ^ 1), true).unwrap(),
        );
        prop_assert!(solve_3u3r(&h).is_err());
        let certs = solve_components(&h).unwrap();
        let triangles: Vec<[usize; 3]> = certs.iter().filter_map(TriMatchingPartition::triangle).collect();
        let pairs: Vec<(usize, usize)> = certs.iter().flat_map(|c| c.pairs().to_vec()).collect();
        prop_assert_eq!(triangles.len(), a % 2 + b % 2);
        let report = earslice::verify::verify_blocks(&h, &triangles, &pairs, opts(TriangleRule::Hyperedge, true));
        prop_assert!(report.is_ok(), "{}", report);
    }

    #[test]
    fn k_uniform_blocks_are_hereditary(n in 8usize..30, k in 3usize..=6, seed in any::<u64>()) {
        prop_assume!(n >= k);
        let h = gen_uniform_regular(n, k, Seed(seed), true).unwrap();
        let cert = solve_k_uniform(&h, k).unwrap();
        prop_assert!(verify(&h, &cert, opts(TriangleRule::SubsetOfHyperedge, false)).is_ok());
        prop_assert_eq!(cert.triangle().is_some(), n % 2 == 1);
        let pairs = h.hereditary_members(2).unwrap();
        let triples = h.hereditary_members(3).unwrap();
        for &(u, v) in cert.pairs() {
            prop_assert!(pairs.contains(&vec![u, v]));
        }
        if let Some(t) = cert.triangle() {
            prop_assert!(triples.contains(&t.to_vec()));
        }
        prop_assert!(solve_k_uniform_components(&h, k).unwrap().len() == 1);
    }

    #[test]
    fn lu_subgraph_invariants(n_a in 3usize..120, k in 3usize..=6, seed in any::<u64>()) {
        prop_assume!(n_a >= k);
        let g = gen_bip_regular(n_a, k, Seed(seed)).unwrap();
        let lu = lu_subgraph(&g, k).unwrap();
        let report = verify_lu(&g, &lu.kept);
        prop_assert!(report.is_ok(), "{}", report);
        prop_assert_eq!(lu.kept.len(), g.n_b());
        if g.to_simple().is_connected() {
            let mut degree = vec![0usize; g.n_a()];
            for &(a, _) in &lu.kept {
                degree[a] += 1;
            }
            let threes = degree.iter().filter(|&&d| d == 3).count();
            prop_assert_eq!(threes, g.n_b() % 2);
        }
    }

    #[test]
    fn disjoint_perfect_matchings(n_a in 1usize..60, k in 1usize..=6, seed in any::<u64>()) {
        prop_assume!(n_a >= k);
        let g = gen_bip_regular(n_a, k, Seed(seed)).unwrap();
        let ms = extract_disjoint_perfect_matchings(&g, k).unwrap();
        prop_assert_eq!(ms.len(), k);
        let mut used = std::collections::BTreeSet::new();
        for m in &ms {
            prop_assert!(m.is_perfect_in(&g));
            for &p in &m.pairs {
                prop_assert!(used.insert(p));
            }
        }
    }

    #[test]
    fn formats_round_trip(n in 3usize..40, seed in any::<u64>()) {
        let h = gen_3u3r(n, Seed(seed), false).unwrap();
        let file = parse_hypergraph(&write_hypergraph(&h, 3)).unwrap();
        prop_assert_eq!(&file.hypergraph, &h);
        prop_assert_eq!(file.k, 3);
        let g = h.shadow_graph();
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        let b = gen_bip_regular(n, 3, Seed(seed)).unwrap();
        prop_assert_eq!(parse_bipartite(&write_bipartite(&b)).unwrap(), b);
        let cert = solve_components(&h).unwrap();
        let parsed = parse_certificate(&write_partitions(&cert)).unwrap();
        let triangles: Vec<[usize; 3]> = cert.iter().filter_map(TriMatchingPartition::triangle).collect();
        prop_assert_eq!(parsed.triangles.len(), triangles.len());
        prop_assert_eq!(parsed.pairs.len(), cert.iter().map(|c| c.pairs().len()).sum::<usize>());
    }

    #[test]
    fn generators_are_deterministic(n in 3usize..40, seed in any::<u64>()) {
        prop_assert_eq!(gen_3u3r(n, Seed(seed), false).unwrap(), gen_3u3r(n, Seed(seed), false).unwrap());
        prop_assert_eq!(gen_bip_regular(n, 3, Seed(seed)).unwrap(), gen_bip_regular(n, 3, Seed(seed)).unwrap());
    }
}
