mod common;

use minorforge::alpha2::{is_alpha_le_2, seagull_conditions};
use minorforge::bitset::VertexSet;
use minorforge::clique::{clique_number, find_max_clique};
use minorforge::connectivity::{check_k_connected, vertex_connectivity};
use minorforge::format::{read_graph, write_graph};
use minorforge::generators::{gen_bounded_omega_complement, gen_tfp_complement};
use minorforge::graph::{contract, verify_minor, BranchDecomposition, Graph};
use minorforge::rng::trial_rng;
use minorforge::sampler::{sample_uniform_pairing, subsample_matching, Lambda};
use minorforge::seagull::seagull_partition;
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn brute_clique_number(g: &Graph) -> usize {
    let n = g.vertex_count();
    (0u32..1 << n)
        .filter(|&mask| {
            let s = VertexSet::from_iter(n, (0..n).filter(|&v| mask >> v & 1 == 1));
            g.is_clique(&s)
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Smallest vertex set whose removal disconnects `g` or leaves one vertex.
fn brute_connectivity(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut best = n.saturating_sub(1);
    for mask in 0u32..1 << n {
        let removed = mask.count_ones() as usize;
        if removed < best && n - removed >= 2 {
            let rest = VertexSet::from_iter(n, (0..n).filter(|&v| mask >> v & 1 == 0));
            if !g.is_connected_within(&rest) {
                best = removed;
            }
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn connectivity_matches_enumeration(g in arb_graph(10)) {
        let kappa = brute_connectivity(&g);
        prop_assert_eq!(vertex_connectivity(&g), kappa);
        let check = check_k_connected(&g, kappa + 1);
        prop_assert!(!check.connected);
        if let Some(cut) = check.cut {
            prop_assert!(cut.len() <= kappa);
            prop_assert!(!g.is_connected_within(&cut.complement()));
        }
    }

    #[test]
    fn format_round_trips(g in arb_graph(14)) {
        let text = write_graph(&g);
        let back = read_graph(&text).unwrap();
        prop_assert_eq!(write_graph(&back), text);
        prop_assert_eq!(back.edge_count(), g.edge_count());
    }

    #[test]
    fn complement_is_involutive(g in arb_graph(14)) {
        let c = g.complement();
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.vertex_count() * (g.vertex_count() - 1) / 2);
        prop_assert_eq!(write_graph(&c.complement()), write_graph(&g));
    }

    #[test]
    fn clique_search_matches_enumeration(g in arb_graph(12)) {
        let expected = brute_clique_number(&g);
        prop_assert_eq!(clique_number(&g), expected);
        let search = find_max_clique(&g, None);
        prop_assert!(search.exact);
        prop_assert_eq!(search.clique.len(), expected);
        prop_assert!(g.is_clique(&search.clique));
    }

    #[test]
    fn alpha_test_matches_oracle(g in arb_graph(11)) {
        prop_assert_eq!(is_alpha_le_2(&g), common::alpha_at_most_two(&g));
    }

    #[test]
    fn conditions_match_packing(seed in any::<u64>(), n in 3usize..=12) {
        let g = gen_tfp_complement(n, &mut trial_rng(seed, 0));
        let best = common::max_disjoint_seagulls(&g);
        for k in 0..=n / 3 {
            let report = seagull_conditions(&g, k).unwrap();
            prop_assert_eq!(report.all_hold(), best >= k, "k = {}", k);
        }
    }

    #[test]
    fn random_partition_contracts(g in arb_graph(10), seed in any::<u64>()) {
        // Contract the pairs of a random pairing that are edges of g.
        let n = g.vertex_count();
        let mut rng = trial_rng(seed, 0);
        let perm = sample_uniform_pairing(n + n % 2, &mut rng).unwrap().partner_map();
        let mut parts = Vec::new();
        for (v, &w) in perm.iter().enumerate().take(n) {
            if v < w && w < n && g.has_edge(v, w) {
                parts.push(vec![v, w]);
            }
        }
        let d = BranchDecomposition::from_lists(n, &parts);
        let h = contract(&g, &d).unwrap();
        prop_assert!(verify_minor(&g, &h, &d).is_valid());
        prop_assert!(common::is_contraction(&g, &h, &parts));
    }

    #[test]
    fn pairings_are_perfect(half in 1usize..40, seed in any::<u64>()) {
        let m = sample_uniform_pairing(2 * half, &mut trial_rng(seed, 0)).unwrap();
        let partner = m.partner_map();
        for v in 0..2 * half {
            prop_assert_ne!(partner[v], v);
            prop_assert_eq!(partner[partner[v]], v);
        }
    }

    #[test]
    fn subsample_is_subset_of_pairing_edges(seed in any::<u64>(), take in 0usize..6) {
        let g = gen_tfp_complement(20, &mut trial_rng(seed, 1));
        let mut rng = trial_rng(seed, 2);
        let m = sample_uniform_pairing(20, &mut rng).unwrap();
        match subsample_matching(&m, &g, take, &mut rng) {
            Ok(sub) => {
                prop_assert_eq!(sub.edges.len(), take);
                for &(u, v) in &sub.edges {
                    prop_assert!(g.has_edge(u, v) && m.contains_pair(u, v));
                }
            }
            Err(_) => {
                let available = m.canonical().iter().filter(|&&(u, v)| g.has_edge(u, v)).count();
                prop_assert!(available < take);
            }
        }
    }

    #[test]
    fn lambda_parses_its_display(num in 1u64..10_000, den in 1u64..1000) {
        let l = Lambda::new(num, den);
        let back: Lambda = l.to_string().parse().unwrap();
        prop_assert_eq!(back, l);
        prop_assert!(l.le_ratio(num, den) && l.le_ratio(num + 1, den));
        prop_assert_eq!(l.square_gt(0), true);
    }
}

#[test]
fn bounded_omega_graphs_partition_into_seagulls() {
    let mut solved = 0;
    for seed in 0..80 {
        let k = 4 + (seed % 2) as usize;
        let Some(g) = gen_bounded_omega_complement(3 * k, k, 200, &mut trial_rng(seed, 9)) else {
            continue;
        };
        assert!(common::alpha_at_most_two(&g));
        assert!(clique_number(&g) <= k);
        let p = seagull_partition(&g).unwrap().expect("partition exists");
        assert!(p.is_valid_in(&g));
        assert_eq!(p.covered(3 * k).len(), 3 * k);
        if k <= 4 {
            assert_eq!(common::max_disjoint_seagulls(&g), k);
        }
        solved += 1;
    }
    assert!(solved >= 50, "only {solved} instances generated");
}
