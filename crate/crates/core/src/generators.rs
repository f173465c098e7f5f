//! Graph families with independence number at most two.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

/// Runs the triangle-free process to maximality and returns the complement.
///
/// All vertex pairs are visited in uniformly random order; a pair becomes an
/// edge unless it would close a triangle. The final graph is maximal
/// triangle-free, so its complement has no independent set of size three.
pub fn gen_tfp_complement<R: Rng + ?Sized>(num_vertices: usize, rng: &mut R) -> Graph {
    triangle_free_process(num_vertices, rng).complement()
}

pub fn triangle_free_process<R: Rng + ?Sized>(num_vertices: usize, rng: &mut R) -> Graph {
    let n = num_vertices;
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            pairs.push((u, v));
        }
    }
    pairs.shuffle(rng);
    let mut b = GraphBuilder::new(n);
    for (u, v) in pairs {
        let (u, v) = (u as usize, v as usize);
        if !b.neighbors(u).intersects(b.neighbors(v)) {
            b.add_edge(u, v).expect("pair in range");
        }
    }
    b.build()
}

/// Extends a triangle-free edge set to a maximal one, visiting the missing
/// pairs in random order.
fn saturate<R: Rng + ?Sized>(b: &mut GraphBuilder, rng: &mut R) {
    let n = b.vertex_count();
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !b.has_edge(u, v))
        .collect();
    pairs.shuffle(rng);
    for (u, v) in pairs {
        if !b.neighbors(u).intersects(b.neighbors(v)) {
            b.add_edge(u, v).expect("pair in range");
        }
    }
}

/// Searches for an α ≤ 2 graph with clique number at most `omega_max` by
/// local search on its triangle-free complement: repeatedly join two
/// vertices of a maximum independent set, delete one edge of every
/// triangle this closes, and re-saturate. `None` after `max_steps` moves.
pub fn gen_bounded_omega_complement<R: Rng + ?Sized>(
    num_vertices: usize,
    omega_max: usize,
    max_steps: usize,
    rng: &mut R,
) -> Option<Graph> {
    let n = num_vertices;
    let mut h = triangle_free_process(n, rng);
    for _ in 0..=max_steps {
        let g = h.complement();
        let worst = crate::clique::max_clique(&g).to_vec();
        if worst.len() <= omega_max {
            return Some(g);
        }
        let picked: Vec<usize> = worst.choose_multiple(rng, 2).copied().collect();
        let (u, v) = (picked[0], picked[1]);
        let common = h.neighbors(u).intersection(h.neighbors(v));
        let dropped: Vec<(usize, usize)> = common
            .iter()
            .map(|w| {
                let end = if rng.random_bool(0.5) { u } else { v };
                (end.min(w), end.max(w))
            })
            .collect();
        let mut b = GraphBuilder::new(n);
        for e in h.edges().filter(|e| !dropped.contains(e)) {
            b.add_edge(e.0, e.1).expect("in range");
        }
        b.add_edge(u, v).expect("in range");
        saturate(&mut b, rng);
        h = b.build();
    }
    None
}

/// Complement of the blow-up of C5 with every vertex replaced by an
/// independent set of size `t`. Vertex `i * t + j` lies in part `i`.
pub fn gen_c5_blowup_complement(t: usize) -> Graph {
    let n = 5 * t;
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let (pu, pv) = (u / t, v / t);
            let gap = (pv + 5 - pu) % 5;
            // Blow-up edges join cyclically consecutive parts.
            let blowup_edge = gap == 1 || gap == 4;
            if !blowup_edge {
                b.add_edge(u, v).expect("in range");
            }
        }
    }
    b.build()
}

/// Two disjoint cliques of sizes `left` and `right` (the complement of
/// `K_{left,right}`).
pub fn gen_two_clique_complement(left: usize, right: usize) -> Graph {
    let n = left + right;
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if (u < left) == (v < left) {
                b.add_edge(u, v).expect("in range");
            }
        }
    }
    b.build()
}

/// Circulant graph on `n` vertices joining `i` and `i ± d` for each `d`.
pub fn circulant(n: usize, distances: &[usize]) -> Graph {
    let mut b = GraphBuilder::new(n);
    for i in 0..n {
        for &d in distances {
            let j = (i + d) % n;
            if i != j {
                b.add_edge(i, j).expect("in range");
            }
        }
    }
    b.build()
}

fn cycle(n: usize) -> Graph {
    circulant(n, &[1])
}

/// Named graphs with fixed labels:
///
/// - `c5`: cycle `0-1-2-3-4-0`.
/// - `five_wheel`: rim `0..5` as in `c5`, hub `5`.
/// - `petersen`: outer cycle `0..5`, inner pentagram `5 + i ~ 5 + (i + 2) % 5`,
///   spokes `i ~ 5 + i`. `petersen_complement` is its complement.
/// - `p3`: path `0-1-2`.
/// - `k<n>` or `k_<n>`: complete graph.
/// - `circulant13_minus_one_complement`: the circulant on 13 vertices with
///   distances ±1, ±5, vertex 12 deleted, complemented (12 vertices,
///   independence number 2, clique number 4).
pub fn named(name: &str) -> Result<Graph> {
    let g = match name {
        "c5" => cycle(5),
        "five_wheel" => {
            let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
            edges.extend((0..5).map(|i| (i, 5)));
            Graph::from_edges(6, &edges)?
        }
        "petersen" => petersen(),
        "petersen_complement" => petersen().complement(),
        "p3" => Graph::from_edges(3, &[(0, 1), (1, 2)])?,
        "circulant13_minus_one_complement" => {
            let c = circulant(13, &[1, 5]);
            let keep = crate::bitset::VertexSet::from_iter(13, 0..12);
            c.induced_subgraph(&keep).0.complement()
        }
        other => {
            let digits = other
                .strip_prefix("k_")
                .or_else(|| other.strip_prefix('k'))
                .ok_or_else(|| Error::UnknownName(other.to_string()))?;
            let n: usize = digits
                .parse()
                .map_err(|_| Error::UnknownName(other.to_string()))?;
            Graph::complete(n)
        }
    };
    Ok(g)
}

fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_edges(10, &edges).expect("static edges")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha2::is_alpha_le_2;
    use crate::clique::clique_number;
    use crate::rng::trial_rng;

    #[test]
    fn bounded_omega_family() {
        for k in [4, 5] {
            let mut found = 0;
            for seed in 0..20 {
                if let Some(g) = gen_bounded_omega_complement(3 * k, k, 200, &mut trial_rng(seed, 9)) {
                    assert!(is_alpha_le_2(&g));
                    assert!(clique_number(&g) <= k);
                    found += 1;
                }
            }
            assert!(found >= 15, "k={k}: {found}");
        }
        assert!(gen_bounded_omega_complement(10, 1, 5, &mut trial_rng(0, 0)).is_none());
    }

    #[test]
    fn named_shapes() {
        let w = named("five_wheel").unwrap();
        assert_eq!((w.vertex_count(), w.edge_count()), (6, 10));
        let p = named("petersen").unwrap();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert_eq!(named("k6").unwrap(), Graph::complete(6));
        assert_eq!(named("k_4").unwrap(), Graph::complete(4));
        assert_eq!(named("nope"), Err(Error::UnknownName("nope".into())));
        assert_eq!(named("kx"), Err(Error::UnknownName("kx".into())));
    }

    #[test]
    fn named_alpha_and_omega() {
        let pc = named("petersen_complement").unwrap();
        assert!(is_alpha_le_2(&pc));
        assert_eq!(clique_number(&pc), 4);
        let c = named("circulant13_minus_one_complement").unwrap();
        assert_eq!(c.vertex_count(), 12);
        assert!(is_alpha_le_2(&c));
        assert_eq!(clique_number(&c), 4);
    }

    #[test]
    fn c5_blowup() {
        let g1 = gen_c5_blowup_complement(1);
        assert_eq!(g1.edge_count(), 5);
        assert!((0..5).all(|v| g1.degree(v) == 2));
        let g2 = gen_c5_blowup_complement(2);
        assert_eq!(g2.vertex_count(), 10);
        assert_eq!(clique_number(&g2), 4);
        for t in 1..5 {
            assert!(is_alpha_le_2(&gen_c5_blowup_complement(t)));
        }
    }

    #[test]
    fn two_cliques() {
        let g = gen_two_clique_complement(3, 4);
        assert_eq!(g.edge_count(), 3 + 6);
        assert!(is_alpha_le_2(&g));
    }

    #[test]
    fn tfp_is_maximal_triangle_free_and_deterministic() {
        for n in [1, 2, 3, 10, 40] {
            let t = triangle_free_process(n, &mut trial_rng(5, n as u64));
            for (u, v) in t.edges() {
                assert!(!t.neighbors(u).intersects(t.neighbors(v)));
            }
            // maximal: every non-edge closes a triangle
            for (u, v) in t.complement().edges() {
                assert!(t.neighbors(u).intersects(t.neighbors(v)));
            }
            assert!(is_alpha_le_2(&t.complement()));
        }
        let a = gen_tfp_complement(30, &mut trial_rng(1, 0));
        let b = gen_tfp_complement(30, &mut trial_rng(1, 0));
        assert_eq!(a, b);
    }
}
