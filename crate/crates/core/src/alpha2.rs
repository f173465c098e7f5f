//! Structure of graphs with independence number at most two: clique
//! statistics, capacities, and the seagull-packing conditions.

use std::fmt;

use crate::bitset::VertexSet;
use crate::clique::for_each_clique;
use crate::connectivity::check_k_connected;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::complement_matching_size;

/// True iff `g` has no independent set of size three, i.e. its complement
/// is triangle-free.
pub fn is_alpha_le_2(g: &Graph) -> bool {
    let n = g.vertex_count();
    let non: Vec<VertexSet> = (0..n).map(|v| g.non_neighbors(v)).collect();
    (0..n).all(|u| {
        non[u]
            .iter()
            .filter(|&v| v > u)
            .all(|v| !non[u].intersects(&non[v]))
    })
}

/// The clique `Z` together with `a = Σ_{v∈Z} deg_Ḡ(v)` and
/// `b = |E(Ḡ − Z)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueStats {
    pub z_clique: VertexSet,
    pub k: usize,
    pub a: usize,
    pub b: usize,
}

impl CliqueStats {
    /// `a ≤ k²`.
    pub fn a_within_bound(&self) -> bool {
        self.a <= self.k * self.k
    }

    /// `a + 2b ≤ k(|V| − k)`.
    pub fn a_plus_2b_within_bound(&self) -> bool {
        let n = self.z_clique.capacity();
        self.a + 2 * self.b <= self.k * (n - self.k)
    }
}

pub fn clique_stats(g: &Graph, z: &VertexSet) -> Result<CliqueStats> {
    if !g.is_clique(z) {
        return Err(Error::NotAClique);
    }
    let a = z.iter().map(|v| g.non_degree(v)).sum();
    let rest = z.complement();
    let m = rest.len();
    let inner_edges: usize = rest
        .iter()
        .map(|v| g.neighbors(v).intersection_len(&rest))
        .sum::<usize>()
        / 2;
    Ok(CliqueStats {
        z_clique: z.clone(),
        k: z.len(),
        a,
        b: m * m.saturating_sub(1) / 2 - inner_edges,
    })
}

/// A nonnegative half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(pub u64);

impl HalfInt {
    pub fn from_twice(twice: u64) -> Self {
        HalfInt(twice)
    }

    pub fn twice(self) -> u64 {
        self.0
    }

    pub fn at_least(self, k: u64) -> bool {
        self.0 >= 2 * k
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Vertices outside `c` with both a neighbour and a non-neighbour in `c`.
pub fn mixed_vertices(g: &Graph, c: &VertexSet) -> VertexSet {
    let size = c.len();
    let outside = c.complement();
    VertexSet::from_iter(
        g.vertex_count(),
        outside.iter().filter(|&v| {
            let hits = g.neighbors(v).intersection_len(c);
            hits > 0 && hits < size
        }),
    )
}

/// `cap(C) = (|V − C| + |X|)/2`, exact.
pub fn capacity(g: &Graph, c: &VertexSet) -> Result<HalfInt> {
    if !g.is_clique(c) {
        return Err(Error::NotAClique);
    }
    Ok(capacity_unchecked(g, c))
}

fn capacity_unchecked(g: &Graph, c: &VertexSet) -> HalfInt {
    let outside = (g.vertex_count() - c.len()) as u64;
    HalfInt::from_twice(outside + mixed_vertices(g, c).len() as u64)
}

/// The smallest capacity over all nonempty cliques of `g`, with a witness.
/// Returns `None` for the empty graph.
pub fn min_capacity(g: &Graph) -> Option<(HalfInt, VertexSet)> {
    let n = g.vertex_count();
    let mut best: Option<(HalfInt, VertexSet)> = None;
    for_each_clique(g, |c| {
        if c.is_empty() {
            return;
        }
        let set = VertexSet::from_iter(n, c.iter().copied());
        let cap = capacity_unchecked(g, &set);
        if best.as_ref().is_none_or(|(b, _)| cap < *b) {
            best = Some((cap, set));
        }
    });
    best
}

/// A clique with capacity below `k`, if any. Only cliques larger than
/// `|V| − 2k` can qualify, since `cap(C) ≥ (|V| − |C|)/2`.
pub fn low_capacity_clique(g: &Graph, k: usize) -> Option<VertexSet> {
    let n = g.vertex_count();
    let threshold = n.saturating_sub(2 * k);
    fn rec(
        g: &Graph,
        cand: VertexSet,
        cur: &mut Vec<usize>,
        threshold: usize,
        k: usize,
    ) -> Option<VertexSet> {
        let n = g.vertex_count();
        if cur.len() + cand.len() <= threshold {
            return None;
        }
        if cur.len() > threshold {
            let set = VertexSet::from_iter(n, cur.iter().copied());
            if !capacity_unchecked(g, &set).at_least(k as u64) {
                return Some(set);
            }
        }
        for v in cand.iter() {
            let mut next = cand.intersection(g.neighbors(v));
            for w in next.clone().iter().take_while(|&w| w <= v) {
                next.remove(w);
            }
            cur.push(v);
            let found = rec(g, next, cur, threshold, k);
            cur.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
    rec(g, g.vertices(), &mut Vec::new(), threshold, k)
}

/// True iff `g` is the five-wheel: a 5-cycle plus a vertex adjacent to all
/// of it.
pub fn is_five_wheel(g: &Graph) -> bool {
    if g.vertex_count() != 6 || g.edge_count() != 10 {
        return false;
    }
    let hubs: Vec<usize> = (0..6).filter(|&v| g.degree(v) == 5).collect();
    let [hub] = hubs[..] else {
        return false;
    };
    let mut rim = g.vertices();
    rim.remove(hub);
    let (c, _) = g.induced_subgraph(&rim);
    (0..5).all(|v| c.degree(v) == 2) && c.is_connected()
}

/// The five conditions characterizing `k` disjoint seagulls, each with a
/// witness when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeagullConditionReport {
    pub k: usize,
    /// (i) `|V| ≥ 3k`.
    pub cond_size: bool,
    /// (ii) k-connected.
    pub cond_connectivity: bool,
    pub separating_set: Option<VertexSet>,
    /// (iii) `cap(C) ≥ k` for every clique `C`.
    pub cond_capacity: bool,
    pub low_capacity_clique: Option<VertexSet>,
    /// (iv) the complement has a matching of size `k`.
    pub cond_matching: bool,
    pub complement_matching: usize,
    /// (v) `k = 2` implies not a five-wheel.
    pub cond_five_wheel: bool,
}

impl SeagullConditionReport {
    pub fn all_hold(&self) -> bool {
        self.cond_size
            && self.cond_connectivity
            && self.cond_capacity
            && self.cond_matching
            && self.cond_five_wheel
    }
}

pub fn seagull_conditions(g: &Graph, k: usize) -> Result<SeagullConditionReport> {
    if !is_alpha_le_2(g) {
        return Err(Error::AlphaTooLarge);
    }
    let connectivity = check_k_connected(g, k);
    let low = low_capacity_clique(g, k);
    let complement_matching = complement_matching_size(g);
    Ok(SeagullConditionReport {
        k,
        cond_size: g.vertex_count() >= 3 * k,
        cond_connectivity: connectivity.connected,
        separating_set: connectivity.cut,
        cond_capacity: low.is_none(),
        low_capacity_clique: low,
        cond_matching: complement_matching >= k,
        complement_matching,
        cond_five_wheel: k != 2 || !is_five_wheel(g),
    })
}
