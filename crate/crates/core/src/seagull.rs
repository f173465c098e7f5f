//! Seagulls (induced three-vertex paths) and exact packing search.

use std::fmt;

use crate::alpha2::is_alpha_le_2;
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Induced path `a − mid − b`: edges `a·mid`, `mid·b`, non-edge `a·b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Seagull {
    pub a: usize,
    pub mid: usize,
    pub b: usize,
}

impl Seagull {
    pub fn vertices(&self) -> [usize; 3] {
        [self.a, self.mid, self.b]
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let [a, m, b] = self.vertices();
        a != m && m != b && a != b && g.has_edge(a, m) && g.has_edge(m, b) && !g.has_edge(a, b)
    }

    /// Relabels through `map` (new label -> old label).
    pub fn mapped(&self, map: &[usize]) -> Seagull {
        Seagull {
            a: map[self.a],
            mid: map[self.mid],
            b: map[self.b],
        }
    }
}

impl fmt::Display for Seagull {
    /// `s <a> <mid> <b>`, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s {} {} {}", self.a + 1, self.mid + 1, self.b + 1)
    }
}

/// The triple induces a seagull under some ordering, i.e. it spans exactly
/// two edges.
pub fn is_seagull(g: &Graph, t: [usize; 3]) -> bool {
    as_seagull(g, t).is_some()
}

/// The ordering of `t` that is a seagull, if any.
pub fn as_seagull(g: &Graph, [x, y, z]: [usize; 3]) -> Option<Seagull> {
    if x == y || y == z || x == z {
        return None;
    }
    let (xy, yz, xz) = (g.has_edge(x, y), g.has_edge(y, z), g.has_edge(x, z));
    match (xy, yz, xz) {
        (true, true, false) => Some(Seagull { a: x, mid: y, b: z }),
        (true, false, true) => Some(Seagull { a: y, mid: x, b: z }),
        (false, true, true) => Some(Seagull { a: x, mid: z, b: y }),
        _ => None,
    }
}

/// Pairwise disjoint seagulls.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeagullPartition {
    pub triples: Vec<Seagull>,
}

impl SeagullPartition {
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn covered(&self, capacity: usize) -> VertexSet {
        VertexSet::from_iter(capacity, self.triples.iter().flat_map(|s| s.vertices()))
    }

    /// Every triple is a seagull of `g` and the triples are disjoint.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        self.triples.iter().all(|s| s.is_valid_in(g))
            && self.covered(g.vertex_count()).len() == 3 * self.triples.len()
    }

    /// Report lines `s <a> <mid> <b>`.
    pub fn to_lines(&self) -> String {
        self.triples.iter().map(|s| format!("{s}\n")).collect()
    }
}

pub const DEFAULT_PARTITION_BUDGET: u64 = 5_000_000;

struct PartitionSearch<'a> {
    g: &'a Graph,
    non: Vec<VertexSet>,
    /// Non-neighbourhoods are cliques, enabling the clique pruning.
    alpha_le_2: bool,
    chosen: Vec<Seagull>,
    nodes: u64,
    budget: u64,
}

impl PartitionSearch<'_> {
    /// Number of seagulls inside `free` that contain `v`.
    fn options(&self, v: usize, free: &VertexSet) -> usize {
        let nbrs = self.g.neighbors(v).intersection(free);
        let as_mid: usize = nbrs
            .iter()
            .map(|a| self.non[a].intersection_len(&nbrs))
            .sum::<usize>()
            / 2;
        let as_end: usize = self.non[v]
            .iter()
            .filter(|&b| free.contains(b))
            .map(|b| self.g.neighbors(b).intersection_len(&nbrs))
            .sum();
        as_mid + as_end
    }

    /// Seagulls inside `free` through `v`, in a fixed order: `v` as the
    /// middle first, then as an endpoint.
    fn candidates(&self, v: usize, free: &VertexSet) -> Vec<Seagull> {
        let mut out = Vec::new();
        let nbrs = self.g.neighbors(v).intersection(free);
        for a in nbrs.iter() {
            for b in self.non[a].intersection(&nbrs).iter().filter(|&b| b > a) {
                out.push(Seagull { a, mid: v, b });
            }
        }
        let far = self.non[v].intersection(free);
        for mid in nbrs.iter() {
            for b in far.intersection(self.g.neighbors(mid)).iter() {
                out.push(Seagull { a: v, mid, b });
            }
        }
        out
    }

    /// A seagull holds at most two vertices of any clique, so a residual
    /// clique larger than twice the seagulls still needed is fatal.
    fn hopeless(&self, free: &VertexSet, remaining: usize) -> bool {
        self.alpha_le_2
            && free
                .iter()
                .any(|u| self.non[u].intersection_len(free) > 2 * remaining)
    }

    /// The free vertex lying in the fewest seagulls, lowest index on ties;
    /// `None` when some vertex lies in none.
    fn most_constrained(&self, free: &VertexSet) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for v in free.iter() {
            let c = self.options(v, free);
            if c == 0 {
                return None;
            }
            if best.is_none_or(|(bc, _)| c < bc) {
                best = Some((c, v));
                if c == 1 {
                    break;
                }
            }
        }
        best.map(|(_, v)| v)
    }

    fn search(&mut self, free: VertexSet) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted(self.budget));
        }
        if free.is_empty() {
            return Ok(true);
        }
        let remaining = free.len() / 3;
        if self.hopeless(&free, remaining) {
            return Ok(false);
        }
        let Some(v) = self.most_constrained(&free) else {
            return Ok(false);
        };
        for s in self.candidates(v, &free) {
            let mut next = free.clone();
            for x in s.vertices() {
                next.remove(x);
            }
            self.chosen.push(s);
            if self.search(next)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

/// Partitions `V(g)` into `|V|/3` seagulls by exhaustive backtracking.
/// `Ok(None)` is a definitive "no such partition".
pub fn seagull_partition(g: &Graph) -> Result<Option<SeagullPartition>> {
    seagull_partition_with_budget(g, DEFAULT_PARTITION_BUDGET)
}

pub fn seagull_partition_with_budget(g: &Graph, budget: u64) -> Result<Option<SeagullPartition>> {
    let n = g.vertex_count();
    if !n.is_multiple_of(3) {
        return Err(Error::WrongOrder(n));
    }
    let mut search = PartitionSearch {
        g,
        non: (0..n).map(|v| g.non_neighbors(v)).collect(),
        alpha_le_2: is_alpha_le_2(g),
        chosen: Vec::with_capacity(n / 3),
        nodes: 0,
        budget,
    };
    Ok(search
        .search(g.vertices())?
        .then_some(SeagullPartition {
            triples: search.chosen,
        }))
}

pub const BRUTE_FORCE_LIMIT: usize = 15;

/// Maximum number of pairwise disjoint seagulls, by exhaustive search over
/// vertex subsets.
pub fn max_disjoint_seagulls_bruteforce(g: &Graph) -> Result<usize> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            vertex_count: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut masks = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                if is_seagull(g, [x, y, z]) {
                    masks.push((1u32 << x) | (1 << y) | (1 << z));
                }
            }
        }
    }
    // best[mask]: most disjoint seagulls inside `mask`.
    let mut best = vec![0u8; 1 << n];
    for mask in 1u32..1 << n {
        let low = mask.trailing_zeros();
        let without = mask & !(1 << low);
        let mut value = best[without as usize];
        for &s in &masks {
            if s >> low & 1 == 1 && s & mask == s {
                value = value.max(1 + best[(mask & !s) as usize]);
            }
        }
        best[mask as usize] = value;
    }
    Ok(best[(1usize << n) - 1] as usize)
}
