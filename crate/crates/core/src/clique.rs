//! Exact maximum clique search: bitset branch and bound with greedy
//! colouring bounds.

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// Colour-bounded clique search over a relabelled copy of the graph in
/// which vertex order follows non-increasing degree.
struct Searcher {
    adj: Vec<VertexSet>,
    /// new label -> original label
    order: Vec<usize>,
    best: Vec<usize>,
    current: Vec<usize>,
    /// Stop as soon as a clique of this size is found.
    target: Option<usize>,
    nodes: u64,
    budget: Option<u64>,
    exhausted: bool,
}

impl Searcher {
    fn new(g: &Graph, within: &VertexSet) -> Self {
        let mut order: Vec<usize> = within.iter().collect();
        // Highest degree first: colouring sweeps then place dense vertices
        // in early colour classes.
        order.sort_by_key(|&v| (std::cmp::Reverse(g.neighbors(v).intersection_len(within)), v));
        let m = order.len();
        let mut rank = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        let adj = order
            .iter()
            .map(|&v| {
                VertexSet::from_iter(
                    m,
                    g.neighbors(v)
                        .iter()
                        .filter(|&w| rank[w] != usize::MAX)
                        .map(|w| rank[w]),
                )
            })
            .collect();
        Searcher {
            adj,
            order,
            best: Vec::new(),
            current: Vec::new(),
            target: None,
            nodes: 0,
            budget: None,
            exhausted: false,
        }
    }

    /// Seeds the incumbent with a known clique given in original labels.
    fn with_incumbent(mut self, clique: &[usize]) -> Self {
        let rank: std::collections::HashMap<usize, usize> =
            self.order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        self.best = clique.iter().map(|v| rank[v]).collect();
        self
    }

    fn done(&self) -> bool {
        self.exhausted || self.target.is_some_and(|t| self.best.len() >= t)
    }

    /// Greedy sequential colouring of `p`. Returns vertices whose colour is at
    /// least `min_color`, paired with their colour, in non-decreasing colour
    /// order.
    fn color(&self, p: &VertexSet, min_color: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(p.len());
        let mut uncolored = p.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.difference_with(&self.adj[v]);
                uncolored.remove(v);
                if color >= min_color {
                    out.push((v, color));
                }
            }
        }
        out
    }

    fn need(&self) -> usize {
        self.target.unwrap_or(self.best.len() + 1)
    }

    fn expand(&mut self, mut p: VertexSet) {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.exhausted = true;
            return;
        }
        let min_color = self.need().saturating_sub(self.current.len());
        let colored = self.color(&p, min_color);
        for &(v, c) in colored.iter().rev() {
            if self.done() || self.current.len() + c < self.need() {
                return;
            }
            self.current.push(v);
            let next = p.intersection(&self.adj[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            p.remove(v);
        }
    }

    fn run(mut self, target: Option<usize>) -> SearchOutcome {
        self.target = target;
        let m = self.order.len();
        if m > 0 {
            self.expand(VertexSet::full(m));
        }
        let mut clique: Vec<usize> = self.best.iter().map(|&i| self.order[i]).collect();
        clique.sort_unstable();
        SearchOutcome {
            clique,
            nodes: self.nodes,
            complete: !self.exhausted,
        }
    }
}

struct SearchOutcome {
    clique: Vec<usize>,
    nodes: u64,
    complete: bool,
}

/// Result of a possibly budget-limited maximum clique search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSearch {
    pub clique: VertexSet,
    /// The search finished: `clique` is a maximum clique, and the
    /// lexicographically least one.
    pub exact: bool,
    pub nodes: u64,
}

/// A maximum clique of `g[within]`, unbounded search.
pub fn max_clique_within(g: &Graph, within: &VertexSet) -> Vec<usize> {
    Searcher::new(g, within).run(None).clique
}

/// Whether `g[within]` has a clique of at least `size` vertices.
pub fn has_clique_of_size(g: &Graph, within: &VertexSet, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    within.len() >= size && Searcher::new(g, within).run(Some(size)).clique.len() >= size
}

pub fn clique_number(g: &Graph) -> usize {
    max_clique_within(g, &g.vertices()).len()
}

fn extend_greedily(g: &Graph, mut clique: VertexSet) -> VertexSet {
    let mut cand = g.vertices();
    for v in clique.iter() {
        cand.intersect_with(g.neighbors(v));
    }
    while let Some(v) = cand
        .iter()
        .max_by_key(|&v| (g.neighbors(v).intersection_len(&cand), std::cmp::Reverse(v)))
    {
        clique.insert(v);
        cand.intersect_with(g.neighbors(v));
    }
    clique
}

/// A quick large clique. Every non-neighbourhood that is a clique (all of
/// them when the independence number is at most two) and every single
/// vertex is extended greedily to a maximal clique; the largest result wins,
/// ties to the lexicographically least.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut best: Option<VertexSet> = None;
    for v in 0..n {
        let non = g.non_neighbors(v);
        let seeds = [VertexSet::from_iter(n, [v]), non];
        for seed in seeds {
            if seed.is_empty() || !g.is_clique(&seed) {
                continue;
            }
            let c = extend_greedily(g, seed);
            let better = match &best {
                None => true,
                Some(b) => c.len() > b.len() || (c.len() == b.len() && c.lex_cmp(b).is_lt()),
            };
            if better {
                best = Some(c);
            }
        }
    }
    best.map(|b| b.to_vec()).unwrap_or_default()
}

/// Maximum clique search with an optional node budget shared by both
/// phases (finding the clique number, then the lexicographically least
/// witness). On exhaustion the best clique found is returned with
/// `exact = false`; it is never smaller than [`greedy_clique`].
pub fn find_max_clique(g: &Graph, budget: Option<u64>) -> CliqueSearch {
    let n = g.vertex_count();
    let incumbent = greedy_clique(g);
    let mut s = Searcher::new(g, &g.vertices()).with_incumbent(&incumbent);
    s.budget = budget;
    let first = s.run(None);
    let mut nodes = first.nodes;
    let fallback = CliqueSearch {
        clique: VertexSet::from_iter(n, first.clique.iter().copied()),
        exact: false,
        nodes,
    };
    if !first.complete {
        return fallback;
    }
    let omega = first.clique.len();
    let mut chosen = VertexSet::new(n);
    let mut candidates = g.vertices();
    for step in 0..omega {
        let need = omega - step - 1;
        let mut pick = None;
        for v in candidates.iter() {
            let mut rest = candidates.intersection(g.neighbors(v));
            // Only later vertices, so the first hit is lexicographically least.
            for w in rest.clone().iter().take_while(|&w| w < v) {
                rest.remove(w);
            }
            if need == 0 {
                pick = Some(v);
                break;
            }
            if rest.len() < need {
                continue;
            }
            let mut searcher = Searcher::new(g, &rest);
            searcher.budget = budget.map(|b| b.saturating_sub(nodes));
            let out = searcher.run(Some(need));
            nodes += out.nodes;
            if out.clique.len() >= need {
                pick = Some(v);
                break;
            }
            if !out.complete {
                return CliqueSearch { nodes, ..fallback };
            }
        }
        let pick = pick.expect("an omega-clique extends the current prefix");
        chosen.insert(pick);
        candidates.intersect_with(g.neighbors(pick));
        for w in candidates.clone().iter().take_while(|&w| w < pick) {
            candidates.remove(w);
        }
    }
    CliqueSearch {
        clique: chosen,
        exact: true,
        nodes,
    }
}

/// The lexicographically least maximum clique of `g` (unbounded search).
pub fn max_clique(g: &Graph) -> VertexSet {
    find_max_clique(g, None).clique
}

/// Calls `visit` on every clique of `g` (including the empty clique) in
/// lexicographic order of sorted vertex sequences.
pub fn for_each_clique<F: FnMut(&[usize])>(g: &Graph, mut visit: F) {
    fn rec<F: FnMut(&[usize])>(g: &Graph, cand: VertexSet, cur: &mut Vec<usize>, visit: &mut F) {
        visit(cur);
        for v in cand.iter() {
            let mut next = cand.intersection(g.neighbors(v));
            for w in next.clone().iter().take_while(|&w| w <= v) {
                next.remove(w);
            }
            cur.push(v);
            rec(g, next, cur, visit);
            cur.pop();
        }
    }
    rec(g, g.vertices(), &mut Vec::new(), &mut visit);
}
