//! Vertex connectivity by augmenting internally disjoint paths, using
//! Even's reduction to pairs involving the first few vertices.

use std::collections::VecDeque;

use crate::bitset::VertexSet;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Node {
    In(usize),
    Out(usize),
}

/// A set of internally disjoint `s`–`t` paths. Every inner vertex carries at
/// most one path, so the flow is stored as predecessor and successor links.
/// Residual searches run on the split graph (`in(v) → out(v)` per vertex)
/// and expand whole neighbourhoods through the adjacency bitsets.
struct DisjointPaths<'a> {
    g: &'a Graph,
    s: usize,
    t: usize,
    pred: Vec<Option<usize>>,
    succ: Vec<Option<usize>>,
    reach_in: VertexSet,
    reach_out: VertexSet,
}

impl<'a> DisjointPaths<'a> {
    fn new(g: &'a Graph, s: usize, t: usize) -> Self {
        let n = g.vertex_count();
        DisjointPaths {
            g,
            s,
            t,
            pred: vec![None; n],
            succ: vec![None; n],
            reach_in: VertexSet::new(n),
            reach_out: VertexSet::new(n),
        }
    }

    fn inner(&self, v: usize) -> bool {
        v != self.s && v != self.t
    }

    fn add(&mut self, u: usize, w: usize) {
        if self.inner(w) {
            self.pred[w] = Some(u);
        }
        if self.inner(u) {
            self.succ[u] = Some(w);
        }
    }

    fn cancel(&mut self, u: usize, w: usize) {
        if self.inner(w) && self.pred[w] == Some(u) {
            self.pred[w] = None;
        }
        if self.inner(u) && self.succ[u] == Some(w) {
            self.succ[u] = None;
        }
    }

    /// One residual search; augments and returns true if `in(t)` is reached.
    fn augment(&mut self) -> bool {
        let n = self.g.vertex_count();
        let mut parent_in: Vec<Option<Node>> = vec![None; n];
        let mut parent_out: Vec<Option<Node>> = vec![None; n];
        self.reach_in.clear();
        self.reach_out.clear();
        self.reach_in.insert(self.s);
        self.reach_out.insert(self.s);
        let mut queue = VecDeque::from([Node::Out(self.s)]);
        let mut found = false;
        'search: while let Some(node) = queue.pop_front() {
            match node {
                Node::Out(u) => {
                    let fresh = self.g.neighbors(u).difference(&self.reach_in);
                    for w in fresh.iter() {
                        self.reach_in.insert(w);
                        parent_in[w] = Some(node);
                        if w == self.t {
                            found = true;
                            break 'search;
                        }
                        queue.push_back(Node::In(w));
                    }
                    if self.inner(u) && self.pred[u].is_some() && !self.reach_in.contains(u) {
                        self.reach_in.insert(u);
                        parent_in[u] = Some(node);
                        queue.push_back(Node::In(u));
                    }
                }
                Node::In(w) => {
                    let next = match self.pred[w] {
                        None => w,
                        Some(p) => p,
                    };
                    if !self.reach_out.contains(next) {
                        self.reach_out.insert(next);
                        parent_out[next] = Some(node);
                        queue.push_back(Node::Out(next));
                    }
                }
            }
        }
        if !found {
            return false;
        }
        let mut node = Node::In(self.t);
        loop {
            let prev = match node {
                Node::In(v) => parent_in[v],
                Node::Out(v) => parent_out[v],
            };
            let Some(prev) = prev else { break };
            match (prev, node) {
                (Node::Out(u), Node::In(w)) if u != w => self.add(u, w),
                (Node::In(w), Node::Out(p)) if p != w => self.cancel(p, w),
                _ => {}
            }
            node = prev;
        }
        true
    }

    /// Routes up to `limit` paths and returns how many exist, capped.
    fn max_paths(&mut self, limit: usize) -> usize {
        let mut value = 0;
        // Common neighbours give paths of length two directly.
        let common = self.g.neighbors(self.s).intersection(self.g.neighbors(self.t));
        for w in common.iter() {
            if value == limit {
                return value;
            }
            self.add(self.s, w);
            self.add(w, self.t);
            value += 1;
        }
        while value < limit && self.augment() {
            value += 1;
        }
        value
    }

    /// After a failed search: vertices whose `in` side is reachable but
    /// whose `out` side is not. They form a minimum separator.
    fn min_cut(&self) -> VertexSet {
        let mut cut = self.reach_in.difference(&self.reach_out);
        cut.remove(self.s);
        cut
    }
}

/// Number of internally disjoint paths between non-adjacent `s` and `t`,
/// capped at `cap`.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, cap: usize) -> usize {
    assert!(s != t && !g.has_edge(s, t), "endpoints must be distinct and non-adjacent");
    // Common neighbours already give disjoint paths of length two.
    if g.neighbors(s).intersection_len(g.neighbors(t)) >= cap {
        return cap;
    }
    DisjointPaths::new(g, s, t).max_paths(cap)
}

/// Outcome of a k-connectivity test; `cut` is a separating set of fewer
/// than `k` vertices when one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityCheck {
    pub connected: bool,
    pub cut: Option<VertexSet>,
}

/// `g` is k-connected: more than `k` vertices and no separating set of
/// fewer than `k` vertices.
pub fn check_k_connected(g: &Graph, k: usize) -> ConnectivityCheck {
    let n = g.vertex_count();
    if n <= k {
        return ConnectivityCheck {
            connected: false,
            cut: None,
        };
    }
    // A separator of size < k misses one of the first k vertices.
    for i in 0..k.min(n) {
        for j in g.non_neighbors(i).iter().filter(|&j| j > i) {
            if g.neighbors(i).intersection_len(g.neighbors(j)) >= k {
                continue;
            }
            let mut paths = DisjointPaths::new(g, i, j);
            if paths.max_paths(k) < k {
                return ConnectivityCheck {
                    connected: false,
                    cut: Some(paths.min_cut()),
                };
            }
        }
    }
    ConnectivityCheck {
        connected: true,
        cut: None,
    }
}

pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    check_k_connected(g, k).connected
}

/// Vertex connectivity; `n - 1` for complete graphs, 0 for the empty graph.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    // Connectivity never exceeds the minimum degree.
    let mut best = (0..n).map(|v| g.degree(v)).min().unwrap_or(0);
    let mut i = 0;
    while i <= best && i < n {
        for j in g.non_neighbors(i).iter().filter(|&j| j > i) {
            if g.neighbors(i).intersection_len(g.neighbors(j)) >= best {
                continue;
            }
            best = best.min(DisjointPaths::new(g, i, j).max_paths(best));
        }
        i += 1;
    }
    best
}
