//! Immutable simple graphs over dense vertex indices, plus the minor
//! machinery: contraction by branch sets and witness verification.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// A simple undirected graph. Adjacency rows are bitsets; the structure is
/// never mutated after construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    adj: Vec<VertexSet>,
    edge_count: usize,
}

/// Mutable staging area for building a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    adj: Vec<VertexSet>,
    edge_count: usize,
}

impl GraphBuilder {
    pub fn new(vertex_count: usize) -> Self {
        GraphBuilder {
            adj: vec![VertexSet::new(vertex_count); vertex_count],
            edge_count: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Adds edge `uv`. Returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.adj.len();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    vertex_count: n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.adj[u].contains(v) {
            return Ok(false);
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.edge_count += 1;
        Ok(true)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn build(self) -> Graph {
        Graph {
            adj: self.adj,
            edge_count: self.edge_count,
        }
    }
}

impl Graph {
    pub fn empty(vertex_count: usize) -> Self {
        GraphBuilder::new(vertex_count).build()
    }

    pub fn complete(vertex_count: usize) -> Self {
        Graph::empty(vertex_count).complement()
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = GraphBuilder::new(vertex_count);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Number of non-neighbours of `v`, i.e. its degree in the complement.
    #[inline]
    pub fn non_degree(&self, v: usize) -> usize {
        self.vertex_count() - 1 - self.degree(v)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Non-neighbours of `v`, excluding `v` itself.
    pub fn non_neighbors(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v].complement();
        s.remove(v);
        s
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let adj: Vec<VertexSet> = (0..n).map(|v| self.non_neighbors(v)).collect();
        let total = n * n.saturating_sub(1) / 2;
        Graph {
            adj,
            edge_count: total - self.edge_count,
        }
    }

    /// The subgraph induced by `s`, relabelled to `0..|s|` in increasing
    /// order. The returned map sends new labels to old ones.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let map = s.to_vec();
        let mut b = GraphBuilder::new(map.len());
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.add_edge(i, j).expect("indices in range");
                }
            }
        }
        (b.build(), map)
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| {
            let mut rest = s.clone();
            rest.remove(v);
            rest.is_subset(&self.adj[v])
        })
    }

    /// Whether `s` induces a connected subgraph. The empty set is not
    /// considered connected.
    pub fn is_connected_within(&self, s: &VertexSet) -> bool {
        let Some(start) = s.first() else {
            return false;
        };
        let mut seen = VertexSet::new(self.vertex_count());
        seen.insert(start);
        let mut frontier = seen.clone();
        while !frontier.is_empty() {
            let mut next = VertexSet::new(self.vertex_count());
            for v in frontier.iter() {
                next.union_with(&self.adj[v]);
            }
            next.intersect_with(s);
            next.difference_with(&seen);
            seen.union_with(&next);
            frontier = next;
        }
        seen.len() == s.len()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.is_connected_within(&self.vertices())
    }
}

/// Pairwise-disjoint connected vertex sets of a host graph, one per vertex
/// of the minor they witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchDecomposition {
    parts: Vec<VertexSet>,
}

/// Why a claimed minor witness was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorCheck {
    Valid,
    PartCountMismatch { parts: usize, minor_vertices: usize },
    CapacityMismatch { part: usize },
    EmptyPart { part: usize },
    Overlap { first: usize, second: usize },
    Disconnected { part: usize },
    MissingCrossEdge { u: usize, v: usize },
}

impl MinorCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, MinorCheck::Valid)
    }
}

impl BranchDecomposition {
    pub fn new(parts: Vec<VertexSet>) -> Self {
        BranchDecomposition { parts }
    }

    /// Builds parts from vertex lists over a host with `capacity` vertices.
    pub fn from_lists(capacity: usize, parts: &[Vec<usize>]) -> Self {
        BranchDecomposition {
            parts: parts
                .iter()
                .map(|p| VertexSet::from_iter(capacity, p.iter().copied()))
                .collect(),
        }
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part index of every host vertex, `None` for deleted vertices.
    pub fn owner_map(&self, host_vertices: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; host_vertices];
        for (i, p) in self.parts.iter().enumerate() {
            for v in p.iter() {
                owner[v] = Some(i);
            }
        }
        owner
    }

    /// Structural validity against a host: nonempty, disjoint, connected.
    pub fn check(&self, g: &Graph) -> MinorCheck {
        let mut used = VertexSet::new(g.vertex_count());
        for (i, p) in self.parts.iter().enumerate() {
            if p.capacity() != g.vertex_count() {
                return MinorCheck::CapacityMismatch { part: i };
            }
            if p.is_empty() {
                return MinorCheck::EmptyPart { part: i };
            }
            if used.intersects(p) {
                let first = self.parts[..i]
                    .iter()
                    .position(|q| q.intersects(p))
                    .expect("overlap has an earlier owner");
                return MinorCheck::Overlap { first, second: i };
            }
            used.union_with(p);
            if !g.is_connected_within(p) {
                return MinorCheck::Disconnected { part: i };
            }
        }
        MinorCheck::Valid
    }
}

/// Contracts every part of `d` to a single vertex; vertices outside all
/// parts are deleted.
pub fn contract(g: &Graph, d: &BranchDecomposition) -> Result<Graph> {
    match d.check(g) {
        MinorCheck::Valid => {}
        bad => return Err(Error::InvalidDecomposition(format!("{bad:?}"))),
    }
    let k = d.len();
    let mut b = GraphBuilder::new(k);
    // Neighbourhood of each part, then intersect with the other parts.
    let reach: Vec<VertexSet> = d
        .parts()
        .iter()
        .map(|p| {
            let mut r = VertexSet::new(g.vertex_count());
            for v in p.iter() {
                r.union_with(g.neighbors(v));
            }
            r
        })
        .collect();
    for (i, ri) in reach.iter().enumerate() {
        for j in i + 1..k {
            if ri.intersects(&d.parts()[j]) {
                b.add_edge(i, j)?;
            }
        }
    }
    Ok(b.build())
}

/// Independent witness check: `h` is a minor of `g` via the branch sets `d`.
/// Part `i` of `d` must correspond to vertex `i` of `h`.
pub fn verify_minor(g: &Graph, h: &Graph, d: &BranchDecomposition) -> MinorCheck {
    if d.len() != h.vertex_count() {
        return MinorCheck::PartCountMismatch {
            parts: d.len(),
            minor_vertices: h.vertex_count(),
        };
    }
    let structural = d.check(g);
    if !structural.is_valid() {
        return structural;
    }
    for (u, v) in h.edges() {
        let joined = d.parts()[u]
            .iter()
            .any(|x| g.neighbors(x).intersects(&d.parts()[v]));
        if !joined {
            return MinorCheck::MissingCrossEdge { u, v };
        }
    }
    MinorCheck::Valid
}
