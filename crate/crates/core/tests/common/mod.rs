//! Reference implementations used to check library results. They favour
//! obviousness over speed and share no code with the library algorithms.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use minorforge::graph::Graph;

fn adjacent(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbors(u).contains(v)
}

/// Maximum number of pairwise disjoint induced three-vertex paths, by
/// memoized recursion on the lowest vertex of the remaining set: either it
/// is left uncovered or it joins a seagull with two higher vertices.
pub fn max_disjoint_seagulls(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20);
    fn go(g: &Graph, n: usize, left: u32, memo: &mut HashMap<u32, usize>) -> usize {
        if left.count_ones() < 3 {
            return 0;
        }
        if let Some(&r) = memo.get(&left) {
            return r;
        }
        let v = left.trailing_zeros() as usize;
        let rest = left & !(1 << v);
        let mut best = go(g, n, rest, memo);
        let others: Vec<usize> = (0..n).filter(|&u| rest >> u & 1 == 1).collect();
        for (i, &x) in others.iter().enumerate() {
            for &y in &others[i + 1..] {
                let edges = [adjacent(g, v, x), adjacent(g, v, y), adjacent(g, x, y)]
                    .iter()
                    .filter(|&&e| e)
                    .count();
                if edges == 2 {
                    let r = 1 + go(g, n, rest & !(1 << x) & !(1 << y), memo);
                    best = best.max(r);
                }
            }
        }
        memo.insert(left, best);
        best
    }
    go(g, n, if n == 0 { 0 } else { (1u32 << n) - 1 }, &mut HashMap::new())
}

/// No three pairwise non-adjacent vertices.
pub fn alpha_at_most_two(g: &Graph) -> bool {
    let n = g.vertex_count();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if !adjacent(g, a, b) && !adjacent(g, a, c) && !adjacent(g, b, c) {
                    return false;
                }
            }
        }
    }
    true
}

fn connected_part(g: &Graph, part: &[usize]) -> bool {
    let Some(&start) = part.first() else {
        return false;
    };
    let mut seen = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in part {
            if !seen.contains(&y) && adjacent(g, x, y) {
                seen.push(y);
                queue.push_back(y);
            }
        }
    }
    seen.len() == part.len()
}

/// `h` is exactly the contraction of `g` along `parts`: parts are nonempty,
/// disjoint and connected, and `h` has an edge between two parts iff `g`
/// has an edge between them.
pub fn is_contraction(g: &Graph, h: &Graph, parts: &[Vec<usize>]) -> bool {
    if h.vertex_count() != parts.len() {
        return false;
    }
    let mut owner = vec![None; g.vertex_count()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            if owner[v].is_some() {
                return false;
            }
            owner[v] = Some(i);
        }
        if !connected_part(g, p) {
            return false;
        }
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let joined = parts[i]
                .iter()
                .any(|&u| parts[j].iter().any(|&v| adjacent(g, u, v)));
            if joined != adjacent(h, i, j) {
                return false;
            }
        }
    }
    true
}

/// Non-adjacent pairs of the contracted graph, split into singleton-pair
/// pairs, pair-pair pairs, and anything else.
pub fn classify_missing(h: &Graph, parts: &[Vec<usize>]) -> (usize, usize, usize) {
    let (mut triples, mut quads, mut other) = (0, 0, 0);
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if adjacent(h, i, j) {
                continue;
            }
            match (parts[i].len(), parts[j].len()) {
                (1, 2) | (2, 1) => triples += 1,
                (2, 2) => quads += 1,
                _ => other += 1,
            }
        }
    }
    (triples, quads, other)
}

/// `a` = non-edges between `z` and the rest, `b` = non-edges outside `z`.
pub fn clique_statistics(g: &Graph, z: &[usize]) -> (usize, usize) {
    let n = g.vertex_count();
    let in_z = |v: usize| z.contains(&v);
    let (mut a, mut b) = (0, 0);
    for u in 0..n {
        for v in u + 1..n {
            if adjacent(g, u, v) {
                continue;
            }
            match (in_z(u), in_z(v)) {
                (true, true) => panic!("z is not a clique"),
                (false, false) => b += 1,
                _ => a += 1,
            }
        }
    }
    (a, b)
}
