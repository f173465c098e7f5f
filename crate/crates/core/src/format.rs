//! Plain-text graph files.
//!
//! ```text
//! c optional comment lines
//! p <n> <m>
//! e <u> <v>      (m lines, 1-based, u < v, no duplicates)
//! ```
//!
//! Writers emit edges in lexicographic order, so equal graphs serialize to
//! identical bytes.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{BranchDecomposition, Graph, GraphBuilder};

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn field(tokens: &[&str], idx: usize, line: usize) -> Result<usize> {
    let tok = tokens
        .get(idx)
        .ok_or_else(|| parse_err(line, "missing field"))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("`{tok}` is not a nonnegative integer")))
}

pub fn read_graph(text: &str) -> Result<Graph> {
    let mut builder: Option<(GraphBuilder, usize)> = None;
    let mut seen_edges = 0usize;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.first().copied() {
            None => continue,
            Some(t) if t.starts_with('c') => continue,
            Some("p") => {
                if builder.is_some() {
                    return Err(parse_err(line, "duplicate problem line"));
                }
                if tokens.len() != 3 {
                    return Err(parse_err(line, "expected `p <n> <m>`"));
                }
                let n = field(&tokens, 1, line)?;
                let m = field(&tokens, 2, line)?;
                builder = Some((GraphBuilder::new(n), m));
            }
            Some("e") => {
                let (b, _) = builder
                    .as_mut()
                    .ok_or_else(|| parse_err(line, "edge before problem line"))?;
                if tokens.len() != 3 {
                    return Err(parse_err(line, "expected `e <u> <v>`"));
                }
                let u = field(&tokens, 1, line)?;
                let v = field(&tokens, 2, line)?;
                let n = b.vertex_count();
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(parse_err(line, format!("endpoint out of range 1..={n}")));
                }
                if u >= v {
                    return Err(parse_err(line, "endpoints must satisfy u < v"));
                }
                if !b.add_edge(u - 1, v - 1).map_err(|e| parse_err(line, e.to_string()))? {
                    return Err(parse_err(line, format!("duplicate edge {u} {v}")));
                }
                seen_edges += 1;
            }
            Some(other) => {
                return Err(parse_err(line, format!("unknown line type `{other}`")));
            }
        }
    }
    let (b, m) = builder.ok_or_else(|| parse_err(0, "missing problem line"))?;
    if seen_edges != m {
        return Err(parse_err(
            0,
            format!("problem line declares {m} edges, found {seen_edges}"),
        ));
    }
    Ok(b.build())
}

/// Branch map lines `part <id>: v1 v2 ...`, all 1-based.
pub fn write_branch_map(d: &BranchDecomposition) -> String {
    let mut out = String::new();
    for (i, part) in d.parts().iter().enumerate() {
        write!(out, "part {}:", i + 1).unwrap();
        for v in part.iter() {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    out
}
