//! Line-oriented text format shared by graphs, instances and kernels.
//!
//! ```text
//! # comment
//! n m
//! u v            (exactly m edge lines)
//! L v text       vertex label
//! X v1 v2 ...    vertex cover of an instance
//! A v h1 h2 ...  list of allowed target vertices for v
//! S v s1 s2 ...  provenance of kernel vertex v
//! STATS {json}   kernel statistics
//! ```

use super::{Graph, GraphBuilder, VertexSet};
use crate::{Error, Result};
use std::fmt::Write as _;

/// A graph plus the optional annotations the format can carry.
#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub graph: Graph,
    pub cover: Option<VertexSet>,
    pub lists: Vec<(usize, VertexSet)>,
    pub provenance: Vec<(usize, VertexSet)>,
    pub stats: Option<serde_json::Value>,
}

impl Document {
    pub fn plain(graph: Graph) -> Self {
        Document {
            graph,
            cover: None,
            lists: Vec::new(),
            provenance: Vec::new(),
            stats: None,
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_ids<'a>(line: usize, parts: impl Iterator<Item = &'a str>) -> Result<Vec<usize>> {
    parts
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| perr(line, format!("expected a vertex id, found `{t}`")))
        })
        .collect()
}

fn check_id(line: usize, v: usize, n: usize) -> Result<()> {
    if v >= n {
        return Err(perr(line, format!("vertex {v} outside 0..{n}")));
    }
    Ok(())
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut header: Option<(usize, usize)> = None;
    let mut builder = GraphBuilder::default();
    let mut seen_edges = 0usize;
    let mut cover = None;
    let mut lists = Vec::new();
    let mut provenance = Vec::new();
    let mut stats = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        last_line = ln;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((n, m)) = header else {
            let ids = parse_ids(ln, line.split_whitespace())?;
            let [n, m] = ids[..] else {
                return Err(perr(ln, "header must be `n m`"));
            };
            header = Some((n, m));
            builder = GraphBuilder::new(n);
            continue;
        };
        let mut parts = line.split_whitespace();
        let tag = parts.next().unwrap_or_default();
        match tag {
            "L" => {
                let rest = line[1..].trim_start();
                let (v, text) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let v = parse_ids(ln, std::iter::once(v))?[0];
                check_id(ln, v, n)?;
                builder.set_label(v, text.trim());
            }
            "X" => {
                if cover.is_some() {
                    return Err(perr(ln, "duplicate X line"));
                }
                let ids = parse_ids(ln, parts)?;
                for &v in &ids {
                    check_id(ln, v, n)?;
                }
                cover = Some(VertexSet::new(ids));
            }
            "A" | "S" => {
                let ids = parse_ids(ln, parts)?;
                let Some((&v, rest)) = ids.split_first() else {
                    return Err(perr(ln, format!("{tag} line needs a vertex id")));
                };
                check_id(ln, v, n)?;
                let set = VertexSet::new(rest.to_vec());
                if tag == "A" {
                    lists.push((v, set));
                } else {
                    for &s in rest {
                        check_id(ln, s, n)?;
                    }
                    provenance.push((v, set));
                }
            }
            "STATS" => {
                let json = line["STATS".len()..].trim();
                stats = Some(
                    serde_json::from_str(json).map_err(|e| perr(ln, format!("bad STATS: {e}")))?,
                );
            }
            _ => {
                let ids = parse_ids(ln, line.split_whitespace())?;
                let [u, v] = ids[..] else {
                    return Err(perr(ln, "edge line must be `u v`"));
                };
                check_id(ln, u, n)?;
                check_id(ln, v, n)?;
                if u == v {
                    return Err(perr(ln, format!("self-loop at vertex {u}")));
                }
                seen_edges += 1;
                if seen_edges > m {
                    return Err(perr(ln, format!("more than the declared {m} edges")));
                }
                builder.add_edge(u, v);
            }
        }
    }
    let Some((_, m)) = header else {
        return Err(perr(last_line.max(1), "missing `n m` header"));
    };
    if seen_edges != m {
        return Err(perr(
            last_line,
            format!("declared {m} edges, found {seen_edges}"),
        ));
    }
    let graph = builder.build();
    if graph.edge_count() != m {
        return Err(perr(last_line, "duplicate edges"));
    }
    lists.sort_by_key(|(v, _)| *v);
    if lists.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(perr(last_line, "more than one A line for a vertex"));
    }
    Ok(Document {
        graph,
        cover,
        lists,
        provenance,
        stats,
    })
}

fn push_ids(out: &mut String, tag: &str, ids: impl Iterator<Item = usize>) {
    out.push_str(tag);
    for v in ids {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
}

pub fn write_document(doc: &Document) -> String {
    let g = &doc.graph;
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    for (v, l) in g.labels() {
        let _ = writeln!(out, "L {v} {l}");
    }
    if let Some(x) = &doc.cover {
        push_ids(&mut out, "X", x.iter());
    }
    for (v, list) in &doc.lists {
        push_ids(&mut out, &format!("A {v}"), list.iter());
    }
    for (v, s) in &doc.provenance {
        push_ids(&mut out, &format!("S {v}"), s.iter());
    }
    if let Some(stats) = &doc.stats {
        let _ = writeln!(out, "STATS {stats}");
    }
    out
}
