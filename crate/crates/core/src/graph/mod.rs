//! Simple undirected graphs with dense bitset adjacency.

mod cores;
mod families;
mod format;
mod hom;

pub use cores::{compute_core, compute_core_with, is_core};
pub use families::{
    kneser_subsets, make_complete, make_cycle, make_edgeless, make_kneser, make_path, make_random,
    make_random_with_density,
};
pub use format::{parse_document, write_document, Document};
pub use hom::{count_homomorphisms, find_homomorphism, for_each_homomorphism, HomSearch, Lists};

use crate::bitset::Bitset;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Immutable simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<Bitset>,
    edges: usize,
    labels: BTreeMap<usize, String>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            b.add_edge(u, v);
        }
        Ok(b.build())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &Bitset {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Graph {
        debug_assert!(labels.keys().all(|&v| v < self.n()));
        self.labels = labels;
        self
    }

    /// Same vertices and edges, ignoring labels.
    pub fn same_structure(&self, other: &Graph) -> bool {
        self.rows == other.rows
    }

    /// Subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut b = GraphBuilder::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.add_edge(i, j);
                }
            }
            if let Some(l) = self.label(u) {
                b.set_label(i, l);
            }
        }
        b.build()
    }

    /// `self` on `0..n` followed by `other` shifted by `n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut b = GraphBuilder::from_graph(self);
        b.add_vertices(other.n());
        for (u, v) in other.edges() {
            b.add_edge(u + off, v + off);
        }
        for (&v, l) in other.labels() {
            b.set_label(v + off, l);
        }
        b.build()
    }

    /// Whether `set` meets every edge.
    pub fn is_vertex_cover(&self, set: &VertexSet) -> bool {
        let mask = Bitset::from_iter_with_len(self.n(), set.iter());
        self.edges()
            .all(|(u, v)| mask.contains(u) || mask.contains(v))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Mutable builder; the only way to grow a [`Graph`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    adj: Vec<Vec<usize>>,
    labels: BTreeMap<usize, String>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adj: vec![Vec::new(); n],
            labels: BTreeMap::new(),
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder {
            adj: (0..g.n()).map(|v| g.neighbors(v).iter().collect()).collect(),
            labels: g.labels.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds `count` fresh vertices and returns the first new id.
    pub fn add_vertices(&mut self, count: usize) -> usize {
        let first = self.adj.len();
        self.adj.resize(first + count, Vec::new());
        first
    }

    /// Panics on a self-loop or an out-of-range endpoint.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at vertex {u}");
        assert!(u < self.n() && v < self.n(), "edge ({u},{v}) out of range");
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    /// Glues a copy of `f` into the graph, identifying `f`'s vertex `a` with
    /// `x` and `b` with `y`. Returns the ids given to the other vertices of `f`.
    pub fn attach_copy(&mut self, f: &Graph, a: usize, b: usize, x: usize, y: usize) -> Vec<usize> {
        let mut map = vec![usize::MAX; f.n()];
        map[a] = x;
        map[b] = y;
        let mut fresh = Vec::with_capacity(f.n().saturating_sub(2));
        for (w, slot) in map.iter_mut().enumerate() {
            if w != a && w != b {
                *slot = self.adj.len();
                self.adj.push(Vec::new());
                fresh.push(*slot);
            }
        }
        for (u, v) in f.edges() {
            self.add_edge(map[u], map[v]);
        }
        fresh
    }

    pub fn build(self) -> Graph {
        let n = self.adj.len();
        let mut rows = vec![Bitset::new(n); n];
        let mut edges = 0;
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if !rows[u].contains(v) {
                    rows[u].insert(v);
                    rows[v].insert(u);
                    edges += 1;
                }
            }
        }
        Graph {
            rows,
            edges,
            labels: self.labels,
        }
    }
}

/// Sorted, duplicate-free list of vertex ids.
#[derive(
    Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
#[serde(into = "Vec<usize>", from = "Vec<usize>")]
pub struct VertexSet(Vec<usize>);

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(v: VertexSet) -> Self {
        v.0
    }
}

impl VertexSet {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        VertexSet(vertices)
    }

    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn from_bitset(set: &Bitset) -> Self {
        VertexSet(set.iter().collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn to_bitset(&self, n: usize) -> Bitset {
        Bitset::from_iter_with_len(n, self.iter())
    }

    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => Err(Error::invalid(format!(
                "vertex {v} outside 0..{n}"
            ))),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A total vertex map from a source graph into a target graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub assignment: Vec<usize>,
}

impl Homomorphism {
    /// Edge preservation check against the given source and target.
    pub fn is_valid(&self, source: &Graph, target: &Graph) -> bool {
        self.assignment.len() == source.n()
            && self.assignment.iter().all(|&h| h < target.n())
            && source
                .edges()
                .all(|(u, v)| target.has_edge(self.assignment[u], self.assignment[v]))
    }

    pub fn respects_lists(&self, lists: &[VertexSet]) -> bool {
        self.assignment
            .iter()
            .zip(lists)
            .all(|(&h, list)| list.contains(h))
    }

    pub fn is_bijective(&self, target_n: usize) -> bool {
        if self.assignment.len() != target_n {
            return false;
        }
        let mut seen = vec![false; target_n];
        self.assignment
            .iter()
            .all(|&h| !std::mem::replace(&mut seen[h], true))
    }
}

/// Vertices adjacent to every member of `t`; all of `V(G)` when `t` is empty.
pub fn common_neighbors(g: &Graph, t: &VertexSet) -> VertexSet {
    VertexSet::from_bitset(&common_neighbors_bits(g, t.as_slice()))
}

pub(crate) fn common_neighbors_bits(g: &Graph, t: &[usize]) -> Bitset {
    let mut acc = Bitset::full(g.n());
    for &v in t {
        acc.intersect_with(g.neighbors(v));
    }
    acc
}

/// Endpoints of a greedy maximal matching: a vertex cover at most twice the
/// minimum. Offered as an explicit helper; kernels never repair covers.
pub fn matching_vertex_cover(g: &Graph) -> VertexSet {
    let mut covered = vec![false; g.n()];
    for (u, v) in g.edges() {
        if !covered[u] && !covered[v] {
            covered[u] = true;
            covered[v] = true;
        }
    }
    covered
        .iter()
        .enumerate()
        .filter_map(|(v, &c)| c.then_some(v))
        .collect()
}
