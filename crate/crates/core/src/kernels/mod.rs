//! Kernels for H-Coloring parameterized by the size `k` of a given vertex
//! cover `X`.
//!
//! Both kernels lay out their output the same way: the cover vertices come
//! first (kernel vertex `i` is the `i`-th smallest member of `X`), followed by
//! one vertex `v_S` per retained subset `S` of the cover, ordered by `|S|` and
//! then lexicographically. `v_S` is adjacent to exactly `S`.

mod algebraic;
mod combinatorial;

pub use algebraic::{algebraic_kernel, algebraic_kernel_with, BasisCertificate};
pub use combinatorial::{combinatorial_kernel, combinatorial_kernel_with};

use crate::graph::{find_homomorphism, Document, Graph, VertexSet};
use crate::witness::witness_number_with;
use crate::{Ceilings, Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Duration;

/// A graph with a vertex cover of it.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexCoverInstance {
    graph: Graph,
    cover: VertexSet,
}

impl VertexCoverInstance {
    /// Fails if `cover` misses an edge or names a vertex outside the graph.
    pub fn new(graph: Graph, cover: VertexSet) -> Result<Self> {
        cover.check_within(graph.n())?;
        if let Some((u, v)) = graph
            .edges()
            .find(|&(u, v)| !cover.contains(u) && !cover.contains(v))
        {
            return Err(Error::invalid(format!("edge ({u},{v}) is not covered by X")));
        }
        Ok(VertexCoverInstance { graph, cover })
    }

    /// Uses the endpoints of a greedy maximal matching as the cover.
    pub fn with_matching_cover(graph: Graph) -> Self {
        let cover = crate::graph::matching_vertex_cover(&graph);
        VertexCoverInstance { graph, cover }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cover(&self) -> &VertexSet {
        &self.cover
    }

    pub fn k(&self) -> usize {
        self.cover.len()
    }

    pub fn from_document(doc: &Document) -> Result<Self> {
        let cover = doc
            .cover
            .clone()
            .ok_or_else(|| Error::invalid("instance needs an `X` cover line"))?;
        VertexCoverInstance::new(doc.graph.clone(), cover)
    }

    pub fn to_document(&self) -> Document {
        let mut doc = Document::plain(self.graph.clone());
        doc.cover = Some(self.cover.clone());
        doc
    }
}

/// Random instance on `n` vertices whose cover is a uniformly random
/// `k`-subset; every pair meeting the cover becomes an edge with probability
/// `density`.
pub fn random_cover_instance(n: usize, k: usize, density: f64, seed: u64) -> VertexCoverInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let cover = VertexSet::new(order[..k.min(n)].to_vec());
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if (cover.contains(u) || cover.contains(v)) && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::from_edges(n, edges).expect("generated edges are valid");
    VertexCoverInstance { graph, cover }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelMode {
    Combinatorial,
    Algebraic,
}

/// Size accounting of a kernel run. Wall-clock time is kept out of this
/// struct so that serialized outputs are reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelStats {
    pub mode: KernelMode,
    pub k: usize,
    /// `q` for the combinatorial kernel, `d` for the algebraic one.
    pub exponent: usize,
    pub vertices: usize,
    pub edges: usize,
    pub vertex_bound: u64,
    pub bit_size_estimate: u64,
    pub bit_bound: u64,
    /// `|Y|`: subsets of size exactly `d` present before basis selection.
    pub basis_candidates: usize,
    pub basis_kept: usize,
    pub basis_dropped: usize,
    /// `C(k(d-1), d-1)`, the dimension bound on the kept family.
    pub basis_bound: u64,
}

#[derive(Clone, Debug)]
pub struct KernelResult {
    pub graph: Graph,
    /// The cover inside `graph`; always `0..k`.
    pub cover: VertexSet,
    /// Original ids of the cover vertices, in kernel order.
    pub cover_origin: Vec<usize>,
    /// `(v_S, S)` for every added vertex, in kernel ids.
    pub provenance: Vec<(usize, VertexSet)>,
    pub stats: KernelStats,
    /// Present for the algebraic kernel.
    pub basis: Option<BasisCertificate>,
    pub elapsed: Duration,
}

impl KernelResult {
    /// Graph, cover line, provenance lines and a `STATS` line. Cover vertices
    /// carry their original id as label.
    pub fn to_document(&self) -> Document {
        let labels: BTreeMap<usize, String> = self
            .cover_origin
            .iter()
            .enumerate()
            .map(|(i, &v)| (i, v.to_string()))
            .collect();
        let mut doc = Document::plain(self.graph.clone().with_labels(labels));
        doc.cover = Some(self.cover.clone());
        doc.provenance = self.provenance.clone();
        doc.stats = Some(serde_json::to_value(&self.stats).expect("stats serialize"));
        doc
    }

    /// The structural invariants every kernel output must satisfy.
    pub fn check_invariants(&self) -> Result<()> {
        let g = &self.graph;
        if !g.is_vertex_cover(&self.cover) {
            return Err(Error::Invariant("X is not a vertex cover of the kernel".into()));
        }
        for (v, s) in &self.provenance {
            if VertexSet::from_bitset(g.neighbors(*v)) != *s {
                return Err(Error::Invariant(format!("N(v_S) differs from S for vertex {v}")));
            }
        }
        let k = self.cover.len();
        if g.n() != k + self.provenance.len() {
            return Err(Error::Invariant("kernel has unexplained vertices".into()));
        }
        let r = kernel_size_report(self);
        if !r.within_bounds {
            return Err(Error::Invariant(format!(
                "kernel size {} / {} bits exceeds bound {} / {}",
                r.vertices, r.bit_size, r.vertex_bound, r.bit_bound
            )));
        }
        Ok(())
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn subset_count(k: usize, q: usize) -> u64 {
    (1..=q as u64).map(|i| binomial(k as u64, i)).sum()
}

fn log2_ceil(k: usize) -> u64 {
    (k.max(2) as u64).next_power_of_two().trailing_zeros() as u64
}

/// `k + sum_{i=1..q} C(k, i)`.
pub fn combinatorial_vertex_bound(k: usize, q: usize) -> u64 {
    k as u64 + subset_count(k, q)
}

/// `C(k, 2) + sum_{i=1..q} C(k, i)`: adjacency inside `X` plus one
/// indicator bit per candidate subset.
pub fn combinatorial_bit_bound(k: usize, q: usize) -> u64 {
    binomial(k as u64, 2) + subset_count(k, q)
}

/// `C(k(d-1), d-1)`.
pub fn algebraic_basis_bound(k: usize, d: usize) -> u64 {
    binomial((k * (d - 1)) as u64, (d - 1) as u64)
}

/// `k + sum_{i=1..d-1} C(k, i) + C(k(d-1), d-1)`.
pub fn algebraic_vertex_bound(k: usize, d: usize) -> u64 {
    k as u64 + subset_count(k, d - 1) + algebraic_basis_bound(k, d)
}

/// `C(k, 2)` plus `d * ceil(log2 k)` bits for each vertex outside `X`.
pub fn algebraic_bit_size(k: usize, d: usize, outside: u64) -> u64 {
    binomial(k as u64, 2) + outside * d as u64 * log2_ceil(k)
}

pub fn algebraic_bit_bound(k: usize, d: usize) -> u64 {
    algebraic_bit_size(k, d, algebraic_vertex_bound(k, d) - k as u64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeReport {
    pub vertices: usize,
    pub edges: usize,
    pub vertex_bound: u64,
    pub bit_size: u64,
    pub bit_bound: u64,
    pub vertex_ratio: f64,
    pub within_bounds: bool,
}

pub fn kernel_size_report(result: &KernelResult) -> SizeReport {
    let s = &result.stats;
    let ratio = if s.vertex_bound == 0 {
        0.0
    } else {
        s.vertices as f64 / s.vertex_bound as f64
    };
    SizeReport {
        vertices: s.vertices,
        edges: s.edges,
        vertex_bound: s.vertex_bound,
        bit_size: s.bit_size_estimate,
        bit_bound: s.bit_bound,
        vertex_ratio: ratio,
        within_bounds: s.vertices as u64 <= s.vertex_bound
            && s.bit_size_estimate <= s.bit_bound
            && (s.mode == KernelMode::Combinatorial || s.basis_kept as u64 <= s.basis_bound),
    }
}

/// Whether `G` and the kernel agree on `H`-colorability, decided by the exact
/// solver on both sides.
pub fn verify_kernel_equivalence(
    original: &VertexCoverInstance,
    result: &KernelResult,
    h: &Graph,
    ceilings: &Ceilings,
) -> Result<bool> {
    for g in [original.graph(), &result.graph] {
        if g.n() > ceilings.oracle_vertices {
            return Err(Error::ceiling("oracle source vertices", g.n(), ceilings.oracle_vertices));
        }
    }
    let before = find_homomorphism(original.graph(), h, None).is_some();
    let after = find_homomorphism(&result.graph, h, None).is_some();
    Ok(before == after)
}

/// Combinatorial kernel with `q = q(H)`. Targets with `q(H) = 1` have no
/// edges, which makes the problem trivial; they are rejected.
pub fn kernelize_for_target(
    inst: &VertexCoverInstance,
    h: &Graph,
    ceilings: &Ceilings,
) -> Result<KernelResult> {
    let q = witness_number_with(h, ceilings)?.q;
    if q == 1 {
        return Err(Error::invalid(
            "target has q(H) = 1 (no edges); H-Coloring is trivial and no kernel is built",
        ));
    }
    combinatorial_kernel_with(inst, q, ceilings)
}
