use super::hom::{HomSearch, Lists};
use super::{Graph, Homomorphism, VertexSet};
use crate::{Ceilings, Error, Result};
use std::ops::ControlFlow;

/// Whether every endomorphism of `g` is an automorphism.
///
/// Enumerates endomorphisms and stops at the first non-bijective one, so the
/// cost grows with the number of automorphisms.
pub fn is_core(g: &Graph) -> bool {
    let n = g.n();
    HomSearch::new(g, g).for_each(|a| {
        let mut seen = vec![false; n];
        if a.iter().all(|&h| !std::mem::replace(&mut seen[h], true)) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(())
        }
    })
}

/// A core of a graph together with how it sits inside the graph.
#[derive(Clone, Debug)]
pub struct Core {
    /// `g[vertices]`, renumbered in ascending order of `vertices`.
    pub graph: Graph,
    pub vertices: VertexSet,
    /// A homomorphism from the input onto `vertices` (ids of the input).
    pub retraction: Homomorphism,
}

/// Smallest induced subgraph that `g` maps to, searched by size and then
/// lexicographically. Exponential in `|V(g)|`; guarded by the core ceiling.
pub fn compute_core(g: &Graph) -> Result<Graph> {
    compute_core_with(g, &Ceilings::default()).map(|c| c.graph)
}

pub fn compute_core_with(g: &Graph, ceilings: &Ceilings) -> Result<Core> {
    let n = g.n();
    if n == 0 {
        return Err(Error::invalid("compute_core needs a nonempty graph"));
    }
    if n > ceilings.core_vertices {
        return Err(Error::ceiling("core search vertices", n, ceilings.core_vertices));
    }
    let lower = if g.edge_count() > 0 { 2 } else { 1 };
    for size in lower..=n {
        let subsets = super::kneser_subsets(n, size);
        let hit = crate::par::find_first_range(0..subsets.len(), |i| {
            let set = VertexSet::new(subsets[i].clone());
            let lists: Lists = (0..n).map(|v| (v, set.clone())).collect();
            HomSearch::new(g, g)
                .lists(Some(&lists))
                .find()
                .map(|f| (set, f))
        });
        if let Some((vertices, retraction)) = hit {
            let graph = g.induced_subgraph(vertices.as_slice());
            return Ok(Core {
                graph,
                vertices,
                retraction,
            });
        }
    }
    Err(Error::Invariant("no induced subgraph accepts a homomorphism".into()))
}
