use super::EdgeGadget;
use crate::graph::{Document, GraphBuilder, Lists};
use crate::{Error, Graph, Result, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A graph with per-vertex lists of allowed target vertices. Vertices
/// without an entry may use every target vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListInstance {
    pub graph: Graph,
    pub lists: Lists,
}

impl ListInstance {
    pub fn from_document(doc: &Document) -> ListInstance {
        ListInstance {
            graph: doc.graph.clone(),
            lists: doc.lists.iter().cloned().collect(),
        }
    }

    pub fn to_document(&self) -> Document {
        let mut doc = Document::plain(self.graph.clone());
        doc.lists = self.lists.iter().map(|(v, l)| (*v, l.clone())).collect();
        doc
    }
}

/// Glues `G` and a fresh copy of `H` (ids `n..n+|V_H|`), then for each vertex
/// `v` (ascending) and each forbidden target `h` (ascending) attaches a copy
/// of the gadget with `a` on `v` and `b` on the copy of `h`.
pub fn reduce_list_to_plain(
    g: &Graph,
    lists: &Lists,
    h: &Graph,
    gadget: &EdgeGadget,
) -> Result<Graph> {
    for (&v, list) in lists {
        if v >= g.n() {
            return Err(Error::invalid(format!(
                "list given for vertex {v} of a {}-vertex graph",
                g.n()
            )));
        }
        list.check_within(h.n())?;
    }
    if !gadget.verify(h)? {
        return Err(Error::invalid("gadget does not verify against the target"));
    }
    let n = g.n();
    let mut b = GraphBuilder::from_graph(&g.disjoint_union(h));
    for v in 0..n {
        let Some(list) = lists.get(&v) else { continue };
        for t in (0..h.n()).filter(|&t| !list.contains(t)) {
            b.attach_copy(gadget.graph(), gadget.a(), gadget.b(), v, n + t);
        }
    }
    Ok(b.build())
}

/// Independent random lists: each vertex gets a list with probability
/// `p_list`, containing each target vertex with probability `p_keep`.
pub fn random_lists(n: usize, h_n: usize, p_list: f64, p_keep: f64, seed: u64) -> Lists {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lists = Lists::new();
    for v in 0..n {
        if rng.gen_bool(p_list) {
            let keep: Vec<usize> = (0..h_n).filter(|_| rng.gen_bool(p_keep)).collect();
            lists.insert(v, VertexSet::new(keep));
        }
    }
    lists
}
