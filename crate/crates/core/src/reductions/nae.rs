use super::{CnfFormula, EdgeGadget};
use crate::graph::{common_neighbors_bits, find_homomorphism, is_core, GraphBuilder, Lists};
use crate::kernels::VertexCoverInstance;
use crate::witness::witness_number_with;
use crate::{Ceilings, Error, Graph, Result, VertexSet};

/// A set of `q(H)` vertices with no common neighbor whose `(q-1)`-subsets all
/// have one: the witness certificate itself.
pub fn find_tight_witness_set(h: &Graph) -> Result<VertexSet> {
    find_tight_witness_set_with(h, &Ceilings::default())
}

pub fn find_tight_witness_set_with(h: &Graph, ceilings: &Ceilings) -> Result<VertexSet> {
    Ok(witness_number_with(h, ceilings)?.witness_set)
}

/// `|V_H| + 2qn + 2q(|V_H|-1)n(|V_F|-2)`, the size of the cover produced by
/// [`reduce_naesat_to_hcol`].
pub fn nae_cover_size(h_vertices: usize, q: usize, n_vars: usize, f_vertices: usize) -> usize {
    h_vertices + 2 * q * n_vars + 2 * q * (h_vertices - 1) * n_vars * (f_vertices - 2)
}

#[derive(Clone, Debug)]
pub struct NaeReduction {
    pub instance: VertexCoverInstance,
    /// `true_vertex[i][j]` and `false_vertex[i][j]` are the ids of
    /// `t_{i,j}` and `f_{i,j}` (0-based `i`, `j`).
    pub true_vertex: Vec<Vec<usize>>,
    pub false_vertex: Vec<Vec<usize>>,
    /// Clause vertices in clause order; exactly the vertices outside the cover.
    pub clause_vertices: Vec<usize>,
}

impl NaeReduction {
    /// Decides whether the reduced graph is `H`-colorable.
    ///
    /// When `H` is a core, every homomorphism acts on the copy of `H` as an
    /// automorphism, and composing with its inverse gives one that fixes the
    /// copy pointwise. The search therefore pins the copy, which removes the
    /// `|Aut(H)|`-fold symmetry. Non-cores fall back to the plain search.
    pub fn is_colorable(&self, h: &Graph) -> bool {
        let g = self.instance.graph();
        let pinned = h.n() <= g.n()
            && (0..h.n()).all(|v| g.neighbors(v).iter().filter(|&u| u < h.n()).eq(h.neighbors(v).iter()))
            && is_core(h);
        let lists: Option<Lists> =
            pinned.then(|| (0..h.n()).map(|v| (v, VertexSet::new(vec![v]))).collect());
        find_homomorphism(g, h, lists.as_ref()).is_some()
    }
}

/// Builds a graph that is `H`-colorable iff `formula` is NAE-satisfiable.
///
/// Layout: the copy of `H` on `0..|V_H|`, then `t_{i,j} = |V_H| + 2(iq + j)`
/// with `f_{i,j}` right after it, then gadget internals in attachment order,
/// then one vertex per clause. Literal `j` of a clause on variable `x_i`
/// connects to `t_{i,j}` when positive and `f_{i,j}` when negative.
pub fn reduce_naesat_to_hcol(
    formula: &CnfFormula,
    h: &Graph,
    t: &VertexSet,
    gadget: &EdgeGadget,
) -> Result<NaeReduction> {
    let q = t.len();
    if q < 3 {
        return Err(Error::invalid(format!("tight set must have at least 3 vertices, got {q}")));
    }
    t.check_within(h.n())?;
    if let Some((i, c)) = formula.clauses.iter().enumerate().find(|(_, c)| c.len() != q) {
        return Err(Error::invalid(format!(
            "clause {i} has width {}, expected {q}",
            c.len()
        )));
    }
    check_tight(h, t)?;
    if !gadget.verify(h)? {
        return Err(Error::invalid("gadget does not verify against the target"));
    }

    let hn = h.n();
    let n = formula.n_vars;
    let a = t.as_slice();
    let mut b = GraphBuilder::from_graph(h);
    b.add_vertices(2 * q * n);
    let tv = |i: usize, j: usize| hn + 2 * (i * q + j);
    let (f, ga, gb) = (gadget.graph(), gadget.a(), gadget.b());
    for i in 0..n {
        for j in 0..q {
            let (ti, fi) = (tv(i, j), tv(i, j) + 1);
            b.attach_copy(f, ga, gb, ti, fi);
            b.attach_copy(f, ga, gb, ti, tv(i, (j + 1) % q));
            for x in (0..hn).filter(|&x| x != a[j] && x != a[(j + 1) % q]) {
                b.attach_copy(f, ga, gb, ti, x);
                b.attach_copy(f, ga, gb, fi, x);
            }
        }
    }
    let cover_len = b.n();
    let mut clause_vertices = Vec::with_capacity(formula.clauses.len());
    for clause in &formula.clauses {
        let c = b.add_vertex();
        for (j, &lit) in clause.iter().enumerate() {
            let i = lit.unsigned_abs() as usize - 1;
            b.add_edge(c, if lit > 0 { tv(i, j) } else { tv(i, j) + 1 });
        }
        clause_vertices.push(c);
    }
    let graph = b.build();
    let expected = nae_cover_size(hn, q, n, f.n());
    if cover_len != expected {
        return Err(Error::Invariant(format!("cover has {cover_len} vertices, expected {expected}")));
    }
    let instance = VertexCoverInstance::new(graph, VertexSet::new((0..cover_len).collect()))?;
    Ok(NaeReduction {
        instance,
        true_vertex: (0..n).map(|i| (0..q).map(|j| tv(i, j)).collect()).collect(),
        false_vertex: (0..n).map(|i| (0..q).map(|j| tv(i, j) + 1).collect()).collect(),
        clause_vertices,
    })
}

fn check_tight(h: &Graph, t: &VertexSet) -> Result<()> {
    let a = t.as_slice();
    if !common_neighbors_bits(h, a).is_empty() {
        return Err(Error::invalid(format!("{t} has a common neighbor")));
    }
    for skip in 0..a.len() {
        let rest: Vec<usize> = a.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
        if common_neighbors_bits(h, &rest).is_empty() {
            return Err(Error::invalid(format!(
                "{t} is not tight: dropping {} leaves no common neighbor",
                a[skip]
            )));
        }
    }
    Ok(())
}
