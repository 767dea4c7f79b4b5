use super::combinatorial::assemble;
use super::{
    algebraic_basis_bound, algebraic_bit_bound, algebraic_bit_size, algebraic_vertex_bound,
    combinatorial_kernel_with, KernelMode, KernelResult, VertexCoverInstance,
};
use crate::ffalg::{det_poly, poly_basis_select, Fe, Field, SparsePoly};
use crate::graph::{Graph, VertexSet};
use crate::repr::{check_faithful, RepKind, Representation};
use crate::{Ceilings, Error, Result};
use std::time::Instant;

/// Record of the basis selection over the size-`d` subsets.
#[derive(Clone, Debug)]
pub struct BasisCertificate {
    pub field: Field,
    /// `Y`, in lexicographic order, as subsets of the cover `0..k`.
    pub candidates: Vec<VertexSet>,
    /// Indices into `candidates` forming `Y'`.
    pub kept: Vec<usize>,
    /// For every dropped candidate, its coordinates over `kept`.
    pub certificates: Vec<(usize, Vec<Fe>)>,
}

impl BasisCertificate {
    /// Recomputes every `p_S` and checks that each dropped one equals the
    /// stated combination of kept ones.
    pub fn verify(&self) -> bool {
        let polys: Result<Vec<SparsePoly>> = self
            .candidates
            .iter()
            .map(|s| det_poly(s.as_slice(), &self.field))
            .collect();
        let Ok(polys) = polys else {
            return false;
        };
        self.certificates.iter().all(|(i, coords)| {
            let mut acc = SparsePoly::zero(&self.field);
            for (&j, &c) in self.kept.iter().zip(coords) {
                acc.add_scaled(c, &polys[j]);
            }
            acc == polys[*i]
        }) && self.kept.len() + self.certificates.len() == self.candidates.len()
    }
}

pub fn algebraic_kernel(
    inst: &VertexCoverInstance,
    h: &Graph,
    rep: &Representation,
) -> Result<KernelResult> {
    algebraic_kernel_with(inst, h, rep, &Ceilings::default())
}

/// Combinatorial kernel with `q = d`, after which the vertices `v_S` with
/// `|S| = d` are thinned to those whose determinant polynomials `p_S` form a
/// basis of the span of all of them.
///
/// `rep` must be a faithful independent representation of `h` of dimension
/// `d >= 3` whose vectors all start with 1, over a field with more than
/// `|V(h)|` elements.
pub fn algebraic_kernel_with(
    inst: &VertexCoverInstance,
    h: &Graph,
    rep: &Representation,
    ceilings: &Ceilings,
) -> Result<KernelResult> {
    let start = Instant::now();
    let d = rep.dim();
    if !rep.graph().same_structure(h) {
        return Err(Error::invalid("representation belongs to a different graph"));
    }
    if d < 3 {
        return Err(Error::invalid(format!(
            "algebraic kernel needs d >= 3 (got {d}); targets with d <= 2 are bipartite"
        )));
    }
    if rep.field().order() as usize <= h.n() {
        return Err(Error::Field(format!(
            "representation field {:?} must have more than {} elements",
            rep.field(),
            h.n()
        )));
    }
    if !rep.has_unit_first_entries() {
        return Err(Error::invalid(
            "representation vectors must start with 1; normalize the first entries first",
        ));
    }
    let as_independent = rep.clone().with_kind(RepKind::Independent);
    if let Err(v) = check_faithful(&as_independent) {
        return Err(Error::invalid(format!("representation is not faithful: {v}")));
    }

    let first = combinatorial_kernel_with(inst, d, ceilings)?;
    let k = inst.k();
    let (small, top): (Vec<_>, Vec<_>) = first
        .provenance
        .iter()
        .map(|(_, s)| s.clone())
        .partition(|s| s.len() < d);
    let field = rep.field().clone();
    let polys = top
        .iter()
        .map(|s| det_poly(s.as_slice(), &field))
        .collect::<Result<Vec<_>>>()?;
    let selection = poly_basis_select(&polys);

    let mut sets: Vec<Vec<usize>> = small.iter().map(|s| s.as_slice().to_vec()).collect();
    sets.extend(selection.kept.iter().map(|&i| top[i].as_slice().to_vec()));
    let x = inst.cover().as_slice();
    let (graph, provenance) = assemble(inst.graph(), x, &sets);

    let outside = (graph.n() - k) as u64;
    let mut stats = first.stats;
    stats.mode = KernelMode::Algebraic;
    stats.exponent = d;
    stats.vertices = graph.n();
    stats.edges = graph.edge_count();
    stats.vertex_bound = algebraic_vertex_bound(k, d);
    stats.bit_size_estimate = algebraic_bit_size(k, d, outside);
    stats.bit_bound = algebraic_bit_bound(k, d);
    stats.basis_candidates = top.len();
    stats.basis_kept = selection.kept.len();
    stats.basis_dropped = selection.certificates.len();
    stats.basis_bound = algebraic_basis_bound(k, d);

    Ok(KernelResult {
        graph,
        cover: first.cover,
        cover_origin: first.cover_origin,
        provenance,
        stats,
        basis: Some(BasisCertificate {
            field,
            candidates: top,
            kept: selection.kept,
            certificates: selection.certificates,
        }),
        elapsed: start.elapsed(),
    })
}
