use super::{RepKind, Representation};
use crate::ffalg::{Fe, Field};
use crate::graph::GraphBuilder;
use crate::{Ceilings, Error, Result};

pub fn ortho_graph(field: &Field, d: usize, projective: bool) -> Result<Representation> {
    ortho_graph_with(field, d, projective, &Ceilings::default())
}

/// `H(F, d)`: the non-self-orthogonal vectors of `F^d`, adjacent when
/// orthogonal, returned as its own orthogonal representation. Vectors are
/// listed in lexicographic order of their coordinates (first coordinate most
/// significant). With `projective`, only vectors whose first nonzero entry is
/// 1 are kept, one per line through the origin.
pub fn ortho_graph_with(
    field: &Field,
    d: usize,
    projective: bool,
    ceilings: &Ceilings,
) -> Result<Representation> {
    if d == 0 {
        return Err(Error::invalid("ortho_graph needs d >= 1"));
    }
    let q = field.order() as u64;
    let total = q.checked_pow(d as u32).unwrap_or(u64::MAX);
    if total > ceilings.ortho_vertices as u64 {
        return Err(Error::ceiling(
            "orthogonality graph candidates",
            total.min(usize::MAX as u64) as usize,
            ceilings.ortho_vertices,
        ));
    }
    let mut vectors: Vec<Vec<Fe>> = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut x = vec![Fe::ZERO; d];
        for slot in x.iter_mut().rev() {
            *slot = Fe((c % q) as u32);
            c /= q;
        }
        if field.dot(&x, &x).is_zero() {
            continue;
        }
        if projective && x.iter().find(|e| !e.is_zero()) != Some(&Fe::ONE) {
            continue;
        }
        vectors.push(x);
    }
    let mut b = GraphBuilder::new(vectors.len());
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            if field.dot(&vectors[i], &vectors[j]).is_zero() {
                b.add_edge(i, j);
            }
        }
        let body: Vec<String> = vectors[i].iter().map(|&e| field.format(e)).collect();
        b.set_label(i, format!("({})", body.join(",")));
    }
    Representation::new(b.build(), field.clone(), d, RepKind::Orthogonal, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::field_make;
    use crate::graph::{compute_core, find_homomorphism, make_complete};
    use crate::witness::witness_number;

    #[test]
    fn gf2_dimension_three() {
        let gf2 = field_make(2, 1).unwrap();
        let r = ortho_graph(&gf2, 3, false).unwrap();
        let g = r.graph();
        assert_eq!(g.n(), 4);
        assert_eq!(g.label(0), Some("(0,0,1)"));
        assert_eq!(g.label(3), Some("(1,1,1)"));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(r.is_faithful());
        assert!(r.clone().with_kind(RepKind::Independent).is_faithful());
        assert!(witness_number(g).unwrap().q <= 3);
        assert!(compute_core(g).unwrap().same_structure(&make_complete(3)));
    }

    #[test]
    fn projective_quotient_is_equivalent() {
        let gf3 = field_make(3, 1).unwrap();
        let full = ortho_graph(&gf3, 3, false).unwrap();
        let proj = ortho_graph(&gf3, 3, true).unwrap();
        assert_eq!(full.graph().n(), 2 * proj.graph().n());
        assert!(proj.is_faithful());
        assert!(find_homomorphism(full.graph(), proj.graph(), None).is_some());
        assert!(find_homomorphism(proj.graph(), full.graph(), None).is_some());
    }

    #[test]
    fn orthogonal_faithful_reads_as_independent() {
        for (p, d) in [(3, 2), (3, 3), (5, 2), (2, 4)] {
            let f = field_make(p, 1).unwrap();
            let r = ortho_graph(&f, d, true).unwrap();
            assert!(r.is_faithful());
            assert!(r.with_kind(RepKind::Independent).is_faithful(), "GF({p}), d={d}");
        }
    }

    #[test]
    fn ceiling() {
        let f = field_make(7, 1).unwrap();
        assert!(ortho_graph(&f, 5, false).is_err());
    }
}
