use super::{
    combinatorial_bit_bound, combinatorial_vertex_bound, binomial, KernelMode, KernelResult,
    KernelStats, VertexCoverInstance,
};
use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::{Ceilings, Error, Result};
use std::collections::BTreeSet;
use std::time::Instant;

pub fn combinatorial_kernel(inst: &VertexCoverInstance, q: usize) -> Result<KernelResult> {
    combinatorial_kernel_with(inst, q, &Ceilings::default())
}

/// `G[X]` plus one vertex `v_S` adjacent to `S` for every nonempty
/// `S ⊆ X`, `|S| <= q`, contained in the neighbourhood of some vertex
/// outside `X`.
pub fn combinatorial_kernel_with(
    inst: &VertexCoverInstance,
    q: usize,
    ceilings: &Ceilings,
) -> Result<KernelResult> {
    if q == 0 {
        return Err(Error::invalid("combinatorial kernel needs q >= 1"));
    }
    let start = Instant::now();
    let g = inst.graph();
    let x = inst.cover().as_slice();
    let k = x.len();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in x.iter().enumerate() {
        index[v] = i;
    }
    let outside: Vec<Vec<usize>> = (0..g.n())
        .filter(|&v| index[v] == usize::MAX)
        .map(|v| g.neighbors(v).iter().map(|u| index[u]).collect())
        .filter(|nb: &Vec<usize>| !nb.is_empty())
        .collect();
    let work: u64 = outside
        .iter()
        .map(|nb| (1..=q as u64).map(|i| binomial(nb.len() as u64, i)).sum::<u64>())
        .sum();
    if work > ceilings.kernel_subsets as u64 {
        return Err(Error::ceiling(
            "kernel subset enumeration",
            work.min(usize::MAX as u64) as usize,
            ceilings.kernel_subsets,
        ));
    }
    let per_vertex = crate::par::map_slice(&outside, |nb| subsets_up_to(nb, q));
    let mut sets: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for list in per_vertex {
        sets.extend(list.into_iter().map(|s| (s.len(), s)));
    }
    let sets: Vec<Vec<usize>> = sets.into_iter().map(|(_, s)| s).collect();
    let (graph, provenance) = assemble(g, x, &sets);
    let stats = KernelStats {
        mode: KernelMode::Combinatorial,
        k,
        exponent: q,
        vertices: graph.n(),
        edges: graph.edge_count(),
        vertex_bound: combinatorial_vertex_bound(k, q),
        bit_size_estimate: combinatorial_bit_bound(k, q),
        bit_bound: combinatorial_bit_bound(k, q),
        basis_candidates: 0,
        basis_kept: 0,
        basis_dropped: 0,
        basis_bound: 0,
    };
    Ok(KernelResult {
        graph,
        cover: VertexSet::full(k),
        cover_origin: x.to_vec(),
        provenance,
        stats,
        basis: None,
        elapsed: start.elapsed(),
    })
}

/// Nonempty subsets of the sorted list `items` with at most `q` elements.
fn subsets_up_to(items: &[usize], q: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], q: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in from..items.len() {
            cur.push(items[i]);
            out.push(cur.clone());
            if cur.len() < q {
                rec(items, q, i + 1, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, q, 0, &mut Vec::new(), &mut out);
    out
}

/// `G[X]` relabelled to `0..k`, then one vertex per set, in the given order.
pub(super) fn assemble(
    g: &Graph,
    x: &[usize],
    sets: &[Vec<usize>],
) -> (Graph, Vec<(usize, VertexSet)>) {
    let k = x.len();
    let mut b = GraphBuilder::new(k);
    for i in 0..k {
        for j in i + 1..k {
            if g.has_edge(x[i], x[j]) {
                b.add_edge(i, j);
            }
        }
    }
    let mut provenance = Vec::with_capacity(sets.len());
    for s in sets {
        let v = b.add_vertex();
        for &u in s {
            b.add_edge(v, u);
        }
        provenance.push((v, VertexSet::new(s.clone())));
    }
    (b.build(), provenance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle};
    use crate::kernels::{random_cover_instance, verify_kernel_equivalence};

    #[test]
    fn single_edge() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let inst = VertexCoverInstance::new(g, VertexSet::new(vec![0])).unwrap();
        let r = combinatorial_kernel(&inst, 2).unwrap();
        assert_eq!(r.graph.n(), 2);
        assert_eq!(r.graph.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(r.provenance, vec![(1, VertexSet::new(vec![0]))]);
        r.check_invariants().unwrap();
    }

    #[test]
    fn complete_split_meets_the_bound() {
        // X = 0..4 plus one outside vertex per nonempty subset of X.
        let k = 4;
        let mut edges = Vec::new();
        let mut next = k;
        for mask in 1u32..1 << k {
            for i in 0..k {
                if mask >> i & 1 == 1 {
                    edges.push((i, next));
                }
            }
            next += 1;
        }
        let g = Graph::from_edges(next, edges).unwrap();
        let inst = VertexCoverInstance::new(g, VertexSet::full(k)).unwrap();
        for q in 1..=k {
            let r = combinatorial_kernel(&inst, q).unwrap();
            assert_eq!(r.graph.n() as u64, r.stats.vertex_bound, "q={q}");
            r.check_invariants().unwrap();
        }
    }

    #[test]
    fn c5_equivalence_on_random_instances() {
        let c5 = make_cycle(5).unwrap();
        for seed in 0..50 {
            let inst = random_cover_instance(14, 5, 0.5, seed);
            let r = combinatorial_kernel(&inst, 2).unwrap();
            r.check_invariants().unwrap();
            assert!(verify_kernel_equivalence(&inst, &r, &c5, &Ceilings::default()).unwrap());
        }
    }

    #[test]
    fn kernelizing_a_kernel_adds_nothing() {
        for seed in 0..10 {
            let inst = random_cover_instance(12, 4, 0.6, seed);
            let r = combinatorial_kernel(&inst, 3).unwrap();
            let again = VertexCoverInstance::new(r.graph.clone(), r.cover.clone()).unwrap();
            let r2 = combinatorial_kernel(&again, 3).unwrap();
            assert!(r2.graph.same_structure(&r.graph));
            assert_eq!(r2.provenance, r.provenance);
        }
    }

    #[test]
    fn agreement_examples() {
        let bip = VertexCoverInstance::with_matching_cover(make_cycle(8).unwrap());
        let r = combinatorial_kernel(&bip, 2).unwrap();
        assert!(verify_kernel_equivalence(&bip, &r, &make_complete(2), &Ceilings::default()).unwrap());
        let k4 = VertexCoverInstance::new(make_complete(4), VertexSet::new(vec![0, 1, 2])).unwrap();
        let r = combinatorial_kernel(&k4, 3).unwrap();
        assert!(crate::graph::find_homomorphism(&r.graph, &make_complete(3), None).is_none());
        assert!(verify_kernel_equivalence(&k4, &r, &make_complete(3), &Ceilings::default()).unwrap());
    }

    #[test]
    fn empty_cover() {
        let g = crate::graph::make_edgeless(5);
        let inst = VertexCoverInstance::new(g, VertexSet::default()).unwrap();
        let r = combinatorial_kernel(&inst, 2).unwrap();
        assert_eq!(r.graph.n(), 0);
        assert_eq!(r.stats.vertex_bound, 0);
    }

    #[test]
    fn ceiling() {
        let inst = random_cover_instance(14, 6, 0.9, 2);
        let tight = Ceilings {
            kernel_subsets: 3,
            ..Ceilings::default()
        };
        assert!(combinatorial_kernel_with(&inst, 2, &tight).is_err());
    }
}
