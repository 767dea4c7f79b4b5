//! The non-adjacency witness number `q(G)` and the structural quantities that
//! bound it.
//!
//! `q(G)` is the largest size of an inclusion-minimal vertex set without a
//! common neighbour (a *critical* set). The search walks sets `T` in
//! lexicographic order and only keeps those in which every member `u` has a
//! private witness: a vertex adjacent to all of `T \ {u}` but not to `u`.
//! That property is inherited by subsets and holds for every critical set, so
//! the walk reaches all critical sets while discarding most of the lattice.
//! The private witnesses of distinct members are distinct neighbours of any
//! third member, which caps the depth at `Δ(G) + 1`.

use crate::graph::{Graph, GraphBuilder, HomSearch, VertexSet};
use crate::{Ceilings, Error, Result};
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicUsize, Ordering};

const MASK_BITS: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub q: usize,
    /// Lexicographically first critical set of size `q`.
    pub witness_set: VertexSet,
    /// Every critical set has at most this many vertices; the search covered
    /// all sizes up to here.
    pub checked_up_to: usize,
}

impl WitnessCertificate {
    /// Re-checks the certificate against `g` from scratch.
    pub fn verify(&self, g: &Graph) -> bool {
        let t = self.witness_set.as_slice();
        if t.len() != self.q || t.iter().any(|&v| v >= g.n()) {
            return false;
        }
        if !crate::graph::common_neighbors_bits(g, t).is_empty() {
            return false;
        }
        (0..t.len()).all(|skip| {
            let rest: Vec<usize> = t
                .iter()
                .enumerate()
                .filter_map(|(i, &v)| (i != skip).then_some(v))
                .collect();
            !crate::graph::common_neighbors_bits(g, &rest).is_empty()
        })
    }
}

pub fn witness_number(g: &Graph) -> Result<WitnessCertificate> {
    witness_number_with(g, &Ceilings::default())
}

pub fn witness_number_with(g: &Graph, ceilings: &Ceilings) -> Result<WitnessCertificate> {
    let n = g.n();
    if n == 0 {
        return Err(Error::invalid("witness number needs a nonempty graph"));
    }
    let limit = ceilings.witness_vertices.min(MASK_BITS);
    if n > limit {
        return Err(Error::ceiling("witness search vertices", n, limit));
    }
    let adj: Vec<u128> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u128, |m, u| m | 1 << u))
        .collect();
    let full = if n == MASK_BITS { u128::MAX } else { (1u128 << n) - 1 };
    let cap = g.max_degree() + 1;
    let global = AtomicUsize::new(0);

    let per_root = crate::par::map_range(0..n, |x| {
        let mut dfs = Dfs {
            adj: &adj,
            n,
            cap,
            global: &global,
            best: Vec::new(),
            t: vec![x],
            private: vec![full & !adj[x]],
        };
        dfs.descend(adj[x]);
        dfs.best
    });
    let witness = per_root
        .into_iter()
        .fold(Vec::new(), |acc: Vec<usize>, cand| {
            if cand.len() > acc.len() {
                cand
            } else {
                acc
            }
        });
    Ok(WitnessCertificate {
        q: witness.len(),
        witness_set: VertexSet::new(witness),
        checked_up_to: cap,
    })
}

struct Dfs<'a> {
    adj: &'a [u128],
    n: usize,
    cap: usize,
    global: &'a AtomicUsize,
    best: Vec<usize>,
    t: Vec<usize>,
    private: Vec<u128>,
}

impl Dfs<'_> {
    fn descend(&mut self, cn: u128) {
        if cn == 0 {
            if self.t.len() > self.best.len() {
                self.best = self.t.clone();
                self.global.fetch_max(self.t.len(), Ordering::Relaxed);
            }
            return;
        }
        if self.t.len() >= self.cap {
            return;
        }
        let last = *self.t.last().unwrap();
        let remaining = self.n - last - 1;
        let reach = self.t.len() + remaining;
        if reach <= self.best.len() || reach < self.global.load(Ordering::Relaxed) {
            return;
        }
        for x in last + 1..self.n {
            let nx = self.adj[x];
            let px = cn & !nx;
            if px == 0 || self.private.iter().any(|&p| p & nx == 0) {
                continue;
            }
            let saved = self.private.clone();
            for p in self.private.iter_mut() {
                *p &= nx;
            }
            self.private.push(px);
            self.t.push(x);
            self.descend(cn & nx);
            self.t.pop();
            self.private = saved;
            if self.best.len() == self.cap {
                return;
            }
        }
    }
}

/// `B_{m,l}`: vertices `u_1..u_m` are `0..m` and `v_1..v_l` are `m..m+l`.
/// `v_i ~ u_j` for `j != i`, and `u_i ~ u_j` whenever `i != j` and one of
/// them exceeds `l`.
pub fn b_ml(m: usize, l: usize) -> Result<Graph> {
    if l > m {
        return Err(Error::invalid(format!("B_(m,l) needs l <= m, got m={m}, l={l}")));
    }
    let mut b = GraphBuilder::new(m + l);
    for i in 0..l {
        for j in 0..m {
            if j != i {
                b.add_edge(m + i, j);
            }
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            if j >= l {
                b.add_edge(i, j);
            }
        }
    }
    Ok(b.build())
}

/// Closed form `(m^2 - l^2 + 2ml - m - l) / 2` for `|E(B_{m,l})|`.
pub fn b_ml_edge_count(m: usize, l: usize) -> usize {
    (m * m + 2 * m * l - l * l - m - l) / 2
}

/// An injective map `V(B_{m,l}) -> V(G)` preserving the edges of `B_{m,l}`.
pub fn find_b_ml_copy(g: &Graph, m: usize, l: usize) -> Result<Option<Vec<usize>>> {
    find_b_ml_copy_with(g, m, l, &Ceilings::default())
}

pub fn find_b_ml_copy_with(
    g: &Graph,
    m: usize,
    l: usize,
    ceilings: &Ceilings,
) -> Result<Option<Vec<usize>>> {
    if m > ceilings.b_pattern_m {
        return Err(Error::ceiling("B_(m,l) pattern m", m, ceilings.b_pattern_m));
    }
    let pattern = b_ml(m, l)?;
    if pattern.n() > g.n() || pattern.edge_count() > g.edge_count() {
        return Ok(None);
    }
    Ok(HomSearch::new(&pattern, g)
        .injective(true)
        .find()
        .map(|f| f.assignment))
}

/// `true` iff `g` has no `B_{q,l}` subgraph for any `l`, which certifies
/// `q(G) <= q - 1`.
pub fn witness_bound_via_b(g: &Graph, q: usize) -> Result<bool> {
    witness_bound_via_b_with(g, q, &Ceilings::default())
}

pub fn witness_bound_via_b_with(g: &Graph, q: usize, ceilings: &Ceilings) -> Result<bool> {
    if q == 0 {
        return Err(Error::invalid("witness_bound_via_b needs q >= 1"));
    }
    for l in 0..=q {
        if find_b_ml_copy_with(g, q, l, ceilings)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn max_degree(g: &Graph) -> usize {
    g.max_degree()
}

/// Smallest `d` such that every subgraph has a vertex of degree at most `d`.
pub fn degeneracy(g: &Graph) -> usize {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut best = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        best = best.max(deg[v]);
        removed[v] = true;
        for u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    best
}

pub fn clique_number(g: &Graph) -> Result<usize> {
    clique_number_with(g, &Ceilings::default())
}

/// Maximum clique size by Bron-Kerbosch with pivoting.
pub fn clique_number_with(g: &Graph, ceilings: &Ceilings) -> Result<usize> {
    if g.n() > ceilings.clique_vertices {
        return Err(Error::ceiling("clique search vertices", g.n(), ceilings.clique_vertices));
    }
    fn expand(g: &Graph, size: usize, p: crate::bitset::Bitset, x: crate::bitset::Bitset, best: &mut usize) {
        if p.is_empty() {
            *best = (*best).max(size);
            return;
        }
        if size + p.count() <= *best {
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| p.intersection_count(g.neighbors(u)))
            .unwrap();
        let mut p = p;
        let mut x = x;
        let candidates = p.difference(g.neighbors(pivot));
        for v in candidates.iter() {
            expand(
                g,
                size + 1,
                p.intersection(g.neighbors(v)),
                x.intersection(g.neighbors(v)),
                best,
            );
            p.remove(v);
            x.insert(v);
        }
    }
    let mut best = 0;
    expand(
        g,
        0,
        crate::bitset::Bitset::full(g.n()),
        crate::bitset::Bitset::new(g.n()),
        &mut best,
    );
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        common_neighbors, make_complete, make_cycle, make_edgeless, make_kneser, make_random,
    };

    /// Max size of an inclusion-minimal set without common neighbours, by
    /// enumerating every subset.
    fn brute_q(g: &Graph) -> usize {
        let n = g.n();
        let empty: Vec<bool> = (0..1u32 << n)
            .map(|mask| {
                let t: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                common_neighbors(g, &VertexSet::new(t)).is_empty()
            })
            .collect();
        (0..1u32 << n)
            .filter(|&mask| empty[mask as usize])
            .filter(|&mask| (0..n).all(|i| mask >> i & 1 == 0 || !empty[(mask & !(1 << i)) as usize]))
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn regression_values() {
        for m in 1..=6 {
            assert_eq!(witness_number(&make_complete(m)).unwrap().q, m);
        }
        for (m, q) in [(3, 3), (4, 2), (5, 2), (6, 3), (7, 2), (8, 2), (9, 2)] {
            assert_eq!(witness_number(&make_cycle(m).unwrap()).unwrap().q, q, "C_{m}");
        }
        for (m, r) in [(4, 2), (5, 2), (6, 2), (7, 3)] {
            let c = witness_number(&make_kneser(m, r).unwrap()).unwrap();
            assert_eq!(c.q, m - 2 * r + 2, "K({m},{r})");
        }
        let e = witness_number(&make_edgeless(4)).unwrap();
        assert_eq!((e.q, e.witness_set.as_slice()), (1, &[0][..]));
    }

    #[test]
    fn c6_certificate_is_alternating_triple() {
        let c = witness_number(&make_cycle(6).unwrap()).unwrap();
        assert_eq!(c.witness_set.as_slice(), &[0, 2, 4]);
        assert_eq!(c.checked_up_to, 3);
        assert!(c.verify(&make_cycle(6).unwrap()));
    }

    #[test]
    fn agrees_with_subset_oracle() {
        for seed in 0..60 {
            let n = 1 + (seed as usize % 8);
            let g = make_random(n, seed);
            let c = witness_number(&g).unwrap();
            assert_eq!(c.q, brute_q(&g), "seed {seed}");
            assert!(c.verify(&g));
        }
    }

    #[test]
    fn ceiling_and_empty_graph() {
        assert!(witness_number(&make_edgeless(0)).is_err());
        let tight = Ceilings {
            witness_vertices: 4,
            ..Ceilings::default()
        };
        assert!(witness_number_with(&make_complete(5), &tight).is_err());
    }

    #[test]
    fn b_ml_shapes() {
        for m in 1..=6 {
            for l in 0..=m {
                let b = b_ml(m, l).unwrap();
                assert_eq!(b.edge_count(), b_ml_edge_count(m, l), "B_({m},{l})");
            }
        }
        assert!(b_ml(5, 0).unwrap().same_structure(&make_complete(5)));
        assert!(b_ml(2, 3).is_err());
    }

    #[test]
    fn b_ml_copies() {
        assert!(find_b_ml_copy(&make_complete(5), 5, 0).unwrap().is_some());
        let c7 = make_cycle(7).unwrap();
        for l in 0..=3 {
            assert!(find_b_ml_copy(&c7, 3, l).unwrap().is_none());
        }
        assert!(witness_bound_via_b(&c7, 3).unwrap());
        assert!(!witness_bound_via_b(&make_complete(4), 4).unwrap());
        // B_{3,3} is C_6.
        let c6 = make_cycle(6).unwrap();
        let emb = find_b_ml_copy(&c6, 3, 3).unwrap().unwrap();
        let pat = b_ml(3, 3).unwrap();
        assert!(pat.edges().all(|(u, v)| c6.has_edge(emb[u], emb[v])));
        assert!(find_b_ml_copy(&make_complete(4), 8, 0).is_err());
    }

    #[test]
    fn classical_invariants() {
        let p = make_kneser(5, 2).unwrap();
        assert_eq!(degeneracy(&p), 3);
        assert_eq!(clique_number(&p).unwrap(), 2);
        assert_eq!(max_degree(&p), 3);
        assert_eq!(max_degree(&make_kneser(7, 3).unwrap()), 4);
        assert_eq!(clique_number(&make_complete(6)).unwrap(), 6);
        assert_eq!(clique_number(&make_edgeless(3)).unwrap(), 1);
        assert_eq!(clique_number(&make_edgeless(0)).unwrap(), 0);
        assert_eq!(degeneracy(&make_cycle(9).unwrap()), 2);
    }
}
