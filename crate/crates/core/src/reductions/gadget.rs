use crate::graph::{make_path, HomSearch, Lists};
use crate::par;
use crate::{Ceilings, Error, Graph, Result, VertexSet};
use std::collections::BTreeMap;

/// A graph `F` with marked vertices `a`, `b` such that, for every pair of
/// target vertices `(u, v)`, some homomorphism `F -> H` sends `a` to `u` and
/// `b` to `v` exactly when `u != v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGadget {
    graph: Graph,
    a: usize,
    b: usize,
}

impl EdgeGadget {
    /// Verifies `(f, a, b)` against `h` before wrapping it.
    pub fn new(h: &Graph, f: Graph, a: usize, b: usize) -> Result<Self> {
        if !verify_edge_gadget(h, &f, a, b)? {
            return Err(Error::invalid(format!(
                "({a},{b}) on the given {}-vertex graph is not an edge gadget for the target",
                f.n()
            )));
        }
        Ok(EdgeGadget { graph: f, a, b })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn verify(&self, h: &Graph) -> Result<bool> {
        verify_edge_gadget(h, &self.graph, self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GadgetSearch {
    Found(EdgeGadget),
    /// Every candidate with at most `searched_up_to` vertices failed. Says
    /// nothing about larger gadgets.
    NotFound { searched_up_to: usize },
}

impl GadgetSearch {
    pub fn found(self) -> Option<EdgeGadget> {
        match self {
            GadgetSearch::Found(g) => Some(g),
            GadgetSearch::NotFound { .. } => None,
        }
    }
}

pub fn verify_edge_gadget(h: &Graph, f: &Graph, a: usize, b: usize) -> Result<bool> {
    verify_edge_gadget_with(h, f, a, b, &Ceilings::default())
}

/// Exhaustive check over all ordered pairs of target vertices, with `a` and
/// `b` pinned through singleton lists.
pub fn verify_edge_gadget_with(
    h: &Graph,
    f: &Graph,
    a: usize,
    b: usize,
    ceilings: &Ceilings,
) -> Result<bool> {
    check_marks(f, a, b)?;
    check_oracle(h, f, ceilings)?;
    let n = h.n();
    Ok(par::all_range(0..n * n, |idx| {
        let (u, v) = pair_at(n, idx);
        pinned_extends(f, h, a, b, u, v) == (u != v)
    }))
}

fn check_marks(f: &Graph, a: usize, b: usize) -> Result<()> {
    if a == b || a >= f.n() || b >= f.n() {
        return Err(Error::invalid(format!(
            "marked vertices ({a},{b}) must be distinct vertices of a {}-vertex graph",
            f.n()
        )));
    }
    Ok(())
}

fn check_oracle(h: &Graph, f: &Graph, ceilings: &Ceilings) -> Result<()> {
    if h.n() > ceilings.oracle_vertices {
        return Err(Error::ceiling("gadget target vertices", h.n(), ceilings.oracle_vertices));
    }
    if f.n() > ceilings.oracle_vertices {
        return Err(Error::ceiling("gadget vertices", f.n(), ceilings.oracle_vertices));
    }
    Ok(())
}

/// Pair order puts the diagonal first: those checks are the ones most
/// candidates fail.
fn pair_at(n: usize, idx: usize) -> (usize, usize) {
    if idx < n {
        return (idx, idx);
    }
    let r = idx - n;
    let u = r / (n - 1);
    let mut v = r % (n - 1);
    if v >= u {
        v += 1;
    }
    (u, v)
}

fn pinned_extends(f: &Graph, h: &Graph, a: usize, b: usize, u: usize, v: usize) -> bool {
    let mut lists = Lists::new();
    lists.insert(a, VertexSet::new(vec![u]));
    lists.insert(b, VertexSet::new(vec![v]));
    HomSearch::new(f, h).lists(Some(&lists)).find().is_some()
}

fn verify_sequential(h: &Graph, f: &Graph, a: usize, b: usize) -> bool {
    let n = h.n();
    (0..n * n).all(|idx| {
        let (u, v) = pair_at(n, idx);
        pinned_extends(f, h, a, b, u, v) == (u != v)
    })
}

/// `(vertices, edges, a, b)`.
type Fixture = (usize, &'static [(usize, usize)], usize, usize);

/// Known gadgets for targets outside the canonical families. The 7-vertex
/// one serves K(6,2), which has no smaller gadget.
const FIXTURES: &[Fixture] = &[(
    7,
    &[(0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 6), (4, 5), (5, 6)],
    0,
    2,
)];

pub fn find_edge_gadget(h: &Graph, max_vertices: usize) -> Result<GadgetSearch> {
    find_edge_gadget_with(h, max_vertices, &Ceilings::default())
}

/// Tries the single edge, then even paths, then for each size the stored
/// fixtures followed by every connected graph of that size with every pair
/// of marked vertices. Returns the first candidate that verifies.
pub fn find_edge_gadget_with(
    h: &Graph,
    max_vertices: usize,
    ceilings: &Ceilings,
) -> Result<GadgetSearch> {
    if max_vertices > ceilings.gadget_vertices {
        return Err(Error::ceiling("gadget vertices", max_vertices, ceilings.gadget_vertices));
    }
    if h.n() > ceilings.oracle_vertices {
        return Err(Error::ceiling("gadget target vertices", h.n(), ceilings.oracle_vertices));
    }
    let found = |f: Graph, a, b| Ok(GadgetSearch::Found(EdgeGadget { graph: f, a, b }));

    for len in (2..=max_vertices).step_by(2) {
        let path = make_path(len);
        if verify_sequential(h, &path, 0, len - 1) {
            return found(path, 0, len - 1);
        }
    }
    for size in 3..=max_vertices {
        for &(n, edges, a, b) in FIXTURES.iter().filter(|fx| fx.0 == size) {
            let f = Graph::from_edges(n, edges.iter().copied())?;
            if verify_sequential(h, &f, a, b) {
                return found(f, a, b);
            }
        }
        let graphs = connected_graphs(size);
        let pairs: Vec<(usize, usize)> = (0..size)
            .flat_map(|a| (a + 1..size).map(move |b| (a, b)))
            .collect();
        let hit = par::find_first_range(0..graphs.len() * pairs.len(), |idx| {
            let f = &graphs[idx / pairs.len()];
            let (a, b) = pairs[idx % pairs.len()];
            verify_sequential(h, f, a, b).then_some((idx / pairs.len(), a, b))
        });
        if let Some((gi, a, b)) = hit {
            return found(graphs[gi].clone(), a, b);
        }
    }
    Ok(GadgetSearch::NotFound { searched_up_to: max_vertices })
}

/// All connected graphs on `n` vertices up to isomorphism, in a fixed
/// canonical order. Supports `n <= 10`.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 10, "graph enumeration supports at most 10 vertices");
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    level.insert(0, vec![0]);
    for size in 2..=n {
        let mut next = BTreeMap::new();
        for adj in level.values() {
            for mask in 0u32..1 << (size - 1) {
                let mut ext = adj.clone();
                for (v, row) in ext.iter_mut().enumerate() {
                    if mask >> v & 1 == 1 {
                        *row |= 1 << (size - 1);
                    }
                }
                ext.push(mask);
                let (code, canon) = canonical(&ext);
                next.entry(code).or_insert(canon);
            }
        }
        level = next;
    }
    level
        .into_values()
        .filter(|adj| is_connected(adj))
        .map(|adj| {
            let edges = (0..n).flat_map(|u| {
                let row = adj[u];
                (u + 1..n).filter(move |&v| row >> v & 1 == 1).map(move |v| (u, v))
            });
            Graph::from_edges(n, edges).expect("enumerated edges are valid")
        })
        .collect()
}

fn is_connected(adj: &[u32]) -> bool {
    let full = (1u32 << adj.len()) - 1;
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == full
}

fn encode(adj: &[u32], order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | u64::from(adj[order[i]] >> order[j] & 1);
        }
    }
    code
}

/// Minimum code over all orderings compatible with a color refinement, which
/// is an isomorphism invariant.
fn canonical(adj: &[u32]) -> (u64, Vec<u32>) {
    let n = adj.len();
    let mut color = vec![0usize; n];
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> =
                    (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let refined: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        let stable = distinct.len() == color.iter().collect::<std::collections::BTreeSet<_>>().len();
        color = refined;
        if stable {
            break;
        }
    }
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by_color: Vec<usize> = (0..n).collect();
    by_color.sort_by_key(|&v| color[v]);
    for v in by_color {
        match cells.last_mut() {
            Some(cell) if color[cell[0]] == color[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut order = Vec::with_capacity(n);
    permute_cells(&cells, 0, &mut order, &mut |order| {
        let code = encode(adj, order);
        if best.as_ref().is_none_or(|(c, _)| code < *c) {
            best = Some((code, order.to_vec()));
        }
    });
    let (code, order) = best.expect("at least one ordering");
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut canon = vec![0u32; n];
    for (i, &v) in order.iter().enumerate() {
        for (w, &p) in pos.iter().enumerate() {
            if adj[v] >> w & 1 == 1 {
                canon[i] |= 1 << p;
            }
        }
    }
    (code, canon)
}

fn permute_cells(cells: &[Vec<usize>], ci: usize, order: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if ci == cells.len() {
        visit(order);
        return;
    }
    let mut cell = cells[ci].clone();
    heap_permutations(&mut cell, cells[ci].len(), &mut |perm| {
        let base = order.len();
        order.extend_from_slice(perm);
        permute_cells(cells, ci + 1, order, visit);
        order.truncate(base);
    });
}

fn heap_permutations(items: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(items, k - 1, visit);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
    heap_permutations(items, k - 1, visit);
}
