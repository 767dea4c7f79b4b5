//! Exact homomorphism search.
//!
//! Domains are bitsets over `V(H)` kept arc consistent after every decision
//! (maintained arc consistency). The branching vertex is the unassigned one
//! minimizing domain size over degree, ties going to higher degree and then to
//! the smaller id; values are tried in ascending order. The first solution
//! reported is therefore a fixed function of the input.

use super::{Graph, Homomorphism, VertexSet};
use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicUsize, Ordering};

/// Optional per-vertex lists; vertices without an entry may map anywhere.
pub type Lists = BTreeMap<usize, VertexSet>;

const UNASSIGNED: usize = usize::MAX;
const PARALLEL_MIN_VERTICES: usize = 24;

/// Configurable homomorphism query from `source` to `target`.
#[derive(Clone, Copy)]
pub struct HomSearch<'a> {
    source: &'a Graph,
    target: &'a Graph,
    lists: Option<&'a Lists>,
    injective: bool,
}

impl<'a> HomSearch<'a> {
    pub fn new(source: &'a Graph, target: &'a Graph) -> Self {
        HomSearch {
            source,
            target,
            lists: None,
            injective: false,
        }
    }

    /// List entries outside `V(target)` are ignored.
    pub fn lists(mut self, lists: Option<&'a Lists>) -> Self {
        self.lists = lists;
        self
    }

    /// Restrict to injective maps (subgraph embeddings).
    pub fn injective(mut self, yes: bool) -> Self {
        self.injective = yes;
        self
    }

    pub fn find(&self) -> Option<Homomorphism> {
        let solver = Solver::new(self);
        let mut root = solver.root_state()?;
        let scope: Vec<usize> = (0..solver.source.n()).collect();
        let mut comps = solver.components(&mut root, &scope);
        comps.sort_by_key(|c| (c.len(), c[0]));
        for comp in &comps {
            if !crate::PARALLEL || comp.len() < PARALLEL_MIN_VERTICES {
                if !solver.solve_connected(&mut root, comp, &|| false) {
                    return None;
                }
            } else {
                root = solver.solve_branching(root, comp)?;
            }
        }
        solver.fix_singletons(&mut root);
        Some(Homomorphism { assignment: root.assigned })
    }

    /// Visits every homomorphism in search order until `visit` breaks.
    /// Returns `false` if the enumeration was cut short.
    pub fn for_each<F>(&self, mut visit: F) -> bool
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let solver = Solver::new(self);
        let Some(mut root) = solver.root_state() else {
            return true;
        };
        solver.search(&mut root, &|| false, &mut visit).is_continue()
    }

    pub fn count(&self) -> u64 {
        let mut c = 0u64;
        self.for_each(|_| {
            c += 1;
            ControlFlow::Continue(())
        });
        c
    }
}

/// Some list-respecting homomorphism `G -> H`, or `None` if none exists.
pub fn find_homomorphism(g: &Graph, h: &Graph, lists: Option<&Lists>) -> Option<Homomorphism> {
    HomSearch::new(g, h).lists(lists).find()
}

pub fn for_each_homomorphism<F>(g: &Graph, h: &Graph, visit: F) -> bool
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    HomSearch::new(g, h).for_each(visit)
}

pub fn count_homomorphisms(g: &Graph, h: &Graph) -> u64 {
    HomSearch::new(g, h).count()
}

struct Solver<'a> {
    source: &'a Graph,
    lists: Option<&'a Lists>,
    injective: bool,
    nh: usize,
    words: usize,
    target_rows: Vec<u64>,
    degree: Vec<usize>,
}

#[derive(Clone)]
struct State {
    dom: Vec<u64>,
    size: Vec<u32>,
    assigned: Vec<usize>,
    trail: Vec<(usize, u32)>,
    trail_words: Vec<u64>,
    queue: Vec<usize>,
    queued: Vec<bool>,
    support: Vec<u64>,
    seen: Vec<u64>,
    stamp: u64,
}

impl<'a> Solver<'a> {
    fn new(q: &HomSearch<'a>) -> Self {
        let nh = q.target.n();
        let words = nh.div_ceil(64).max(1);
        let mut target_rows = vec![0u64; nh * words];
        for a in 0..nh {
            let row = q.target.neighbors(a).words();
            target_rows[a * words..a * words + row.len()].copy_from_slice(row);
        }
        Solver {
            source: q.source,
            lists: q.lists,
            injective: q.injective,
            nh,
            words,
            target_rows,
            degree: (0..q.source.n()).map(|v| q.source.degree(v)).collect(),
        }
    }

    fn root_state(&self) -> Option<State> {
        let n = self.source.n();
        let w = self.words;
        let mut dom = vec![0u64; n * w];
        let mut size = vec![0u32; n];
        for v in 0..n {
            let d = &mut dom[v * w..(v + 1) * w];
            match self.lists.and_then(|l| l.get(&v)) {
                Some(list) => {
                    for a in list.iter().filter(|&a| a < self.nh) {
                        d[a / 64] |= 1 << (a % 64);
                    }
                }
                None => {
                    for a in 0..self.nh {
                        d[a / 64] |= 1 << (a % 64);
                    }
                }
            }
            size[v] = popcount(d);
            if size[v] == 0 {
                return None;
            }
        }
        let mut st = State {
            dom,
            size,
            assigned: vec![UNASSIGNED; n],
            trail: Vec::new(),
            trail_words: Vec::new(),
            queue: (0..n).rev().collect(),
            queued: vec![true; n],
            support: vec![0; w],
            seen: vec![0; n],
            stamp: 0,
        };
        if self.propagate(&mut st) {
            st.trail.clear();
            st.trail_words.clear();
            Some(st)
        } else {
            None
        }
    }

    fn domain_values(&self, st: &State, v: usize) -> Vec<usize> {
        let w = self.words;
        ones(&st.dom[v * w..(v + 1) * w]).collect()
    }

    /// Intersects `D(v)` with `mask`; `false` if it becomes empty.
    fn restrict(&self, st: &mut State, v: usize, mask: &[u64]) -> bool {
        let w = self.words;
        let d = &st.dom[v * w..(v + 1) * w];
        if d.iter().zip(mask).all(|(&x, &m)| x & !m == 0) {
            return true;
        }
        st.trail.push((v, st.size[v]));
        st.trail_words.extend_from_slice(d);
        let d = &mut st.dom[v * w..(v + 1) * w];
        for (x, &m) in d.iter_mut().zip(mask) {
            *x &= m;
        }
        st.size[v] = popcount(d);
        if st.size[v] == 0 {
            return false;
        }
        if !st.queued[v] {
            st.queued[v] = true;
            st.queue.push(v);
        }
        true
    }

    fn propagate(&self, st: &mut State) -> bool {
        let w = self.words;
        while let Some(v) = st.queue.pop() {
            st.queued[v] = false;
            let mut support = std::mem::take(&mut st.support);
            support.iter_mut().for_each(|x| *x = 0);
            for b in ones(&st.dom[v * w..(v + 1) * w]) {
                for (s, &r) in support
                    .iter_mut()
                    .zip(&self.target_rows[b * w..(b + 1) * w])
                {
                    *s |= r;
                }
            }
            let mut ok = true;
            for u in self.source.neighbors(v) {
                if !self.restrict(st, u, &support) {
                    ok = false;
                    break;
                }
            }
            st.support = support;
            if !ok {
                for &u in &st.queue {
                    st.queued[u] = false;
                }
                st.queue.clear();
                return false;
            }
        }
        true
    }

    fn assign(&self, st: &mut State, v: usize, a: usize) -> bool {
        let w = self.words;
        let mut single = vec![0u64; w];
        single[a / 64] = 1 << (a % 64);
        st.assigned[v] = a;
        if !self.restrict(st, v, &single) {
            return false;
        }
        if self.injective {
            let mut others = vec![u64::MAX; w];
            others[a / 64] &= !(1 << (a % 64));
            for u in 0..self.source.n() {
                if u != v && !self.restrict(st, u, &others) {
                    return false;
                }
            }
        }
        self.propagate(st)
    }

    fn undo(&self, st: &mut State, mark: usize) {
        let w = self.words;
        while st.trail.len() > mark {
            let (v, sz) = st.trail.pop().unwrap();
            let start = st.trail_words.len() - w;
            st.dom[v * w..(v + 1) * w].copy_from_slice(&st.trail_words[start..]);
            st.trail_words.truncate(start);
            st.size[v] = sz;
        }
        for &u in &st.queue {
            st.queued[u] = false;
        }
        st.queue.clear();
    }

    fn pick(&self, st: &State) -> Option<usize> {
        self.pick_in(st, 0..self.source.n(), false)
    }

    fn pick_in(
        &self,
        st: &State,
        scope: impl Iterator<Item = usize>,
        open_only: bool,
    ) -> Option<usize> {
        let mut best: Option<usize> = None;
        for v in scope {
            if st.assigned[v] != UNASSIGNED || (open_only && !self.is_open(st, v)) {
                continue;
            }
            best = match best {
                None => Some(v),
                Some(b) => {
                    let ratio = |x: usize, y: usize| {
                        st.size[x] as u64 * self.degree[y].max(1) as u64
                    };
                    let better = match ratio(v, b).cmp(&ratio(b, v)) {
                        std::cmp::Ordering::Equal => self.degree[v] > self.degree[b],
                        o => o.is_lt(),
                    };
                    if better {
                        Some(v)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best
    }

    fn search(
        &self,
        st: &mut State,
        stop: &dyn Fn() -> bool,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if stop() {
            return ControlFlow::Break(());
        }
        let Some(v) = self.pick(st) else {
            return visit(&st.assigned);
        };
        for a in self.domain_values(st, v) {
            let mark = st.trail.len();
            let flow = if self.assign(st, v, a) {
                self.search(st, stop, visit)
            } else {
                ControlFlow::Continue(())
            };
            self.undo(st, mark);
            st.assigned[v] = UNASSIGNED;
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Finds one extension for the unassigned vertices of `scope`, solving
    /// independent pieces one at a time, smallest first. Pieces only interact
    /// through assigned vertices, so a piece that fails is never retried
    /// against alternatives for a sibling.
    fn solve_scope(&self, st: &mut State, scope: &[usize], stop: &dyn Fn() -> bool) -> bool {
        let mut comps = self.components(st, scope);
        comps.sort_by_key(|c| (c.len(), c[0]));
        comps.iter().all(|comp| self.solve_connected(st, comp, stop))
    }

    /// Same outcome as [`Self::solve_connected`], with the values of the
    /// first branching vertex tried in parallel.
    fn solve_branching(&self, root: State, comp: &[usize]) -> Option<State> {
        let v = self.pick_in(&root, comp.iter().copied(), true)?;
        let values = self.domain_values(&root, v);
        let best = AtomicUsize::new(usize::MAX);
        let results = crate::par::map_range(0..values.len(), |i| {
            let mut state = root.clone();
            let stop = || best.load(Ordering::Relaxed) < i;
            if !self.assign(&mut state, v, values[i]) || !self.solve_scope(&mut state, comp, &stop) || stop() {
                return None;
            }
            best.fetch_min(i, Ordering::Relaxed);
            Some(state)
        });
        results.into_iter().flatten().next()
    }

    fn solve_connected(&self, st: &mut State, comp: &[usize], stop: &dyn Fn() -> bool) -> bool {
        if stop() {
            return false;
        }
        let Some(v) = self.pick_in(st, comp.iter().copied(), true) else {
            return true;
        };
        for a in self.domain_values(st, v) {
            let mark = st.trail.len();
            if self.assign(st, v, a) && self.solve_scope(st, comp, stop) {
                return true;
            }
            self.undo(st, mark);
            for &u in comp {
                st.assigned[u] = UNASSIGNED;
            }
            if stop() {
                return false;
            }
        }
        false
    }

    /// An arc-consistent singleton domain already agrees with every value left
    /// at its neighbours, so such vertices can be treated as decided.
    fn is_open(&self, st: &State, v: usize) -> bool {
        st.assigned[v] == UNASSIGNED && (self.injective || st.size[v] > 1)
    }

    fn fix_singletons(&self, st: &mut State) {
        let w = self.words;
        for v in 0..self.source.n() {
            if st.assigned[v] == UNASSIGNED {
                st.assigned[v] = ones(&st.dom[v * w..(v + 1) * w]).next().unwrap();
            }
        }
    }

    /// Connected pieces of the open vertices of `scope`, each sorted.
    fn components(&self, st: &mut State, scope: &[usize]) -> Vec<Vec<usize>> {
        st.stamp += 1;
        let stamp = st.stamp;
        let mut comps = Vec::new();
        for &s in scope {
            if !self.is_open(st, s) || st.seen[s] == stamp {
                continue;
            }
            st.seen[s] = stamp;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for w in self.source.neighbors(u) {
                    if self.is_open(st, w) && st.seen[w] != stamp {
                        st.seen[w] = stamp;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

fn popcount(d: &[u64]) -> u32 {
    d.iter().map(|x| x.count_ones()).sum()
}

fn ones(d: &[u64]) -> impl Iterator<Item = usize> + '_ {
    d.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + t)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        make_complete, make_cycle, make_kneser, make_path, make_random,
        make_random_with_density,
    };

    /// Tries all `|V_H|^|V_G|` maps.
    fn brute_force(g: &Graph, h: &Graph, lists: Option<&Lists>) -> Vec<Vec<usize>> {
        let n = g.n();
        let nh = h.n();
        let mut out = Vec::new();
        let total = (nh as u64).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut a = vec![0; n];
            for slot in a.iter_mut().rev() {
                *slot = (c % nh as u64) as usize;
                c /= nh as u64;
            }
            let ok_lists = lists.is_none_or(|l| l.iter().all(|(&v, s)| s.contains(a[v])));
            if ok_lists && g.edges().all(|(u, v)| h.has_edge(a[u], a[v])) {
                out.push(a);
            }
        }
        out
    }

    #[test]
    fn worked_examples() {
        let c5 = make_cycle(5).unwrap();
        let f = find_homomorphism(&c5, &c5, None).unwrap();
        assert!(f.is_valid(&c5, &c5));
        assert!(find_homomorphism(&make_complete(4), &make_complete(3), None).is_none());
        let p = make_kneser(5, 2).unwrap();
        let k3 = make_complete(3);
        assert!(find_homomorphism(&p, &k3, None).unwrap().is_valid(&p, &k3));
        assert!(find_homomorphism(&p, &make_complete(2), None).is_none());
    }

    #[test]
    fn counts_match_brute_force() {
        for seed in 0..30 {
            let g = make_random(5, seed);
            let h = make_random(4, seed + 1000);
            let brute = brute_force(&g, &h, None);
            assert_eq!(count_homomorphisms(&g, &h), brute.len() as u64, "seed {seed}");
            assert_eq!(find_homomorphism(&g, &h, None).is_some(), !brute.is_empty());
        }
    }

    #[test]
    fn lists_restrict_images() {
        let g = make_path(3);
        let h = make_complete(3);
        let mut lists = Lists::new();
        lists.insert(0, VertexSet::new(vec![0]));
        lists.insert(2, VertexSet::new(vec![0]));
        lists.insert(1, VertexSet::new(vec![0]));
        assert!(find_homomorphism(&g, &h, Some(&lists)).is_none());
        lists.insert(1, VertexSet::new(vec![1, 2]));
        let f = find_homomorphism(&g, &h, Some(&lists)).unwrap();
        assert_eq!(f.assignment, vec![0, 1, 0]);
        assert_eq!(brute_force(&g, &h, Some(&lists)).len(), 2);
        let mut searched = 0;
        HomSearch::new(&g, &h).lists(Some(&lists)).for_each(|_| {
            searched += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(searched, 2);
    }

    #[test]
    fn injective_counts_embeddings() {
        let k3 = make_complete(3);
        let k4 = make_complete(4);
        assert_eq!(HomSearch::new(&k3, &k4).injective(true).count(), 24);
        let p3 = make_path(3);
        assert_eq!(HomSearch::new(&p3, &k3).injective(true).count(), 6);
        assert_eq!(HomSearch::new(&p3, &k3).count(), 12);
    }

    #[test]
    fn degenerate_sizes() {
        let empty = make_complete(0);
        assert!(find_homomorphism(&empty, &empty, None).is_some());
        assert!(find_homomorphism(&make_complete(1), &empty, None).is_none());
    }

    #[test]
    fn parallel_root_matches_sequential_choice() {
        let g = make_random_with_density(30, 0.1, 7);
        let h = make_complete(3);
        let first = {
            let mut out = None;
            for_each_homomorphism(&g, &h, |a| {
                out = Some(a.to_vec());
                ControlFlow::Break(())
            });
            out
        };
        assert!(first.is_some());
        assert_eq!(find_homomorphism(&g, &h, None).map(|f| f.assignment), first);
        let big = make_cycle(41).unwrap();
        let f = find_homomorphism(&big, &make_complete(3), None).unwrap();
        assert!(f.is_valid(&big, &make_complete(3)));
        assert!(find_homomorphism(&big, &make_complete(2), None).is_none());
    }
}
