use super::{Graph, GraphBuilder};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn make_complete(m: usize) -> Graph {
    let mut b = GraphBuilder::new(m);
    for u in 0..m {
        for v in u + 1..m {
            b.add_edge(u, v);
        }
    }
    b.build()
}

pub fn make_edgeless(n: usize) -> Graph {
    GraphBuilder::new(n).build()
}

/// Path on `n` vertices `0 - 1 - ... - (n-1)`.
pub fn make_path(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for v in 1..n {
        b.add_edge(v - 1, v);
    }
    b.build()
}

/// Cycle `0 - 1 - ... - (m-1) - 0`.
pub fn make_cycle(m: usize) -> Result<Graph> {
    if m < 3 {
        return Err(Error::invalid(format!("cycle needs m >= 3, got {m}")));
    }
    let mut b = GraphBuilder::new(m);
    for v in 0..m {
        b.add_edge(v, (v + 1) % m);
    }
    Ok(b.build())
}

/// All `r`-subsets of `0..m` in lexicographic order.
pub fn kneser_subsets(m: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    if r > m {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..r).rev().find(|&i| cur[i] < m - r + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Kneser graph `K(m, r)`: vertex `i` is the `i`-th `r`-subset of `0..m` in
/// lexicographic order, labelled like `{0,3}`; disjoint subsets are adjacent.
pub fn make_kneser(m: usize, r: usize) -> Result<Graph> {
    if r == 0 || m < 2 * r {
        return Err(Error::invalid(format!(
            "Kneser graph needs m >= 2r >= 2, got m={m}, r={r}"
        )));
    }
    if m > 64 {
        return Err(Error::ceiling("Kneser ground set", m, 64));
    }
    let sets = kneser_subsets(m, r);
    let masks: Vec<u64> = sets
        .iter()
        .map(|s| s.iter().fold(0u64, |acc, &i| acc | 1 << i))
        .collect();
    let mut b = GraphBuilder::new(sets.len());
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if masks[i] & masks[j] == 0 {
                b.add_edge(i, j);
            }
        }
        let body: Vec<String> = sets[i].iter().map(ToString::to_string).collect();
        b.set_label(i, format!("{{{}}}", body.join(",")));
    }
    Ok(b.build())
}

/// `G(n, 1/2)`, deterministic in `seed`.
pub fn make_random(n: usize, seed: u64) -> Graph {
    make_random_with_density(n, 0.5, seed)
}

/// `G(n, p)`: pairs `u < v` are visited in lexicographic order and each is
/// kept with probability `p`.
pub fn make_random_with_density(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                b.add_edge(u, v);
            }
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        let k1 = make_complete(1);
        assert_eq!((k1.n(), k1.edge_count()), (1, 0));
        assert_eq!(make_complete(5).edge_count(), 10);
        assert!(make_cycle(2).is_err());
        let c7 = make_cycle(7).unwrap();
        assert!((0..7).all(|v| c7.degree(v) == 2));
    }

    #[test]
    fn kneser_examples() {
        let p = make_kneser(5, 2).unwrap();
        assert_eq!((p.n(), p.edge_count()), (10, 15));
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert_eq!(p.label(0), Some("{0,1}"));
        let k42 = make_kneser(4, 2).unwrap();
        assert_eq!((k42.n(), k42.edge_count()), (6, 3));
        assert!((0..6).all(|v| k42.degree(v) == 1));
        assert!(make_kneser(3, 2).is_err());
        assert!(make_kneser(3, 0).is_err());
        let k73 = make_kneser(7, 3).unwrap();
        assert_eq!(k73.n(), 35);
        assert_eq!(k73.max_degree(), 4);
    }

    #[test]
    fn kneser_subset_order() {
        assert_eq!(
            kneser_subsets(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(kneser_subsets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn random_is_reproducible() {
        let a = make_random(20, 99);
        let b = make_random(20, 99);
        let c = make_random(20, 100);
        assert!(a.same_structure(&b));
        assert!(!a.same_structure(&c));
    }
}
