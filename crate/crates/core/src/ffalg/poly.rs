use super::{Fe, Field};
use crate::{Error, Result};
use std::collections::{BTreeMap, HashMap};

/// A multilinear monomial `prod y_v[c]`: sorted `(vertex, coordinate)` pairs
/// with distinct vertices and distinct coordinates. Coordinates are 0-based;
/// coordinate 0 is the constant first entry and never occurs.
pub type MonomialKey = Vec<(usize, usize)>;

/// Polynomial as a sparse map from monomials to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    field: Field,
    terms: BTreeMap<MonomialKey, Fe>,
}

impl SparsePoly {
    pub fn zero(field: &Field) -> Self {
        SparsePoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<MonomialKey, Fe> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of the terms, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Vec::len)
    }

    pub fn add_term(&mut self, key: MonomialKey, c: Fe) {
        if c.is_zero() {
            return;
        }
        let f = self.field.clone();
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(*e.get(), c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&mut self, c: Fe, other: &SparsePoly) {
        for (k, &v) in &other.terms {
            self.add_term(k.clone(), self.field.mul(c, v));
        }
    }

    pub fn scale(&self, c: Fe) -> SparsePoly {
        let mut out = SparsePoly::zero(&self.field);
        out.add_scaled(c, self);
        out
    }

    /// Value at `y_v[c] = value(v, c)`.
    pub fn evaluate(&self, value: impl Fn(usize, usize) -> Fe) -> Fe {
        let f = &self.field;
        f.sum(self.terms.iter().map(|(k, &c)| {
            k.iter().fold(c, |acc, &(v, i)| f.mul(acc, value(v, i)))
        }))
    }
}

/// Permutations of `0..d` with their parities, in lexicographic order.
fn permutations(d: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, bool)>) {
        let d = used.len();
        if prefix.len() == d {
            let inversions = (0..d)
                .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
                .filter(|&(i, j)| prefix[i] > prefix[j])
                .count();
            out.push((prefix.clone(), inversions % 2 == 1));
            return;
        }
        for x in 0..d {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

/// Symbolic determinant of the `d x d` matrix whose column `j` is
/// `(1, y_{s_j}[1], ..., y_{s_j}[d-1])`.
pub fn det_poly(s: &[usize], field: &Field) -> Result<SparsePoly> {
    let d = s.len();
    if d == 0 {
        return Err(Error::invalid("det_poly needs at least one vertex"));
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid(format!("det_poly: repeated vertex in {s:?}")));
    }
    let minus_one = field.neg(Fe::ONE);
    let mut poly = SparsePoly::zero(field);
    for (perm, odd) in permutations(d) {
        // Row i picks column perm[i]; row 0 contributes the constant 1.
        let mut key: MonomialKey = (1..d).map(|i| (s[perm[i]], i)).collect();
        key.sort_unstable();
        poly.add_term(key, if odd { minus_one } else { Fe::ONE });
    }
    Ok(poly)
}

/// Greedy basis of the span of `polys`, in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSelection {
    pub kept: Vec<usize>,
    /// For every dropped input index, its coordinates over `kept`
    /// (aligned with `kept`).
    pub certificates: Vec<(usize, Vec<Fe>)>,
}

impl BasisSelection {
    /// Rebuilds dropped polynomial `dropped` from the kept ones.
    pub fn reconstruct(&self, polys: &[SparsePoly], coords: &[Fe]) -> SparsePoly {
        let mut acc = SparsePoly::zero(polys[0].field());
        for (&k, &c) in self.kept.iter().zip(coords) {
            acc.add_scaled(c, &polys[k]);
        }
        acc
    }
}

struct Row {
    pivot: usize,
    entries: BTreeMap<usize, Fe>,
    /// This row as a combination of kept polynomials (indices into `kept`).
    combo: Vec<Fe>,
}

/// Keeps each polynomial that is independent of those kept before it.
pub fn poly_basis_select(polys: &[SparsePoly]) -> BasisSelection {
    let Some(first) = polys.first() else {
        return BasisSelection {
            kept: Vec::new(),
            certificates: Vec::new(),
        };
    };
    let f = first.field().clone();
    let mut columns: HashMap<&MonomialKey, usize> = HashMap::new();
    let mut rows: Vec<Row> = Vec::new();
    let mut by_pivot: HashMap<usize, usize> = HashMap::new();
    let mut kept: Vec<usize> = Vec::new();
    let mut dropped: Vec<(usize, Vec<Fe>)> = Vec::new();

    for (idx, poly) in polys.iter().enumerate() {
        debug_assert_eq!(poly.field(), &f);
        let mut v: BTreeMap<usize, Fe> = BTreeMap::new();
        for (key, &c) in poly.terms() {
            let next = columns.len();
            let col = *columns.entry(key).or_insert(next);
            v.insert(col, c);
        }
        // v = poly - sum(a_r * row_r); `used` accumulates sum(a_r * combo_r).
        let mut used = vec![Fe::ZERO; kept.len()];
        let mut cursor = 0usize;
        while let Some((&col, &c)) = v.range(cursor..).next() {
            let Some(&r) = by_pivot.get(&col) else {
                cursor = col + 1;
                continue;
            };
            let row = &rows[r];
            for (&j, &x) in &row.entries {
                let cur = v.get(&j).copied().unwrap_or(Fe::ZERO);
                let nv = f.sub(cur, f.mul(c, x));
                if nv.is_zero() {
                    v.remove(&j);
                } else {
                    v.insert(j, nv);
                }
            }
            for (u, &x) in used.iter_mut().zip(&row.combo) {
                *u = f.add(*u, f.mul(c, x));
            }
        }
        if v.is_empty() {
            dropped.push((idx, used));
            continue;
        }
        let (&pivot, &lead) = v.iter().next().unwrap();
        let inv = f.inv(lead).unwrap();
        let entries = v.into_iter().map(|(j, x)| (j, f.mul(x, inv))).collect();
        let mut combo: Vec<Fe> = used.iter().map(|&u| f.neg(f.mul(u, inv))).collect();
        combo.push(inv);
        for r in rows.iter_mut() {
            r.combo.push(Fe::ZERO);
        }
        by_pivot.insert(pivot, rows.len());
        rows.push(Row {
            pivot,
            entries,
            combo,
        });
        kept.push(idx);
    }
    debug_assert!(rows.iter().all(|r| by_pivot[&r.pivot] < rows.len()));
    let n_kept = kept.len();
    let certificates = dropped
        .into_iter()
        .map(|(i, mut c)| {
            c.resize(n_kept, Fe::ZERO);
            (i, c)
        })
        .collect();
    BasisSelection { kept, certificates }
}

/// Rank of a family of polynomials by dense elimination; a slow reference.
#[cfg(test)]
fn poly_rank(polys: &[SparsePoly]) -> usize {
    let Some(first) = polys.first() else {
        return 0;
    };
    let keys: Vec<&MonomialKey> = {
        let mut ks: Vec<&MonomialKey> = polys.iter().flat_map(|p| p.terms().keys()).collect();
        ks.sort();
        ks.dedup();
        ks
    };
    let vecs: Vec<Vec<Fe>> = polys
        .iter()
        .map(|p| {
            keys.iter()
                .map(|k| p.terms().get(*k).copied().unwrap_or(Fe::ZERO))
                .collect()
        })
        .collect();
    super::Echelon::from_vectors(first.field(), keys.len(), vecs.iter().map(Vec::as_slice)).rank()
}
