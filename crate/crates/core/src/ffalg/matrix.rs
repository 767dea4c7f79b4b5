use super::{Fe, Field};
use crate::{Error, Result};
use std::fmt;

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

#[derive(Clone, Debug)]
pub struct RowReduction {
    pub reduced: Matrix,
    pub rank: usize,
    /// Pivot columns, increasing.
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = Fe::ONE;
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Fe>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged matrix rows"));
        }
        if rows.iter().flatten().any(|x| x.0 >= field.order()) {
            return Err(Error::Field(format!("matrix entry outside {field:?}")));
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, columns: &[Vec<Fe>]) -> Result<Self> {
        Ok(Matrix::from_rows(field, columns)?.transpose())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = f.add(out[(i, j)], f.mul(a, other[(k, j)]));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Fe]) -> Vec<Fe> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| self.field.dot(self.row(i), x)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduced row echelon form.
    pub fn row_reduce(&self) -> RowReduction {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m[(r, c)]).unwrap();
            for j in c..m.cols {
                m[(r, j)] = f.mul(m[(r, j)], inv);
            }
            for i in 0..m.rows {
                let factor = m[(i, c)];
                if i == r || factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let t = f.mul(factor, m[(r, j)]);
                    m[(i, j)] = f.sub(m[(i, j)], t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        RowReduction {
            reduced: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank
    }

    /// Determinant by elimination, negating on every row swap.
    pub fn determinant(&self) -> Result<Fe> {
        if self.rows != self.cols {
            return Err(Error::invalid(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Fe::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Fe::ZERO);
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(det);
            }
            let pivot = m[(c, c)];
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).unwrap();
            for i in c + 1..n {
                let factor = f.mul(m[(i, c)], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let t = f.mul(factor, m[(c, j)]);
                    m[(i, j)] = f.sub(m[(i, j)], t);
                }
            }
        }
        Ok(det)
    }

    /// Basis of `{x : M x = 0}`, one vector per free column in increasing
    /// order, with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<Fe>> {
        let f = &self.field;
        let rr = self.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rr.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![Fe::ZERO; self.cols];
                x[fc] = Fe::ONE;
                for (r, &pc) in rr.pivots.iter().enumerate() {
                    x[pc] = f.neg(rr.reduced[(r, fc)]);
                }
                x
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Fe;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Fe {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fe {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|&x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Incrementally built echelon basis of a subspace of `F^dim`, for repeated
/// span-membership queries.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<(usize, Vec<Fe>)>,
}

impl Echelon {
    pub fn new(field: &Field, dim: usize) -> Self {
        Echelon {
            field: field.clone(),
            dim,
            rows: Vec::new(),
        }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a [Fe]>>(field: &Field, dim: usize, vs: I) -> Self {
        let mut e = Echelon::new(field, dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Fe]) -> Vec<Fe> {
        debug_assert_eq!(v.len(), self.dim);
        let f = &self.field;
        let mut w = v.to_vec();
        for (pc, row) in &self.rows {
            let c = w[*pc];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in w.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, r));
            }
        }
        w
    }

    /// Adds `v`; returns whether it was independent of the current span.
    pub fn insert(&mut self, v: &[Fe]) -> bool {
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let f = self.field.clone();
        let inv = f.inv(w[pc]).unwrap();
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[pc];
            if !c.is_zero() {
                for (x, &y) in row.iter_mut().zip(&w) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        self.rows.push((pc, w));
        true
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}
