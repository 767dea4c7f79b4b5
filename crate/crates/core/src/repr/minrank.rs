use super::{RepKind, Representation};
use crate::ffalg::{Fe, Matrix};
use crate::{Ceilings, Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// From a faithful independent representation, a `|V| x |V|` matrix of rank
/// at most `d` whose `(u, v)` entry vanishes exactly on edges.
///
/// Column `v` is `<x_u, y_v>` for a random `y_v` orthogonal to the
/// neighbours of `v`; each `y_v` is resampled until it is nonzero on every
/// non-neighbour.
pub fn minrank_matrix(rep: &Representation, seed: u64, ceilings: &Ceilings) -> Result<Matrix> {
    if rep.kind() != RepKind::Independent {
        return Err(Error::invalid("minrank matrix expects an independent representation"));
    }
    let g = rep.graph();
    let f = rep.field();
    let n = g.n();
    if (f.order() as usize) <= n {
        return Err(Error::Field(format!("{f:?} needs more than {n} elements")));
    }
    let d = rep.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ys: Vec<Vec<Fe>> = Vec::with_capacity(n);
    for v in 0..n {
        let rows: Vec<Vec<Fe>> = g.neighbors(v).iter().map(|w| rep.vector(w).to_vec()).collect();
        let annihilator = if rows.is_empty() {
            (0..d)
                .map(|i| Matrix::identity(f, d).row(i).to_vec())
                .collect()
        } else {
            Matrix::from_rows(f, &rows)?.nullspace()
        };
        let mut found = None;
        for _ in 0..ceilings.retry_cap {
            let coeffs: Vec<Fe> = annihilator.iter().map(|_| f.random(&mut rng)).collect();
            let y: Vec<Fe> = (0..d)
                .map(|i| f.sum(annihilator.iter().zip(&coeffs).map(|(b, &c)| f.mul(b[i], c))))
                .collect();
            if (0..n).all(|u| g.has_edge(u, v) || !f.dot(rep.vector(u), &y).is_zero()) {
                found = Some(y);
                break;
            }
        }
        ys.push(found.ok_or(Error::RetryExhausted {
            task: "minrank dual vectors",
            seed,
            cap: ceilings.retry_cap,
        })?);
    }
    let x = Matrix::from_rows(f, rep.vectors())?;
    let y = Matrix::from_columns(f, &ys)?;
    x.mul(&y)
}
