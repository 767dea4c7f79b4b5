//! Faithful `(m - 2r + 2)`-dimensional independent representation of `K(m, r)`.
//!
//! Each `r`-subset `A` gets the kernel vector `x_A` of an `(r-1) x m`
//! Vandermonde matrix restricted to the columns in `A`, so `x_A` is supported
//! exactly on `A`. A random linear map to `F^(m-2r+2)` is then accepted only
//! after checking that it keeps the dimension of every span `U_B` of the
//! neighbours of `B`, and of `U_B + <x_A>` for every non-neighbour `A`.

use super::{check_faithful, RepKind, Representation};
use crate::ffalg::{Echelon, Fe, Field, Matrix};
use crate::graph::{kneser_subsets, make_kneser};
use crate::{Ceilings, Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Smallest admissible field order is one above this value: `(m - t)(s + 1)`
/// with `t = m - 2r + 2` and `s` the number of subspaces whose dimension must
/// survive the projection (one per vertex plus one per ordered non-adjacent
/// pair, the pair `(A, A)` included).
pub fn kneser_field_threshold(m: usize, r: usize) -> u64 {
    let (m64, r64) = (m as u64, r as u64);
    let t = m64 + 2 - 2 * r64;
    let vertices = binomial(m64, r64);
    let degree = binomial(m64 - r64, r64);
    let subspaces = vertices + vertices * (vertices - degree);
    (m64 - t) * (subspaces + 1)
}

/// The smallest prime field above [`kneser_field_threshold`].
pub fn kneser_field(m: usize, r: usize) -> Result<Field> {
    let threshold = kneser_field_threshold(m, r).max(m as u64 - 1);
    let p = (threshold + 1..)
        .find(|&p| crate::ffalg::field_is_prime(p))
        .unwrap();
    if p > u32::MAX as u64 {
        return Err(Error::ceiling("Kneser field order", p as usize, u32::MAX as usize));
    }
    Field::prime(p as u32)
}

/// Intermediate objects of the construction, kept for inspection.
#[derive(Clone, Debug)]
pub struct KneserConstruction {
    pub rep: Representation,
    /// `x_A` in `F^m`, before projection.
    pub raw: Vec<Vec<Fe>>,
    /// `dim U_B` for every vertex `B`, before projection.
    pub neighbor_span_dims: Vec<usize>,
    /// Projections drawn before one passed verification.
    pub attempts: usize,
}

pub fn kneser_rep(m: usize, r: usize, field: &Field, seed: u64) -> Result<Representation> {
    kneser_construction(m, r, field, seed, &Ceilings::default()).map(|c| c.rep)
}

pub fn kneser_construction(
    m: usize,
    r: usize,
    field: &Field,
    seed: u64,
    ceilings: &Ceilings,
) -> Result<KneserConstruction> {
    let g = make_kneser(m, r)?;
    let threshold = kneser_field_threshold(m, r);
    if (field.order() as u64) <= threshold {
        return Err(Error::Field(format!(
            "K({m},{r}) needs a field of order above {threshold}, got {}",
            field.order()
        )));
    }
    let sets = kneser_subsets(m, r);
    let n = sets.len();
    let t = m - 2 * r + 2;

    let vandermonde: Vec<Vec<Fe>> = (0..r - 1)
        .map(|i| (0..m).map(|j| field.pow(Fe(j as u32), i as u64)).collect())
        .collect();
    let raw: Vec<Vec<Fe>> = sets
        .iter()
        .map(|a| {
            let mut x = vec![Fe::ZERO; m];
            if r == 1 {
                x[a[0]] = Fe::ONE;
                return Ok(x);
            }
            let sub: Vec<Vec<Fe>> = vandermonde
                .iter()
                .map(|row| a.iter().map(|&j| row[j]).collect())
                .collect();
            let ns = Matrix::from_rows(field, &sub)?.nullspace();
            let [kernel] = &ns[..] else {
                return Err(Error::Invariant(format!(
                    "restricted Vandermonde matrix has nullity {}",
                    ns.len()
                )));
            };
            let inv = field.inv(kernel[0]).ok_or_else(|| {
                Error::Invariant("kernel vector has a zero entry".into())
            })?;
            for (&j, &e) in a.iter().zip(kernel) {
                x[j] = field.mul(e, inv);
            }
            Ok(x)
        })
        .collect::<Result<_>>()?;
    if raw.iter().zip(&sets).any(|(x, a)| {
        (0..m).any(|j| x[j].is_zero() == a.contains(&j))
    }) {
        return Err(Error::Invariant("kernel vector support differs from its subset".into()));
    }

    let neighbor_span_dims: Vec<usize> = (0..n)
        .map(|b| {
            Echelon::from_vectors(field, m, g.neighbors(b).iter().map(|c| raw[c].as_slice())).rank()
        })
        .collect();
    if let Some(b) = neighbor_span_dims.iter().position(|&dim| dim + 2 * r > m + 1) {
        return Err(Error::Invariant(format!(
            "neighbour span of vertex {b} has dimension {} > m - 2r + 1",
            neighbor_span_dims[b]
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=ceilings.retry_cap {
        let phi: Vec<Vec<Fe>> = (0..t)
            .map(|_| (0..m).map(|_| field.random(&mut rng)).collect())
            .collect();
        let phi = Matrix::from_rows(field, &phi)?;
        let projected: Vec<Vec<Fe>> = raw.iter().map(|x| phi.mul_vec(x)).collect();
        let preserves = crate::par::all_range(0..n, |b| {
            let span = Echelon::from_vectors(
                field,
                t,
                g.neighbors(b).iter().map(|c| projected[c].as_slice()),
            );
            span.rank() == neighbor_span_dims[b]
                && (0..n)
                    .filter(|&a| !g.has_edge(a, b))
                    .all(|a| !span.contains(&projected[a]))
        });
        if !preserves {
            continue;
        }
        let rep = Representation::new(g.clone(), field.clone(), t, RepKind::Independent, projected)?;
        if let Err(v) = check_faithful(&rep) {
            return Err(Error::Invariant(format!("verified projection is not faithful: {v}")));
        }
        return Ok(KneserConstruction {
            rep,
            raw,
            neighbor_span_dims,
            attempts: attempt,
        });
    }
    Err(Error::RetryExhausted {
        task: "Kneser projection",
        seed,
        cap: ceilings.retry_cap,
    })
}
