use super::{check_faithful, RepKind, Representation};
use crate::ffalg::{field_extension_above_with, Fe};
use crate::{Ceilings, Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn normalize_first_entry(rep: &Representation, seed: u64) -> Result<Representation> {
    normalize_first_entry_with(rep, seed, &Ceilings::default())
}

/// Moves an independent representation into an extension `K` with
/// `|K| > |V|` and applies an invertible map so that every vector starts
/// with 1. A faithful orthogonal representation is accepted as the faithful
/// independent representation it also is.
///
/// The map has first row `y` with `<y, x_v> != 0` for all `v`. `y = e_1` is
/// tried first; after that `y` is drawn uniformly from `K^d`.
pub fn normalize_first_entry_with(
    rep: &Representation,
    seed: u64,
    ceilings: &Ceilings,
) -> Result<Representation> {
    let rep = &rep.clone().with_kind(RepKind::Independent);
    if rep.dim() == 0 {
        return Err(Error::invalid("normalization needs dimension at least 1"));
    }
    if let Err(v) = check_faithful(rep) {
        return Err(Error::invalid(format!("input representation is not faithful: {v}")));
    }
    let n = rep.graph().n();
    let emb = field_extension_above_with(rep.field(), n as u64, ceilings)?;
    let k = emb.ext.clone();
    let d = rep.dim();
    let xs: Vec<Vec<Fe>> = rep
        .vectors()
        .iter()
        .map(|x| x.iter().map(|&e| emb.map(e)).collect())
        .collect();

    let valid = |y: &[Fe]| xs.iter().all(|x| !k.dot(y, x).is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y: Vec<Fe> = (0..d).map(|i| if i == 0 { Fe::ONE } else { Fe::ZERO }).collect();
    let mut attempts = 0;
    while !valid(&y) {
        if attempts == ceilings.retry_cap {
            return Err(Error::RetryExhausted {
                task: "first-entry normalization",
                seed,
                cap: ceilings.retry_cap,
            });
        }
        attempts += 1;
        y = (0..d).map(|_| k.random(&mut rng)).collect();
    }

    // Rows of A: y, then e_i for every i except the first nonzero index of y.
    let j = y.iter().position(|e| !e.is_zero()).unwrap();
    let vectors = xs
        .iter()
        .map(|x| {
            let lead = k.dot(&y, x);
            let inv = k.inv(lead).unwrap();
            std::iter::once(Fe::ONE)
                .chain((0..d).filter(|&i| i != j).map(|i| k.mul(x[i], inv)))
                .collect()
        })
        .collect();
    let out = Representation::new(rep.graph().clone(), k, d, RepKind::Independent, vectors)?;
    if let Err(v) = check_faithful(&out) {
        return Err(Error::Invariant(format!("normalized representation lost faithfulness: {v}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::{field_make, Fe};
    use crate::graph::{make_complete, make_cycle, make_path};
    use crate::repr::vandermonde_rep;

    #[test]
    fn small_field_moves_to_extension() {
        let gf2 = field_make(2, 1).unwrap();
        let p3 = make_path(3);
        let vs = vec![vec![Fe(0), Fe(1)], vec![Fe(1), Fe(0)], vec![Fe(0), Fe(1)]];
        let r = Representation::new(p3, gf2, 2, RepKind::Independent, vs).unwrap();
        assert!(r.is_faithful());
        let out = normalize_first_entry(&r, 1).unwrap();
        assert_eq!(out.field().order(), 4);
        assert!(out.has_unit_first_entries());
        assert!(out.is_faithful());
    }

    #[test]
    fn identity_when_already_normal() {
        let gf7 = field_make(7, 1).unwrap();
        let r = vandermonde_rep(&make_cycle(5).unwrap(), &gf7).unwrap();
        let out = normalize_first_entry(&r, 3).unwrap();
        assert_eq!(out, r);
    }

    #[test]
    fn rejects_unfaithful_and_reports_exhaustion() {
        let gf3 = field_make(3, 1).unwrap();
        let bad = Representation::new(
            make_complete(2),
            gf3.clone(),
            2,
            RepKind::Independent,
            vec![vec![Fe(1), Fe(0)], vec![Fe(1), Fe(0)]],
        )
        .unwrap();
        assert!(normalize_first_entry(&bad, 0).is_err());
        let r = Representation::new(
            make_complete(2),
            gf3,
            2,
            RepKind::Independent,
            vec![vec![Fe(0), Fe(1)], vec![Fe(1), Fe(0)]],
        )
        .unwrap();
        let none = Ceilings {
            retry_cap: 0,
            ..Ceilings::default()
        };
        match normalize_first_entry_with(&r, 9, &none) {
            Err(Error::RetryExhausted { seed: 9, cap: 0, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(normalize_first_entry(&r, 9).unwrap().has_unit_first_entries());
    }
}
