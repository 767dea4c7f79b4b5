use crate::{Ceilings, Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;

/// CNF formula over variables `1..=n_vars`; literal `-i` is the negation of
/// variable `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub n_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(n_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::invalid(format!("clause {i} is empty")));
            }
            if let Some(&l) = c.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > n_vars) {
                return Err(Error::invalid(format!(
                    "literal {l} in clause {i} is outside 1..={n_vars}"
                )));
            }
        }
        Ok(CnfFormula { n_vars, clauses })
    }

    /// The common clause length, if all clauses have the same length.
    pub fn uniform_width(&self) -> Option<usize> {
        let w = self.clauses.first().map_or(0, Vec::len);
        self.clauses.iter().all(|c| c.len() == w).then_some(w)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.n_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }

    /// Whether every clause has both a true and a false literal under
    /// `assignment` (bit `i - 1` is variable `i`).
    pub fn nae_satisfied_by(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| {
            let value = |l: i32| (assignment >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0);
            c.iter().any(|&l| value(l)) && c.iter().any(|&l| !value(l))
        })
    }
}

/// DIMACS CNF: `c` comment lines, a `p cnf n m` header, then clauses as
/// signed integers terminated by `0` (possibly spanning lines).
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut cur = Vec::new();
    let mut last = 0;
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        last = ln;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if header.is_some() || parts.len() != 4 || parts[1] != "cnf" {
                return Err(perr(ln, "expected a single `p cnf <vars> <clauses>` header".into()));
            }
            let n = parts[2].parse().map_err(|_| perr(ln, "bad variable count".into()))?;
            let m = parts[3].parse().map_err(|_| perr(ln, "bad clause count".into()))?;
            header = Some((n, m));
            continue;
        }
        if header.is_none() {
            return Err(perr(ln, "clause before the `p cnf` header".into()));
        }
        for tok in line.split_whitespace() {
            let l: i32 = tok
                .parse()
                .map_err(|_| perr(ln, format!("bad literal `{tok}`")))?;
            if l == 0 {
                clauses.push(std::mem::take(&mut cur));
            } else {
                cur.push(l);
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(perr(last.max(1), "missing `p cnf` header".into()));
    };
    if !cur.is_empty() {
        return Err(perr(last, "last clause is not terminated by 0".into()));
    }
    if clauses.len() != m {
        return Err(perr(last, format!("header declares {m} clauses, found {}", clauses.len())));
    }
    CnfFormula::new(n, clauses).map_err(|e| perr(last, e.to_string()))
}

pub fn nae_sat_brute(f: &CnfFormula) -> Result<bool> {
    nae_sat_brute_with(f, &Ceilings::default())
}

/// Exhaustive search over all `2^n` assignments.
pub fn nae_sat_brute_with(f: &CnfFormula, ceilings: &Ceilings) -> Result<bool> {
    if f.n_vars > ceilings.nae_vars.min(63) {
        return Err(Error::ceiling("NAE-SAT variables", f.n_vars, ceilings.nae_vars.min(63)));
    }
    Ok((0..1u64 << f.n_vars).any(|a| f.nae_satisfied_by(a)))
}

/// `clauses` clauses of `width` literals, each on a uniform variable with a
/// uniform sign.
pub fn random_formula(n_vars: usize, clauses: usize, width: usize, seed: u64) -> CnfFormula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..clauses)
        .map(|_| {
            (0..width)
                .map(|_| {
                    let v = rng.gen_range(1..=n_vars as i32);
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    CnfFormula { n_vars, clauses }
}
