use crate::{Ceilings, Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest extension-field order for which log/antilog tables are built.
const TABLE_LIMIT: u64 = 1 << 20;

/// A field element, encoded as `sum c_i p^i` over its coefficients `c_i` in
/// the polynomial basis `1, x, ..., x^(m-1)`. In a prime field this is just
/// the residue.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Serializable description of `GF(p^m)`. The irreducible polynomial is
/// listed from the constant term up and is monic of degree `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub irreducible: Vec<u32>,
}

struct Inner {
    spec: FieldSpec,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Arithmetic context for `GF(p^m)`. Cheap to clone.
#[derive(Clone, Serialize, Deserialize)]
#[serde(into = "FieldSpec", try_from = "FieldSpec")]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p(), self.m())
    }
}

impl From<Field> for FieldSpec {
    fn from(f: Field) -> Self {
        f.0.spec.clone()
    }
}

impl TryFrom<FieldSpec> for Field {
    type Error = Error;

    fn try_from(spec: FieldSpec) -> Result<Self> {
        Field::from_spec(spec, &Ceilings::default())
    }
}

fn is_prime(p: u32) -> bool {
    field_is_prime(p as u64)
}

/// Trial-division primality test.
pub fn field_is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic `b` over `GF(p)`; coefficients low to high.
fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    while a.len() > db {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let shift = a.len() - db;
            for (i, &c) in b[..db].iter().enumerate() {
                a[shift + i] = (a[shift + i] + (p - lead) * c) % p;
            }
        }
    }
    a
}

/// Monic polynomial of degree `deg` with the lower coefficients given by the
/// base-`p` digits of `code`.
fn monic_from_code(code: u64, deg: usize, p: u64) -> Vec<u64> {
    let mut c = code;
    let mut out = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        out.push(c % p);
        c /= p;
    }
    out.push(1);
    out
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    for deg in 1..=m / 2 {
        let count = p.pow(deg as u32);
        for code in 0..count {
            let g = monic_from_code(code, deg, p);
            if poly_rem(f.to_vec(), &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// `GF(p^m)` with the first monic irreducible polynomial of degree `m`, where
/// monic polynomials are ordered by their coefficient vectors read from the
/// highest non-leading degree down to the constant term.
pub fn field_make(p: u32, m: u32) -> Result<Field> {
    Field::new(p, m, &Ceilings::default())
}

impl Field {
    pub fn new(p: u32, m: u32, ceilings: &Ceilings) -> Result<Field> {
        Self::check_params(p, m, ceilings)?;
        let pp = p as u64;
        let count = pp.pow(m);
        let irreducible = (0..count)
            .map(|code| monic_from_code(code, m as usize, pp))
            .find(|f| is_irreducible(f, pp))
            .expect("an irreducible polynomial of every degree exists");
        Self::build(FieldSpec {
            p,
            m,
            irreducible: irreducible.into_iter().map(|c| c as u32).collect(),
        })
    }

    pub fn prime(p: u32) -> Result<Field> {
        field_make(p, 1)
    }

    pub fn from_spec(spec: FieldSpec, ceilings: &Ceilings) -> Result<Field> {
        Self::check_params(spec.p, spec.m, ceilings)?;
        let f: Vec<u64> = spec.irreducible.iter().map(|&c| c as u64).collect();
        if f.len() != spec.m as usize + 1
            || f.last() != Some(&1)
            || f.iter().any(|&c| c >= spec.p as u64)
            || !is_irreducible(&f, spec.p as u64)
        {
            return Err(Error::Field(format!(
                "{:?} is not a monic irreducible of degree {} over GF({})",
                spec.irreducible, spec.m, spec.p
            )));
        }
        Self::build(spec)
    }

    fn check_params(p: u32, m: u32, ceilings: &Ceilings) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::Field("extension degree must be at least 1".into()));
        }
        if m > ceilings.field_degree {
            return Err(Error::ceiling(
                "field extension degree",
                m as usize,
                ceilings.field_degree as usize,
            ));
        }
        if m > 1 {
            let order = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
            if order > TABLE_LIMIT {
                return Err(Error::ceiling(
                    "extension field order",
                    order.min(usize::MAX as u64) as usize,
                    TABLE_LIMIT as usize,
                ));
            }
        }
        Ok(())
    }

    fn build(spec: FieldSpec) -> Result<Field> {
        let order = (spec.p as u64).pow(spec.m) as u32;
        let mut inner = Inner {
            spec,
            order,
            exp: Vec::new(),
            log: Vec::new(),
        };
        if inner.spec.m > 1 {
            let (exp, log) = build_tables(&inner);
            inner.exp = exp;
            inner.log = log;
        }
        Ok(Field(Arc::new(inner)))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.spec.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.0.spec.m
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn is_prime_field(&self) -> bool {
        self.m() == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order()).map(Fe)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.order()))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, x: i64) -> Fe {
        Fe(x.rem_euclid(self.p() as i64) as u32)
    }

    /// Coefficients `c_0..c_(m-1)` in the polynomial basis.
    pub fn digits(&self, a: Fe) -> Vec<u32> {
        let p = self.p();
        let mut x = a.0;
        (0..self.m())
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Fe> {
        if digits.len() != self.m() as usize || digits.iter().any(|&d| d >= self.p()) {
            return Err(Error::Field(format!(
                "{digits:?} is not an element of {self:?}"
            )));
        }
        Ok(Fe(digits
            .iter()
            .rev()
            .fold(0u32, |acc, &d| acc * self.p() + d)))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p();
        if self.m() == 1 {
            let s = a.0 as u64 + b.0 as u64;
            return Fe((s % p as u64) as u32);
        }
        if p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Fe(out)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.p();
        if self.m() == 1 {
            return Fe(if a.0 == 0 { 0 } else { p - a.0 });
        }
        if p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        Fe(out)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        if self.m() == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % self.p() as u64) as u32);
        }
        let i = &self.0;
        Fe(i.exp[(i.log[a.0 as usize] + i.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return None;
        }
        if self.m() == 1 {
            return Some(self.pow(a, self.p() as u64 - 2));
        }
        let i = &self.0;
        let l = i.log[a.0 as usize];
        Some(Fe(i.exp[((i.order - 1 - l) % (i.order - 1)) as usize]))
    }

    /// Panics when `b` is zero.
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn sum<I: IntoIterator<Item = Fe>>(&self, items: I) -> Fe {
        items.into_iter().fold(Fe::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn dot(&self, a: &[Fe], b: &[Fe]) -> Fe {
        a.iter()
            .zip(b)
            .fold(Fe::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Human-readable element: the residue in a prime field, otherwise the
    /// polynomial in `x`.
    pub fn format(&self, a: Fe) -> String {
        if self.m() == 1 {
            return a.0.to_string();
        }
        let terms: Vec<String> = self
            .digits(a)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| match (i, d) {
                (0, _) => d.to_string(),
                (1, 1) => "x".into(),
                (1, _) => format!("{d}x"),
                (_, 1) => format!("x^{i}"),
                _ => format!("{d}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// Product of two encoded elements by schoolbook multiplication modulo the
/// irreducible. Only used while building tables.
fn slow_mul(inner: &Inner, a: u32, b: u32) -> u32 {
    let p = inner.spec.p as u64;
    let m = inner.spec.m as usize;
    let digits = |mut x: u32| -> Vec<u64> {
        (0..m)
            .map(|_| {
                let d = x as u64 % p;
                x /= p as u32;
                d
            })
            .collect()
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let f: Vec<u64> = inner.spec.irreducible.iter().map(|&c| c as u64).collect();
    let r = poly_rem(prod, &f, p);
    r.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32
}

fn build_tables(inner: &Inner) -> (Vec<u32>, Vec<u32>) {
    let q = inner.order;
    for g in 2..q {
        let mut exp = Vec::with_capacity(2 * (q as usize - 1));
        let mut x = 1u32;
        let mut primitive = true;
        for k in 0..q - 1 {
            if k > 0 && x == 1 {
                primitive = false;
                break;
            }
            exp.push(x);
            x = slow_mul(inner, x, g);
        }
        if !primitive || x != 1 {
            continue;
        }
        let mut log = vec![0u32; q as usize];
        for (k, &v) in exp.iter().enumerate() {
            log[v as usize] = k as u32;
        }
        let again = exp.clone();
        exp.extend(again);
        return (exp, log);
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

/// Embedding of a field into an extension of it.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub base: Field,
    pub ext: Field,
    table: Arc<Vec<Fe>>,
}

impl Embedding {
    #[inline]
    pub fn map(&self, a: Fe) -> Fe {
        self.table[a.0 as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.base == self.ext
    }
}

type EmbeddingCache = Mutex<HashMap<(FieldSpec, FieldSpec), Arc<Vec<Fe>>>>;

fn embedding_cache() -> &'static EmbeddingCache {
    static CACHE: OnceLock<EmbeddingCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The smallest `GF(p^(m l))` of order above `threshold`, with the embedding
/// of `base` into it.
pub fn field_extension_above(base: &Field, threshold: u64) -> Result<Embedding> {
    field_extension_above_with(base, threshold, &Ceilings::default())
}

pub fn field_extension_above_with(
    base: &Field,
    threshold: u64,
    ceilings: &Ceilings,
) -> Result<Embedding> {
    if threshold == 0 {
        return Err(Error::invalid("extension threshold must be at least 1"));
    }
    let mut l = 1u32;
    while (base.order() as u64)
        .checked_pow(l)
        .is_some_and(|o| o <= threshold)
    {
        l += 1;
    }
    if l == 1 {
        return Ok(Embedding {
            base: base.clone(),
            ext: base.clone(),
            table: Arc::new(base.elements().collect()),
        });
    }
    let ext = Field::new(base.p(), base.m() * l, ceilings)?;
    let key = (base.spec().clone(), ext.spec().clone());
    if let Some(t) = embedding_cache().lock().unwrap().get(&key) {
        return Ok(Embedding {
            base: base.clone(),
            ext,
            table: t.clone(),
        });
    }
    let table = Arc::new(compute_embedding(base, &ext));
    embedding_cache()
        .lock()
        .unwrap()
        .insert(key, table.clone());
    Ok(Embedding {
        base: base.clone(),
        ext,
        table,
    })
}

/// Sends the generator `x` of `base` to the smallest root of its minimal
/// polynomial in `ext`, extended additively over the polynomial basis.
fn compute_embedding(base: &Field, ext: &Field) -> Vec<Fe> {
    let f: Vec<Fe> = base.spec().irreducible.iter().map(|&c| Fe(c)).collect();
    let eval = |x: Fe| {
        f.iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| ext.add(ext.mul(acc, x), c))
    };
    let beta = ext
        .elements()
        .find(|&x| eval(x).is_zero())
        .expect("the base irreducible splits in the extension");
    let powers: Vec<Fe> = (0..base.m()).map(|i| ext.pow(beta, i as u64)).collect();
    base.elements()
        .map(|a| {
            let d = base.digits(a);
            ext.sum(d.iter().zip(&powers).map(|(&c, &b)| ext.mul(Fe(c), b)))
        })
        .collect()
}
