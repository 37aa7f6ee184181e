//! Small finite rings: ℤ/n, full matrix rings over prime fields, and their
//! direct products.
//!
//! Elements are indices into the carrier, encoded mixed-radix over the
//! factors with the first factor most significant. The zero element is
//! always index 0.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type Element = usize;

/// Default cap on the carrier size accepted by [`make_ring`].
pub const DEFAULT_MAX_RING: usize = 4096;

/// Rings up to this size have their axioms checked on every triple; larger
/// ones on a fixed pseudo-random sample.
pub const EXHAUSTIVE_AXIOM_MAX: usize = 64;

const AXIOM_SAMPLES: usize = 20_000;
const TABLE_MAX: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorSpec {
    Integers { n: usize },
    Matrices { k: usize, p: usize },
}

impl FactorSpec {
    fn size(&self) -> Option<usize> {
        match *self {
            FactorSpec::Integers { n } => Some(n),
            FactorSpec::Matrices { k, p } => {
                let e = u32::try_from(k.checked_mul(k)?).ok()?;
                p.checked_pow(e)
            }
        }
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorSpec::Integers { n } => write!(f, "Z/{n}"),
            FactorSpec::Matrices { k, p } => write!(f, "M_{k}(GF({p}))"),
        }
    }
}

/// A ring description such as `Z/30`, `M_2(GF(2))` or `Z/2 x M_2(GF(3))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub factors: Vec<FactorSpec>,
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn parse_number(s: &str, whole: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidRingSpec(format!("`{whole}`: expected a number, found `{s}`")))
}

fn parse_factor(s: &str) -> Result<FactorSpec> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(n) = t.strip_prefix("Z/") {
        let n = parse_number(n, s)?;
        if n < 2 {
            return Err(Error::InvalidRingSpec(format!("`{s}`: modulus must be at least 2")));
        }
        return Ok(FactorSpec::Integers { n });
    }
    if let Some(rest) = t.strip_prefix('M') {
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        let open = rest
            .find('(')
            .ok_or_else(|| Error::InvalidRingSpec(format!("`{s}`: expected M_k(GF(p))")))?;
        let k = parse_number(&rest[..open], s)?;
        let inner = rest[open..]
            .strip_prefix("(GF")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidRingSpec(format!("`{s}`: expected M_k(GF(p))")))?;
        let inner = inner
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(inner);
        let p = parse_number(inner, s)?;
        if k == 0 {
            return Err(Error::InvalidRingSpec(format!("`{s}`: matrix size must be positive")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidRingSpec(format!("`{s}`: {p} is not prime")));
        }
        return Ok(FactorSpec::Matrices { k, p });
    }
    Err(Error::InvalidRingSpec(format!(
        "`{s}`: expected Z/n or M_k(GF(p))"
    )))
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Err(Error::InvalidRingSpec("empty spec".into()));
        }
        let factors = s
            .split(['x', '×'])
            .map(parse_factor)
            .collect::<Result<Vec<_>>>()?;
        Ok(RingSpec { factors })
    }
}

impl RingSpec {
    /// Carrier size, or `None` on overflow.
    pub fn size(&self) -> Option<usize> {
        self.factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.size()?))
    }
}

#[derive(Debug, Clone)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
}

/// A validated finite ring with identity in which every element is regular.
#[derive(Debug, Clone)]
pub struct FiniteRing {
    spec: RingSpec,
    sizes: Vec<usize>,
    size: usize,
    one: Element,
    tables: Option<Tables>,
}

impl FiniteRing {
    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    pub fn zero(&self) -> Element {
        0
    }

    pub fn one(&self) -> Element {
        self.one
    }

    fn split(&self, mut x: Element) -> Vec<usize> {
        let mut parts = vec![0; self.sizes.len()];
        for (i, &s) in self.sizes.iter().enumerate().rev() {
            parts[i] = x % s;
            x /= s;
        }
        parts
    }

    fn join(&self, parts: &[usize]) -> Element {
        parts
            .iter()
            .zip(&self.sizes)
            .fold(0, |acc, (&v, &s)| acc * s + v)
    }

    fn componentwise(
        &self,
        x: Element,
        y: Element,
        op: impl Fn(&FactorSpec, usize, usize) -> usize,
    ) -> Element {
        let (xs, ys) = (self.split(x), self.split(y));
        let parts: Vec<usize> = self
            .spec
            .factors
            .iter()
            .zip(xs.iter().zip(&ys))
            .map(|(f, (&a, &b))| op(f, a, b))
            .collect();
        self.join(&parts)
    }

    fn add_direct(&self, x: Element, y: Element) -> Element {
        self.componentwise(x, y, factor_add)
    }

    fn mul_direct(&self, x: Element, y: Element) -> Element {
        self.componentwise(x, y, factor_mul)
    }

    pub fn add(&self, x: Element, y: Element) -> Element {
        match &self.tables {
            Some(t) => t.add[x * self.size + y] as Element,
            None => self.add_direct(x, y),
        }
    }

    pub fn mul(&self, x: Element, y: Element) -> Element {
        match &self.tables {
            Some(t) => t.mul[x * self.size + y] as Element,
            None => self.mul_direct(x, y),
        }
    }

    pub fn neg(&self, x: Element) -> Element {
        self.componentwise(x, 0, |f, a, _| factor_neg(f, a))
    }

    pub fn sub(&self, x: Element, y: Element) -> Element {
        self.add(x, self.neg(y))
    }

    /// The involution: transpose on matrix factors, identity on ℤ/n.
    pub fn star(&self, x: Element) -> Element {
        self.componentwise(x, 0, |f, a, _| factor_star(f, a))
    }

    pub fn mul3(&self, x: Element, y: Element, z: Element) -> Element {
        self.mul(self.mul(x, y), z)
    }

    /// Entries of `x` when the ring is a single matrix factor, row-major.
    pub fn matrix_entries(&self, x: Element) -> Option<Vec<Vec<usize>>> {
        match self.spec.factors.as_slice() {
            [FactorSpec::Matrices { k, p }] => {
                let flat = matrix_digits(*k, *p, x);
                Some(flat.chunks(*k).map(<[usize]>::to_vec).collect())
            }
            _ => None,
        }
    }

    /// Inverse of [`FiniteRing::matrix_entries`]; entries are reduced mod p.
    pub fn from_matrix_entries(&self, rows: &[Vec<usize>]) -> Option<Element> {
        match self.spec.factors.as_slice() {
            [FactorSpec::Matrices { k, p }] => {
                if rows.len() != *k || rows.iter().any(|r| r.len() != *k) {
                    return None;
                }
                let flat: Vec<usize> = rows.iter().flatten().map(|v| v % p).collect();
                Some(matrix_index(*p, &flat))
            }
            _ => None,
        }
    }

    /// Human-readable form of an element.
    pub fn render(&self, x: Element) -> String {
        let parts: Vec<String> = self
            .spec
            .factors
            .iter()
            .zip(self.split(x))
            .map(|(f, v)| match *f {
                FactorSpec::Integers { .. } => v.to_string(),
                FactorSpec::Matrices { k, p } => {
                    let d = matrix_digits(k, p, v);
                    let rows: Vec<String> = d
                        .chunks(k)
                        .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
                        .collect();
                    format!("[{}]", rows.join("; "))
                }
            })
            .collect();
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            format!("({})", parts.join(", "))
        }
    }

    pub fn is_idempotent(&self, x: Element) -> bool {
        self.mul(x, x) == x
    }

    /// Some `x` with `a·x·a = a`, scanning in index order.
    pub fn find_one_inverse(&self, a: Element) -> Option<Element> {
        self.elements().find(|&x| self.mul3(a, x, a) == a)
    }
}

fn matrix_digits(k: usize, p: usize, mut x: usize) -> Vec<usize> {
    let mut d = vec![0; k * k];
    for slot in d.iter_mut().rev() {
        *slot = x % p;
        x /= p;
    }
    d
}

fn matrix_index(p: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &v| acc * p + v)
}

fn factor_add(f: &FactorSpec, a: usize, b: usize) -> usize {
    match *f {
        FactorSpec::Integers { n } => (a + b) % n,
        FactorSpec::Matrices { k, p } => {
            let (x, y) = (matrix_digits(k, p, a), matrix_digits(k, p, b));
            let s: Vec<usize> = x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect();
            matrix_index(p, &s)
        }
    }
}

fn factor_mul(f: &FactorSpec, a: usize, b: usize) -> usize {
    match *f {
        FactorSpec::Integers { n } => (a * b) % n,
        FactorSpec::Matrices { k, p } => {
            let (x, y) = (matrix_digits(k, p, a), matrix_digits(k, p, b));
            let mut out = vec![0; k * k];
            for i in 0..k {
                for j in 0..k {
                    out[i * k + j] = (0..k).map(|t| x[i * k + t] * y[t * k + j]).sum::<usize>() % p;
                }
            }
            matrix_index(p, &out)
        }
    }
}

fn factor_neg(f: &FactorSpec, a: usize) -> usize {
    match *f {
        FactorSpec::Integers { n } => (n - a) % n,
        FactorSpec::Matrices { k, p } => {
            let x = matrix_digits(k, p, a);
            let s: Vec<usize> = x.iter().map(|v| (p - v) % p).collect();
            matrix_index(p, &s)
        }
    }
}

fn factor_star(f: &FactorSpec, a: usize) -> usize {
    match *f {
        FactorSpec::Integers { .. } => a,
        FactorSpec::Matrices { k, p } => {
            let x = matrix_digits(k, p, a);
            let t: Vec<usize> = (0..k * k).map(|idx| x[(idx % k) * k + idx / k]).collect();
            matrix_index(p, &t)
        }
    }
}

fn factor_one(f: &FactorSpec) -> usize {
    match *f {
        FactorSpec::Integers { n } => 1 % n,
        FactorSpec::Matrices { k, p } => {
            let d: Vec<usize> = (0..k * k).map(|i| usize::from(i % (k + 1) == 0)).collect();
            matrix_index(p, &d)
        }
    }
}

/// Builds and validates a ring with the default size cap.
pub fn make_ring(spec: &RingSpec) -> Result<FiniteRing> {
    make_ring_with_limit(spec, DEFAULT_MAX_RING)
}

/// Builds a ring, rejecting carriers above `max` elements, rings that fail
/// an axiom, and rings with a non-regular element.
pub fn make_ring_with_limit(spec: &RingSpec, max: usize) -> Result<FiniteRing> {
    let name = spec.to_string();
    let size = spec.size().unwrap_or(usize::MAX);
    if size > max {
        return Err(Error::RingTooLarge {
            ring: name,
            size,
            max,
        });
    }
    let sizes: Vec<usize> = spec.factors.iter().map(|f| f.size().unwrap()).collect();
    let mut ring = FiniteRing {
        spec: spec.clone(),
        sizes,
        size,
        one: 0,
        tables: None,
    };
    let ones: Vec<usize> = spec.factors.iter().map(factor_one).collect();
    ring.one = ring.join(&ones);
    if size <= TABLE_MAX {
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                add.push(ring.add_direct(x, y) as u16);
                mul.push(ring.mul_direct(x, y) as u16);
            }
        }
        ring.tables = Some(Tables { add, mul });
    }
    check_axioms(&ring)?;
    if let Some(w) = ring.elements().find(|&a| ring.find_one_inverse(a).is_none()) {
        return Err(Error::NonRegular {
            ring: name,
            witness: ring.render(w),
        });
    }
    Ok(ring)
}

fn check_triple(r: &FiniteRing, x: Element, y: Element, z: Element) -> Option<&'static str> {
    if r.add(r.add(x, y), z) != r.add(x, r.add(y, z)) {
        return Some("additive associativity");
    }
    if r.add(x, y) != r.add(y, x) {
        return Some("additive commutativity");
    }
    if r.add(x, 0) != x || r.add(x, r.neg(x)) != 0 {
        return Some("additive identity and inverses");
    }
    if r.mul(r.mul(x, y), z) != r.mul(x, r.mul(y, z)) {
        return Some("multiplicative associativity");
    }
    if r.mul(x, r.add(y, z)) != r.add(r.mul(x, y), r.mul(x, z)) {
        return Some("left distributivity");
    }
    if r.mul(r.add(x, y), z) != r.add(r.mul(x, z), r.mul(y, z)) {
        return Some("right distributivity");
    }
    if r.mul(x, r.one) != x || r.mul(r.one, x) != x {
        return Some("multiplicative identity");
    }
    if r.star(r.star(x)) != x || r.star(r.mul(x, y)) != r.mul(r.star(y), r.star(x)) {
        return Some("involution");
    }
    None
}

fn check_axioms(r: &FiniteRing) -> Result<()> {
    let fail = |axiom| Error::AxiomViolation {
        ring: r.spec.to_string(),
        axiom,
    };
    if r.size <= EXHAUSTIVE_AXIOM_MAX {
        for x in r.elements() {
            for y in r.elements() {
                for z in r.elements() {
                    if let Some(axiom) = check_triple(r, x, y, z) {
                        return Err(fail(axiom));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..AXIOM_SAMPLES {
            let (x, y, z) = (
                rng.gen_range(0..r.size),
                rng.gen_range(0..r.size),
                rng.gen_range(0..r.size),
            );
            if let Some(axiom) = check_triple(r, x, y, z) {
                return Err(fail(axiom));
            }
        }
    }
    Ok(())
}

/// The three inverse sets of `a`, each sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSets {
    pub one_inverses: Vec<Element>,
    pub reflexive: Vec<Element>,
    pub weak: Vec<Element>,
}

/// Exhaustive scan for `{a⁽¹⁾}`, `{a⁽¹'²⁾}` and `{a⁽²⁾}`.
pub fn inverse_sets(r: &FiniteRing, a: Element) -> InverseSets {
    let one_inverses: Vec<Element> = r.elements().filter(|&x| r.mul3(a, x, a) == a).collect();
    let weak: Vec<Element> = r.elements().filter(|&x| r.mul3(x, a, x) == x).collect();
    let reflexive = one_inverses
        .iter()
        .copied()
        .filter(|x| weak.binary_search(x).is_ok())
        .collect();
    InverseSets {
        one_inverses,
        reflexive,
        weak,
    }
}
