//! Exhaustive claim checking over a [`FiniteRing`].
//!
//! Every order predicate here is decided from the ring's own multiplication
//! (witness search and principal ideals), never from ranks. Rings are capped
//! at 64 elements so that one-sided ideals fit in a `u64` bitmask.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::ring::{Element, FiniteRing};
use crate::error::{Error, Result};

/// Largest ring on which claims are verified.
pub const CLAIM_RING_MAX: usize = 64;

/// Implemented claim ids, in a stable order.
pub const CLAIM_IDS: &[&str] = &[
    "thm1",
    "lemma2",
    "lemma3",
    "cor4",
    "cor5",
    "prop6",
    "lemma8",
    "lemma9",
    "lemma12_13",
    "order",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Claim {
    Thm1,
    Lemma2,
    Lemma3,
    Cor4,
    Cor5,
    Prop6,
    Lemma8,
    Lemma9,
    Lemma12_13,
    Order,
}

impl Claim {
    fn parse(id: &str) -> Result<Self> {
        Ok(match id {
            "thm1" => Claim::Thm1,
            "lemma2" => Claim::Lemma2,
            "lemma3" => Claim::Lemma3,
            "cor4" => Claim::Cor4,
            "cor5" => Claim::Cor5,
            "prop6" => Claim::Prop6,
            "lemma8" => Claim::Lemma8,
            "lemma9" => Claim::Lemma9,
            "lemma12_13" => Claim::Lemma12_13,
            "order" => Claim::Order,
            _ => return Err(Error::UnknownClaim(id.to_string())),
        })
    }

    fn arity(self) -> usize {
        match self {
            Claim::Lemma9 | Claim::Lemma12_13 | Claim::Order => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Walk tuples and witness candidates from the last element down.
    pub reverse: bool,
    /// Worker threads; 0 or 1 runs on the calling thread.
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub tuple: Vec<Element>,
    pub rendered: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ClaimReport {
    pub claim_id: String,
    pub ring: String,
    /// Tuples on which the claim's hypothesis holds.
    pub universe_size: usize,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed: Duration,
}

impl ClaimReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Equality of everything except the timing.
    pub fn same_outcome(&self, other: &ClaimReport) -> bool {
        self.claim_id == other.claim_id
            && self.ring == other.ring
            && self.universe_size == other.universe_size
            && self.counterexamples == other.counterexamples
    }
}

enum Outcome {
    Skipped,
    Holds,
    Violated(String),
}

fn bit(x: Element) -> u64 {
    1u64 << x
}

fn has(mask: u64, x: Element) -> bool {
    mask & bit(x) != 0
}

fn subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

fn bits(mask: u64) -> impl Iterator<Item = Element> {
    (0..64).filter(move |&i| mask & (1u64 << i) != 0)
}

/// Precomputed principal ideals, inverse sets and the minus relation.
pub struct RingOracle<'r> {
    ring: &'r FiniteRing,
    order: Vec<Element>,
    right: Vec<u64>,
    left: Vec<u64>,
    one_inv: Vec<u64>,
    weak: Vec<u64>,
    minus: Vec<u64>,
}

impl<'r> RingOracle<'r> {
    pub fn new(ring: &'r FiniteRing, reverse: bool) -> Result<Self> {
        let n = ring.size();
        if n > CLAIM_RING_MAX {
            return Err(Error::RingTooLarge {
                ring: ring.spec().to_string(),
                size: n,
                max: CLAIM_RING_MAX,
            });
        }
        let mut order: Vec<Element> = ring.elements().collect();
        if reverse {
            order.reverse();
        }
        let mask_of = |f: &dyn Fn(Element) -> Option<Element>| -> u64 {
            ring.elements().filter_map(f).fold(0, |m, x| m | bit(x))
        };
        let right = ring
            .elements()
            .map(|a| mask_of(&|r| Some(ring.mul(a, r))))
            .collect();
        let left = ring
            .elements()
            .map(|a| mask_of(&|r| Some(ring.mul(r, a))))
            .collect();
        let one_inv: Vec<u64> = ring
            .elements()
            .map(|a| mask_of(&|x| (ring.mul3(a, x, a) == a).then_some(x)))
            .collect();
        let weak = ring
            .elements()
            .map(|a| mask_of(&|x| (ring.mul3(x, a, x) == x).then_some(x)))
            .collect();
        let mut oracle = RingOracle {
            ring,
            order,
            right,
            left,
            one_inv,
            weak,
            minus: Vec::new(),
        };
        oracle.minus = ring
            .elements()
            .map(|a| {
                ring.elements()
                    .filter(|&b| oracle.minus_witness(a, b).is_some())
                    .fold(0, |m, b| m | bit(b))
            })
            .collect();
        Ok(oracle)
    }

    pub fn ring(&self) -> &FiniteRing {
        self.ring
    }

    pub fn one_inverses(&self, a: Element) -> u64 {
        self.one_inv[a]
    }

    pub fn weak_inverses(&self, a: Element) -> u64 {
        self.weak[a]
    }

    pub fn right_ideal(&self, a: Element) -> u64 {
        self.right[a]
    }

    pub fn left_ideal(&self, a: Element) -> u64 {
        self.left[a]
    }

    /// A {1}-inverse `x` of `a` with `a·x = b·x` and `x·a = x·b`, found by
    /// search in the oracle's iteration order.
    pub fn minus_witness(&self, a: Element, b: Element) -> Option<Element> {
        let r = self.ring;
        self.order.iter().copied().find(|&x| {
            has(self.one_inv[a], x) && r.mul(a, x) == r.mul(b, x) && r.mul(x, a) == r.mul(x, b)
        })
    }

    pub fn minus_leq(&self, a: Element, b: Element) -> bool {
        has(self.minus[a], b)
    }

    /// `u ⊕ v = w` for additive subgroups given as masks.
    fn is_direct_sum(u: u64, v: u64, w: u64) -> bool {
        u & v == 1
            && subset(u, w)
            && subset(v, w)
            && u.count_ones() as u64 * v.count_ones() as u64 == w.count_ones() as u64
    }

    /// `bR = aR ⊕ (b − a)R`.
    pub fn direct_sum_leq(&self, a: Element, b: Element) -> bool {
        let d = self.ring.sub(b, a);
        Self::is_direct_sum(self.right[a], self.right[d], self.right[b])
    }

    /// `{b⁽¹⁾} ⊆ {a⁽¹⁾}`.
    pub fn inverse_containment(&self, b: Element, a: Element) -> bool {
        subset(self.one_inv[b], self.one_inv[a])
    }

    fn disjoint(&self, a: Element, c: Element) -> bool {
        self.right[a] & self.right[c] == 1 && self.left[a] & self.left[c] == 1
    }

    fn check(&self, claim: Claim, t: &[Element]) -> Outcome {
        let r = self.ring;
        let verdict = |ok: bool, what: &str| {
            if ok {
                Outcome::Holds
            } else {
                Outcome::Violated(what.to_string())
            }
        };
        match claim {
            Claim::Thm1 => {
                let (a, b) = (t[0], t[1]);
                let s = r.add(a, b);
                let c1 = Self::is_direct_sum(self.right[a], self.right[b], self.right[s]);
                let c2 = Self::is_direct_sum(self.left[a], self.left[b], self.left[s]);
                let c3 = self.disjoint(a, b);
                verdict(
                    c1 == c2 && c2 == c3,
                    &format!("conditions disagree: (1)={c1} (2)={c2} (3)={c3}"),
                )
            }
            Claim::Lemma2 => {
                let (a, x) = (t[0], t[1]);
                if !has(self.one_inv[a], x) {
                    return Outcome::Skipped;
                }
                let lcoef = r.sub(r.one(), r.mul(x, a));
                let rcoef = r.sub(r.one(), r.mul(a, x));
                let lpart = r.elements().fold(0, |m, s| m | bit(r.mul(lcoef, s)));
                let rpart = r.elements().fold(0, |m, s| m | bit(r.mul(s, rcoef)));
                let mut family = 0u64;
                for u in bits(lpart) {
                    for v in bits(rpart) {
                        family |= bit(r.add(x, r.add(u, v)));
                    }
                }
                if family != self.one_inv[a] {
                    return Outcome::Violated("x + (1-xa)R + R(1-ax) differs from {a(1)}".into());
                }
                let strong = bits(self.one_inv[a]).fold(0, |m, y| m | bit(r.mul3(y, a, y)));
                verdict(
                    strong == self.one_inv[a] & self.weak[a],
                    "{a(1) a a(1)} differs from {a(1,2)}",
                )
            }
            Claim::Lemma3 => {
                let (a, b) = (t[0], t[1]);
                let p1 = self.direct_sum_leq(a, b);
                let p2 = self.minus_leq(a, b);
                let p3 = self.inverse_containment(b, a);
                verdict(
                    p1 == p2 && p2 == p3,
                    &format!("direct-sum={p1} minus={p2} containment={p3}"),
                )
            }
            Claim::Cor4 => {
                let (a, b) = (t[0], t[1]);
                if !r.is_idempotent(b) {
                    return Outcome::Skipped;
                }
                let lhs = self.minus_leq(a, b);
                let rhs = r.is_idempotent(a) && r.mul(a, b) == a && r.mul(b, a) == a;
                verdict(lhs == rhs, &format!("minus={lhs} a=a2=ab=ba: {rhs}"))
            }
            Claim::Cor5 => {
                let (a, c) = (t[0], t[1]);
                let lhs = self.minus_leq(a, r.add(a, c));
                let rhs = self.disjoint(a, c);
                verdict(lhs == rhs, &format!("minus={lhs} disjoint={rhs}"))
            }
            Claim::Prop6 => {
                let (a, c) = (t[0], t[1]);
                if a == 0 || c == 0 || !self.disjoint(a, c) {
                    return Outcome::Skipped;
                }
                let found = bits(self.one_inv[a])
                    .any(|x| x != 0 && r.mul(x, c) == 0 && r.mul(c, x) == 0);
                verdict(found, "no nonzero a(1) with a(1)c = 0 = ca(1)")
            }
            Claim::Lemma8 => {
                let (a, b) = (t[0], t[1]);
                if self.one_inv[a] & self.one_inv[b] == 0 {
                    return Outcome::Skipped;
                }
                let lhs = subset(self.right[a], self.right[b]) && subset(self.left[a], self.left[b]);
                let rhs = self.direct_sum_leq(a, b);
                verdict(lhs == rhs, &format!("ideal containment={lhs} direct-sum={rhs}"))
            }
            Claim::Lemma9 => {
                let (a, b, g) = (t[0], t[1], t[2]);
                let is_one = has(self.one_inv[a], g);
                let forward = is_one && r.mul3(b, a, b) == b;
                let backward = is_one && has(self.weak[a], g) && self.direct_sum_leq(b, g);
                if !forward && !backward {
                    return Outcome::Skipped;
                }
                if forward {
                    let aba = r.mul3(a, b, a);
                    let c = r.add(b, r.mul3(g, r.sub(a, aba), g));
                    if r.mul3(a, c, a) != a {
                        return Outcome::Violated("aca != a".into());
                    }
                    if r.mul3(c, a, c) != c {
                        return Outcome::Violated("cac != c".into());
                    }
                    if !self.direct_sum_leq(b, c) {
                        return Outcome::Violated("b is not below c in the direct-sum order".into());
                    }
                }
                if backward && r.mul3(b, a, b) != b {
                    return Outcome::Violated("strong inverse above b but bab != b".into());
                }
                Outcome::Holds
            }
            Claim::Lemma12_13 => self.check_corner(t[0], t[1], t[2]),
            Claim::Order => {
                let (a, b, c) = (t[0], t[1], t[2]);
                if !self.minus_leq(a, a) {
                    return Outcome::Violated("not reflexive".into());
                }
                if self.minus_leq(a, b) && self.minus_leq(b, a) && a != b {
                    return Outcome::Violated("not antisymmetric".into());
                }
                verdict(
                    !(self.minus_leq(a, b) && self.minus_leq(b, c)) || self.minus_leq(a, c),
                    "not transitive",
                )
            }
        }
    }

    /// The corner claims for `a` and an idempotent frame `(e, f)` with
    /// `eR ⊆ aR`, `Rf ⊆ Ra` and `a ∉ eRf`.
    fn check_corner(&self, a: Element, e: Element, f: Element) -> Outcome {
        let r = self.ring;
        if !r.is_idempotent(e)
            || !r.is_idempotent(f)
            || !subset(self.right[e], self.right[a])
            || !subset(self.left[f], self.left[a])
            || r.mul3(e, a, f) == a
        {
            return Outcome::Skipped;
        }
        let corner = |x: Element| r.mul3(e, x, f);
        let c_set: u64 = r
            .elements()
            .filter(|&s| corner(s) == s && self.direct_sum_leq(s, a))
            .fold(0, |m, s| m | bit(s));
        let max_c: u64 = bits(c_set)
            .filter(|&d| bits(c_set).all(|c| c == d || !self.direct_sum_leq(d, c)))
            .fold(0, |m, d| m | bit(d));
        for g in bits(self.one_inv[a]) {
            let alpha = r.mul3(f, g, e);
            let weak = self.weak[alpha];
            let from_weak = bits(weak).fold(0, |m, u| m | bit(corner(u)));
            if from_weak != c_set {
                return Outcome::Violated(format!(
                    "C differs from {{euf}} for a(1) = {}",
                    r.render(g)
                ));
            }
            let from_strong =
                bits(weak & self.one_inv[alpha]).fold(0, |m, v| m | bit(corner(v)));
            if from_strong != max_c {
                return Outcome::Violated(format!(
                    "max C differs from {{evf}} for a(1) = {}",
                    r.render(g)
                ));
            }
            let target = self.right[alpha].count_ones();
            if let Some(d) = bits(c_set).find(|&d| has(max_c, d) != (self.right[d].count_ones() == target)) {
                return Outcome::Violated(format!(
                    "ideal-size criterion misjudges d = {}",
                    r.render(d)
                ));
            }
        }
        Outcome::Holds
    }
}

fn decode(mut idx: usize, n: usize, arity: usize) -> Vec<Element> {
    let mut t = vec![0; arity];
    for slot in t.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    t
}

/// Checks `claim_id` on every tuple of ring elements.
pub fn verify(ring: &FiniteRing, claim_id: &str) -> Result<ClaimReport> {
    verify_with(ring, claim_id, VerifyOptions::default())
}

pub fn verify_with(ring: &FiniteRing, claim_id: &str, opts: VerifyOptions) -> Result<ClaimReport> {
    let claim = Claim::parse(claim_id)?;
    let start = Instant::now();
    let oracle = RingOracle::new(ring, opts.reverse)?;
    let n = ring.size();
    let arity = claim.arity();
    let total = n.pow(arity as u32);
    let index = |k: usize| if opts.reverse { total - 1 - k } else { k };
    let run = |k: usize| -> (usize, Option<Counterexample>) {
        let t = decode(index(k), n, arity);
        match oracle.check(claim, &t) {
            Outcome::Skipped => (0, None),
            Outcome::Holds => (1, None),
            Outcome::Violated(detail) => (
                1,
                Some(Counterexample {
                    rendered: t.iter().map(|&x| ring.render(x)).collect(),
                    tuple: t,
                    detail,
                }),
            ),
        }
    };
    let results: Vec<(usize, Option<Counterexample>)> = if opts.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| Error::Postcondition {
                what: format!("thread pool: {e}"),
            })?;
        pool.install(|| (0..total).into_par_iter().map(run).collect())
    } else {
        (0..total).map(run).collect()
    };
    let universe_size = results.iter().map(|(u, _)| u).sum();
    let mut counterexamples: Vec<Counterexample> =
        results.into_iter().filter_map(|(_, c)| c).collect();
    counterexamples.sort_by(|x, y| x.tuple.cmp(&y.tuple));
    Ok(ClaimReport {
        claim_id: claim_id.to_string(),
        ring: ring.spec().to_string(),
        universe_size,
        counterexamples,
        elapsed: start.elapsed(),
    })
}

/// Recomputes one tuple from scratch, in reverse witness order; true when the
/// violation reproduces.
pub fn replay(ring: &FiniteRing, claim_id: &str, tuple: &[Element]) -> Result<bool> {
    let claim = Claim::parse(claim_id)?;
    if tuple.len() != claim.arity() || tuple.iter().any(|&x| x >= ring.size()) {
        return Err(Error::OutOfRange {
            what: "tuple",
            value: tuple.len(),
            max: claim.arity(),
        });
    }
    let oracle = RingOracle::new(ring, true)?;
    Ok(matches!(oracle.check(claim, tuple), Outcome::Violated(_)))
}
