//! Reference computations with known exact answers, runnable as a suite.
//!
//! Each block works from a set of named fixture matrices. Fixtures can be
//! replaced before a run (see [`Fixtures::set`]); a replaced input or
//! expected value then shows up as failing checks rather than as a crash.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::elim::rank;
use crate::error::{Error, Result};
use crate::gen_inverse::{group_inverse, moore_penrose, weighted_mp};
use crate::lab::{make_ring, verify};
use crate::matrix::{parse_matrix, ExactMatrix};
use crate::orders::{direct_sum_leq, loewner_leq, minus_leq};
use crate::shorted::{
    anderson_trapp, core_matrix, is_maximal, max_from_strong, permutation_equivalent,
    shorted_psd, Frame, Strategy,
};
use crate::subspace::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Block {
    Example7,
    Example14,
    Example18,
    Lemmas,
}

impl Block {
    pub const ALL: [Block; 4] = [Block::Example7, Block::Example14, Block::Example18, Block::Lemmas];

    pub fn name(self) -> &'static str {
        match self {
            Block::Example7 => "example7",
            Block::Example14 => "example14",
            Block::Example18 => "example18",
            Block::Lemmas => "lemmas",
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Block {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Block::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| format!("unknown block `{s}` (expected example7, example14, example18 or lemmas)"))
    }
}

/// One exact assertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub anchor: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    /// Set when the check compares two matrices.
    pub matrices: Option<(ExactMatrix, ExactMatrix)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockReport {
    pub block: Block,
    pub checks: Vec<Check>,
}

impl BlockReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

const FIXTURES: &[(&str, &str)] = &[
    ("example7.a", "0 0 1 0 / 0 0 0 0 / 0 0 0 0 / 0 0 0 0"),
    ("example7.b", "0 0 0 0 / 0 0 0 1 / 0 0 0 0 / 0 0 0 0"),
    ("example7.c", "0 0 1 1 / 0 0 0 1 / 0 0 0 0 / 0 0 0 0"),
    ("example14.e", "1 0 0 0 / 0 1/2 1/2 0 / 0 1/2 1/2 0 / 0 0 0 1"),
    ("example14.f", "1/2 1/4 0 0 / 1 1/2 0 0 / 0 0 0 0 / 0 0 0 1"),
    ("example14.a", "1 0 0 0 / 0 1 0 0 / 0 0 1 0 / 0 0 0 1"),
    ("example14.a1", "1 0 0 0 / 0 1 0 0 / 0 0 1 0 / 0 0 0 1"),
    ("example14.core", "1/2 1/8 1/8 0 / 1 1/4 1/4 0 / 0 0 0 0 / 0 0 0 1"),
    ("example14.v1", "16/45 32/45 0 0 / 4/45 8/45 0 0 / 4/45 8/45 0 0 / 0 0 0 1"),
    ("example14.ev1f", "8/9 4/9 0 0 / 2/9 1/9 0 0 / 2/9 1/9 0 0 / 0 0 0 1"),
    ("example14.v2", "8/9 2/9 2/9 0 / 16/9 4/9 4/9 0 / 0 0 0 0 / 0 0 0 1"),
    ("example14.ev2f", "2/3 1/3 0 0 / 2/3 1/3 0 0 / 2/3 1/3 0 0 / 0 0 0 1"),
    ("example18.e", "1/2 0 1/2 0 / 0 0 0 0 / 1/2 0 1/2 0 / 0 0 0 1"),
    ("example18.a", "1 0 1 0 / 0 1 0 0 / 1 0 1 0 / 0 0 0 1"),
    ("example18.pinv", "1/4 0 1/4 0 / 0 1 0 0 / 1/4 0 1/4 0 / 0 0 0 1"),
    ("example18.f_weighted", "1/2 0 1/2 0 / 0 0 0 0 / 1/2 0 1/2 0 / 0 0 0 1"),
    ("example18.core_pinv", "1 0 1 0 / 0 0 0 0 / 1 0 1 0 / 0 0 0 1"),
    ("example18.short", "1 0 1 0 / 0 0 0 0 / 1 0 1 0 / 0 0 0 1"),
    ("example18.a_s", "1 0 1 0 / 0 1 0 0 / 1 0 1 0 / 0 0 0 0"),
    ("example18.p", "1 0 0 0 / 0 0 0 1 / 0 0 1 0 / 0 1 0 0"),
];

/// The named matrices the blocks run on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixtures {
    map: BTreeMap<String, ExactMatrix>,
}

impl Default for Fixtures {
    fn default() -> Self {
        Self::reference()
    }
}

impl Fixtures {
    /// The stock inputs and expected values.
    pub fn reference() -> Self {
        let map = FIXTURES
            .iter()
            .map(|(k, v)| (k.to_string(), parse_matrix(v).expect("fixture parses")))
            .collect();
        Fixtures { map }
    }

    pub fn names() -> impl Iterator<Item = &'static str> {
        FIXTURES.iter().map(|(k, _)| *k)
    }

    pub fn get(&self, name: &str) -> &ExactMatrix {
        &self.map[name]
    }

    /// Replaces a fixture. Unknown names are rejected.
    pub fn set(&mut self, name: &str, m: ExactMatrix) -> Result<()> {
        match self.map.get_mut(name) {
            Some(slot) => {
                *slot = m;
                Ok(())
            }
            None => Err(Error::NoSolution {
                what: format!("no fixture named `{name}`"),
            }),
        }
    }
}

struct Recorder {
    block: Block,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(block: Block) -> Self {
        Recorder {
            block,
            checks: Vec::new(),
        }
    }

    fn anchor(&self, label: &str) -> String {
        format!("{}/{label}", self.block)
    }

    fn matrix(&mut self, label: &str, expected: &ExactMatrix, actual: Result<ExactMatrix>) {
        let anchor = self.anchor(label);
        let check = match actual {
            Ok(actual) => Check {
                anchor,
                expected: expected.to_inline(),
                actual: actual.to_inline(),
                pass: &actual == expected,
                matrices: Some((expected.clone(), actual)),
            },
            Err(e) => Check {
                anchor,
                expected: expected.to_inline(),
                actual: format!("error: {e}"),
                pass: false,
                matrices: None,
            },
        };
        self.checks.push(check);
    }

    fn value<T: PartialEq + fmt::Display>(&mut self, label: &str, expected: T, actual: Result<T>) {
        let anchor = self.anchor(label);
        let (actual, pass) = match actual {
            Ok(v) => (v.to_string(), v == expected),
            Err(e) => (format!("error: {e}"), false),
        };
        self.checks.push(Check {
            anchor,
            expected: expected.to_string(),
            actual,
            pass,
            matrices: None,
        });
    }

    fn finish(self) -> BlockReport {
        BlockReport {
            block: self.block,
            checks: self.checks,
        }
    }
}

fn check_shape(a: &ExactMatrix, b: &ExactMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            op: "fixture",
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(())
}

fn checked_sum(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    a.checked_add(b)
}

fn example7(fx: &Fixtures) -> BlockReport {
    let mut r = Recorder::new(Block::Example7);
    let (a, b, c) = (fx.get("example7.a"), fx.get("example7.b"), fx.get("example7.c"));
    let sum = checked_sum(a, b);
    r.value("rank(c)", 2, Ok(rank(c)));
    r.value("rank(a+b)", 2, sum.as_ref().map(rank).map_err(Clone::clone));
    r.value(
        "rank(c-(a+b))",
        1,
        sum.clone().and_then(|s| c.checked_sub(&s)).map(|d| rank(&d)),
    );
    let disjoint = (|| -> Result<bool> {
        check_shape(a, b)?;
        Ok(Subspace::column_space(a).intersect(&Subspace::column_space(b))?.is_zero()
            && Subspace::row_space(a).intersect(&Subspace::row_space(b))?.is_zero())
    })();
    r.value("aR∩bR=0=Ra∩Rb", true, disjoint);
    let minus = |x: &ExactMatrix| -> Result<bool> {
        let cert = minus_leq(x, c)?;
        if !cert.verify(x, c) {
            return Err(Error::Postcondition {
                what: "certificate does not re-verify".into(),
            });
        }
        Ok(cert.verdict)
    };
    r.value("a≤⁻c", true, minus(a));
    r.value("b≤⁻c", true, minus(b));
    r.value("a+b≤⁻c", false, sum.and_then(|s| minus(&s)));
    r.finish()
}

fn example14(fx: &Fixtures) -> BlockReport {
    let mut r = Recorder::new(Block::Example14);
    let (a, a1) = (fx.get("example14.a"), fx.get("example14.a1"));
    let frame = Frame::new(fx.get("example14.e").clone(), fx.get("example14.f").clone());
    let core = frame
        .clone()
        .and_then(|fr| core_matrix(a, &fr, a1).map(|c| c.core));
    r.matrix("f·a1·e", fx.get("example14.core"), core.clone());
    let v1 = core.clone().map(|c| moore_penrose(&c));
    r.matrix("v1=core†", fx.get("example14.v1"), v1.clone());
    let v2 = core
        .clone()
        .and_then(|c| group_inverse(&c)?.ok_or(Error::NoGroupInverse));
    r.matrix("v2=core#", fx.get("example14.v2"), v2.clone());

    let evf = |v: Result<ExactMatrix>| -> Result<ExactMatrix> {
        let fr = frame.clone()?;
        let v = v?;
        Ok(&(fr.e() * &v) * fr.f())
    };
    let ev1f = evf(v1);
    let ev2f = evf(v2);
    r.matrix("e·v1·f", fx.get("example14.ev1f"), ev1f.clone());
    r.matrix("e·v2·f", fx.get("example14.ev2f"), ev2f.clone());

    let via_strategy = |s: Strategy| frame.clone().and_then(|fr| max_from_strong(a, &fr, a1, &s));
    r.matrix("max_from_strong(mp)", fx.get("example14.ev1f"), via_strategy(Strategy::MoorePenrose));
    r.matrix("max_from_strong(group)", fx.get("example14.ev2f"), via_strategy(Strategy::Group));

    for (label, m) in [("ev1f", &ev1f), ("ev2f", &ev2f)] {
        let drop = m.clone().map(|m| rank(a) as i64 - rank(&m) as i64);
        r.value(&format!("rank(a)-rank({label})"), 2, drop);
        let diff = m.clone().and_then(|m| a.checked_sub(&m)).map(|d| rank(&d));
        r.value(&format!("rank(a-{label})"), 2, diff);
        let below = m.clone().and_then(|m| minus_leq(&m, a)).map(|c| c.verdict);
        r.value(&format!("{label}≤⁻a"), true, below);
        let maximal = m
            .clone()
            .and_then(|m| is_maximal(&m, a, &frame.clone()?, a1));
        r.value(&format!("{label} maximal"), true, maximal);
    }
    let distinct = match (&ev1f, &ev2f) {
        (Ok(x), Ok(y)) => Ok(x != y),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    r.value("ev1f≠ev2f", true, distinct);
    r.finish()
}

fn example18(fx: &Fixtures) -> BlockReport {
    let mut r = Recorder::new(Block::Example18);
    let (a, e) = (fx.get("example18.a"), fx.get("example18.e"));
    let short = fx.get("example18.short");
    let f = e.adjoint();
    r.matrix("a†", fx.get("example18.pinv"), Ok(moore_penrose(a)));
    let f_a = weighted_mp(&f, a).map(|w| w.solution);
    r.matrix("f_a†", fx.get("example18.f_weighted"), f_a.clone());
    r.matrix("f_a†=f", &f, f_a.clone());
    let via_weighted = f_a.and_then(|fa| Ok(&(a.checked_mul(&fa)?) * &f));
    r.matrix("a·f_a†·f", short, via_weighted);
    let core_pinv = (|| -> Result<ExactMatrix> {
        let core = e.checked_mul(&moore_penrose(a))?;
        Ok(moore_penrose(&(&f * &core)))
    })();
    r.matrix("(f·a†·e)†", fx.get("example18.core_pinv"), core_pinv.clone());
    r.matrix("e·(f·a†·e)†·f", short, core_pinv.map(|v| &(e * &v) * &f));
    let shorted = shorted_psd(a, e);
    r.matrix("shorted_psd", short, shorted.clone().map(|s| s.value));

    let value = shorted.map(|s| s.value);
    r.value("rank(a)", 3, Ok(rank(a)));
    r.value("rank(a·f_a†·f)", 2, value.as_ref().map(rank).map_err(Clone::clone));
    r.value(
        "rank(a-a·f_a†·f)",
        1,
        value.clone().and_then(|v| a.checked_sub(&v)).map(|d| rank(&d)),
    );
    r.value(
        "a·f_a†·f≤⊕a",
        true,
        value.clone().and_then(|v| direct_sum_leq(&v, a)),
    );
    r.value(
        "a·f_a†·f≤_La",
        true,
        value.clone().and_then(|v| loewner_leq(&v, a)),
    );
    let a_s = fx.get("example18.a_s");
    r.matrix("anderson_trapp(a,3)", a_s, anderson_trapp(a, 3));
    let p = fx.get("example18.p");
    r.matrix(
        "P·short·Pᵀ",
        a_s,
        (|| Ok(&p.checked_mul(short)? * &p.transpose()))(),
    );
    let found = permutation_equivalent(short, a_s).and_then(|p| {
        let p = p.ok_or(Error::NoSolution {
            what: "no permutation found".into(),
        })?;
        Ok(&(&p * short) * &p.transpose())
    });
    r.matrix("permutation_equivalent", a_s, found);
    r.finish()
}

fn lemmas() -> BlockReport {
    let mut r = Recorder::new(Block::Lemmas);
    let runs: &[(&str, &str, Option<usize>)] = &[
        ("M_2(GF(2))", "lemma3", Some(256)),
        ("M_2(GF(2))", "thm1", Some(256)),
        ("M_2(GF(2))", "lemma9", None),
        ("M_2(GF(2))", "lemma12_13", None),
        ("Z/30", "lemma9", None),
        ("Z/30", "cor4", None),
        ("Z/30", "cor5", None),
        ("Z/30", "prop6", None),
        ("Z/30", "lemma8", None),
        ("Z/30", "lemma2", None),
    ];
    for &(ring, claim, universe) in runs {
        let report = make_ring(&ring.parse().expect("ring spec parses")).and_then(|g| verify(&g, claim));
        if let Some(n) = universe {
            r.value(
                &format!("{claim}@{ring} tuples"),
                n,
                report.as_ref().map(|rep| rep.universe_size).map_err(Clone::clone),
            );
        }
        r.value(
            &format!("{claim}@{ring} counterexamples"),
            0,
            report.map(|rep| rep.counterexamples.len()),
        );
    }
    r.finish()
}

/// Runs one block.
pub fn run_block(block: Block, fixtures: &Fixtures) -> BlockReport {
    match block {
        Block::Example7 => example7(fixtures),
        Block::Example14 => example14(fixtures),
        Block::Example18 => example18(fixtures),
        Block::Lemmas => lemmas(),
    }
}

/// Runs every block, or just `only`.
pub fn run(only: Option<Block>, fixtures: &Fixtures) -> Vec<BlockReport> {
    Block::ALL
        .into_iter()
        .filter(|b| only.is_none_or(|o| o == *b))
        .map(|b| run_block(b, fixtures))
        .collect()
}
