//! Monomial orders on bracketed words: `Dl` (degree first) and `Dt`
//! (letter count first, operators beat letters), plus bounded checkers for
//! the monomial and invariance properties.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::words::{Alphabet, BracketedWord, Letter, Prime, StarWord};

/// A total order on bracketed words.
pub trait WordOrder {
    fn cmp_words(&self, u: &BracketedWord, v: &BracketedWord) -> Ordering;
    fn cmp_primes(&self, a: &Prime, b: &Prime) -> Ordering;
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Dl,
    Dt,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Dl => "dl",
            OrderKind::Dt => "dt",
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "dl" => Ok(OrderKind::Dl),
            "dt" => Ok(OrderKind::Dt),
            _ => Err(Error::Invalid(format!("unknown order `{s}` (expected dl or dt)"))),
        }
    }
}

/// Rank 0 is the largest letter.
#[inline]
pub fn cmp_letters(a: Letter, b: Letter) -> Ordering {
    b.0.cmp(&a.0)
}

impl WordOrder for OrderKind {
    fn cmp_words(&self, u: &BracketedWord, v: &BracketedWord) -> Ordering {
        match self {
            OrderKind::Dl => dl(u, v),
            OrderKind::Dt => dt(u, v),
        }
    }

    fn cmp_primes(&self, a: &Prime, b: &Prime) -> Ordering {
        match self {
            OrderKind::Dl => dl_prime(a, b),
            OrderKind::Dt => dt_prime(a, b),
        }
    }
}

fn dl(u: &BracketedWord, v: &BracketedWord) -> Ordering {
    if let (Some(a), Some(b)) = (u.as_prime(), v.as_prime()) {
        return dl_prime(a, b);
    }
    u.degree()
        .cmp(&v.degree())
        .then(u.breadth().cmp(&v.breadth()))
        .then_with(|| cmp_seq(u.primes(), v.primes(), dl_prime))
}

fn dl_prime(a: &Prime, b: &Prime) -> Ordering {
    match (a, b) {
        (Prime::Letter(x), Prime::Letter(y)) => cmp_letters(*x, *y),
        (Prime::Op(x), Prime::Op(y)) => dl(x, y),
        (Prime::Letter(_), Prime::Op(_)) => Ordering::Less,
        (Prime::Op(_), Prime::Letter(_)) => Ordering::Greater,
    }
}

fn dt(u: &BracketedWord, v: &BracketedWord) -> Ordering {
    if let (Some(a), Some(b)) = (u.as_prime(), v.as_prime()) {
        return dt_prime(a, b);
    }
    // Equal letter counts make a proper prefix impossible, so the length
    // tie-break only orders words of different letter count, already decided.
    u.letter_degree()
        .cmp(&v.letter_degree())
        .then_with(|| cmp_seq(u.primes(), v.primes(), dt_prime))
        .then(u.breadth().cmp(&v.breadth()))
}

fn dt_prime(a: &Prime, b: &Prime) -> Ordering {
    match (a, b) {
        (Prime::Letter(x), Prime::Letter(y)) => cmp_letters(*x, *y),
        (Prime::Op(x), Prime::Op(y)) => dt(x, y),
        (Prime::Letter(_), Prime::Op(_)) => Ordering::Less,
        (Prime::Op(_), Prime::Letter(_)) => Ordering::Greater,
    }
}

/// Element-wise comparison of equal-length prefixes; `Equal` on a common prefix.
fn cmp_seq(u: &[Prime], v: &[Prime], f: fn(&Prime, &Prime) -> Ordering) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        let c = f(a, b);
        if c != Ordering::Equal {
            return c;
        }
    }
    Ordering::Equal
}

/// Lexicographic order on sequences where a proper prefix is the larger.
pub fn lex_cmp<T>(u: &[T], v: &[T], f: impl Fn(&T, &T) -> Ordering) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        let c = f(a, b);
        if c != Ordering::Equal {
            return c;
        }
    }
    v.len().cmp(&u.len())
}

/// Lexicographic comparison of prime sequences under the restriction of `ord`.
pub fn prime_lex(ord: &dyn WordOrder, u: &[Prime], v: &[Prime]) -> Ordering {
    lex_cmp(u, v, |a, b| ord.cmp_primes(a, b))
}

/// Witness that `u > v` but `q|_u <= q|_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialViolation {
    pub u: BracketedWord,
    pub v: BracketedWord,
    pub q: StarWord,
}

/// Exhaustive monomial check over words and contexts of degree at most `bound`.
pub fn check_monomial(ord: &dyn WordOrder, a: &Alphabet, bound: u32) -> Result<(), MonomialViolation> {
    let words: Vec<BracketedWord> = BracketedWord::all_by_degree(a, bound).into_iter().flatten().collect();
    let ctxs: Vec<StarWord> = StarWord::all_by_degree(a, bound).into_iter().flatten().collect();
    for u in &words {
        for v in &words {
            if ord.cmp_words(u, v) != Ordering::Greater {
                continue;
            }
            for q in &ctxs {
                if ord.cmp_words(&q.fill(u), &q.fill(v)) != Ordering::Greater {
                    return Err(MonomialViolation { u: u.clone(), v: v.clone(), q: q.clone() });
                }
            }
        }
    }
    Ok(())
}

/// Witness that the ambient order and the prime-wise lexicographic order
/// disagree on a permutation of a prime tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantViolation {
    pub word: BracketedWord,
    pub permuted: BracketedWord,
}

/// For every tuple of primes of total degree at most `bound` and every
/// permutation, the ambient comparison equals the prime-wise lex comparison.
pub fn check_invariant(ord: &dyn WordOrder, a: &Alphabet, bound: u32) -> Result<(), InvariantViolation> {
    let words = BracketedWord::all_by_degree(a, bound);
    // Every word of breadth >= 2 is a prime tuple; permuting its primes covers all tuples.
    for w in words.iter().flatten().filter(|w| w.breadth() >= 2) {
        let ps = w.primes();
        for perm in (0..ps.len()).permutations(ps.len()) {
            let p = BracketedWord::new(perm.iter().map(|&i| ps[i].clone()).collect());
            let ambient = ord.cmp_words(w, &p);
            let lex = prime_lex(ord, ps, p.primes());
            if ambient != lex {
                return Err(InvariantViolation { word: w.clone(), permuted: p });
            }
        }
    }
    Ok(())
}

/// Total, antisymmetric and transitive on the words of degree at most `bound`.
pub fn check_total(ord: &dyn WordOrder, a: &Alphabet, bound: u32) -> bool {
    let mut words: Vec<BracketedWord> = BracketedWord::all_by_degree(a, bound).into_iter().flatten().collect();
    for u in &words {
        for v in &words {
            let c = ord.cmp_words(u, v);
            if c != ord.cmp_words(v, u).reverse() || (c == Ordering::Equal) != (u == v) {
                return false;
            }
        }
    }
    words.sort_by(|u, v| ord.cmp_words(u, v));
    // Adjacent strictness plus pairwise antisymmetry: a sort of a non-transitive
    // relation leaves some later pair inverted.
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if ord.cmp_words(&words[i], &words[j]) != Ordering::Less {
                return false;
            }
        }
    }
    true
}
