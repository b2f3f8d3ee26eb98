//! Exact-coefficient polynomials: associative ones over bracketed words and
//! Lie ones over the Lyndon-Shirshov basis, with commutator expansion and
//! straightening between them.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::marker::PhantomData;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lyndon::{bracketing_of, is_lsbw};
use crate::orders::{OrderKind, WordOrder};
use crate::words::{parse_factors, Alphabet, BracketedWord, Factor, NaWord, Prime};

pub type Coefficient = BigRational;

pub fn rat(n: i64, d: i64) -> Coefficient {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Coefficient {
    BigRational::from_integer(BigInt::from(n))
}

pub fn parse_coefficient(s: &str) -> Result<Coefficient> {
    let t = s.trim();
    let bad = || Error::Invalid(format!("bad coefficient `{s}`"));
    let q: BigRational = match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
    };
    Ok(q)
}

/// Word wrapped with the order it is sorted by.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key {
    kind: OrderKind,
    word: BracketedWord,
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.kind, other.kind);
        self.kind.cmp_words(&self.word, &other.word)
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Assoc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lie;

/// Sparse polynomial sorted by a monomial order. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<B> {
    order: OrderKind,
    terms: BTreeMap<Key, Coefficient>,
    _basis: PhantomData<B>,
}

/// Element of the free operated algebra: words are bracketed words.
pub type OpPolynomial = Poly<Assoc>;

/// Element of the free operated Lie algebra: the word `w` stands for the
/// basis element `[w]`, its Shirshov bracketing under the polynomial's order.
pub type LiePolynomial = Poly<Lie>;

impl<B: Clone> Poly<B> {
    pub fn zero(order: OrderKind) -> Self {
        Poly { order, terms: BTreeMap::new(), _basis: PhantomData }
    }

    pub fn monomial(order: OrderKind, w: BracketedWord, c: Coefficient) -> Self {
        let mut p = Poly::zero(order);
        p.add_term(w, c);
        p
    }

    pub fn order(&self) -> OrderKind {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from largest word to smallest.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&BracketedWord, &Coefficient)> {
        self.terms.iter().rev().map(|(k, c)| (&k.word, c))
    }

    pub fn words(&self) -> impl Iterator<Item = &BracketedWord> {
        self.iter().map(|(w, _)| w)
    }

    pub fn leading(&self) -> Option<(&BracketedWord, &Coefficient)> {
        self.terms.last_key_value().map(|(k, c)| (&k.word, c))
    }

    pub fn leading_word(&self) -> Option<&BracketedWord> {
        self.leading().map(|(w, _)| w)
    }

    pub fn coeff(&self, w: &BracketedWord) -> Coefficient {
        self.terms.get(&self.key(w.clone())).cloned().unwrap_or_else(Coefficient::zero)
    }

    /// Largest word strictly below `w`, with its coefficient.
    pub fn next_below(&self, w: &BracketedWord) -> Option<(&BracketedWord, &Coefficient)> {
        self.terms.range(..self.key(w.clone())).next_back().map(|(k, c)| (&k.word, c))
    }

    /// Smallest word strictly above `w`.
    pub fn next_above(&self, w: &BracketedWord) -> Option<(&BracketedWord, &Coefficient)> {
        use std::ops::Bound::{Excluded, Unbounded};
        self.terms.range((Excluded(self.key(w.clone())), Unbounded)).next().map(|(k, c)| (&k.word, c))
    }

    /// Smallest word of the support.
    pub fn trailing(&self) -> Option<(&BracketedWord, &Coefficient)> {
        self.terms.first_key_value().map(|(k, c)| (&k.word, c))
    }

    fn key(&self, word: BracketedWord) -> Key {
        Key { kind: self.order, word }
    }

    pub fn add_term(&mut self, w: BracketedWord, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(Key { kind: self.order, word: w }) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Coefficient) {
        assert_eq!(self.order, other.order, "mixed orders");
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.terms {
            self.add_term(k.word.clone(), x * c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        p.add_scaled(other, &Coefficient::one());
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = self.clone();
        p.add_scaled(other, &-Coefficient::one());
        p
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut p = Poly::zero(self.order);
        p.add_scaled(self, c);
        p
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Coefficient::one())
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        let (_, c) = self.leading().ok_or(Error::Zero)?;
        Ok(self.scale(&c.recip()))
    }

    /// Same terms re-sorted under another order.
    pub fn reorder(&self, order: OrderKind) -> Self {
        let mut p = Poly::zero(order);
        for (w, c) in self.iter() {
            p.add_term(w.clone(), c.clone());
        }
        p
    }

    /// Substitute every word through `f` (a linear map on basis words).
    pub fn map_words(&self, mut f: impl FnMut(&BracketedWord) -> BracketedWord) -> Self {
        let mut p = Poly::zero(self.order);
        for (w, c) in self.iter() {
            p.add_term(f(w), c.clone());
        }
        p
    }

    fn write_terms(&self, out: &mut String, mut word: impl FnMut(&BracketedWord) -> String) {
        if self.is_zero() {
            out.push('0');
            return;
        }
        for (i, (w, c)) in self.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let a = c.abs();
            if !a.is_one() {
                let _ = write!(out, "{a}*");
            }
            out.push_str(&word(w));
        }
    }
}

/// One term of the JSON polynomial form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub word: String,
}

impl OpPolynomial {
    pub fn from_word(order: OrderKind, w: BracketedWord) -> Self {
        Poly::monomial(order, w, Coefficient::one())
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "mixed orders");
        let mut p = Poly::zero(self.order);
        for (u, a) in self.iter() {
            for (v, b) in other.iter() {
                p.add_term(u.concat(v), a * b);
            }
        }
        p
    }

    /// Linear extension of `w ↦ ⌊w⌋`.
    pub fn wrap(&self) -> Self {
        self.map_words(BracketedWord::wrapped)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn to_text(&self, a: &Alphabet) -> String {
        let mut s = String::new();
        self.write_terms(&mut s, |w| w.to_text(a));
        s
    }

    pub fn to_json(&self, a: &Alphabet) -> Vec<TermJson> {
        self.iter().map(|(w, c)| TermJson { coeff: c.to_string(), word: w.to_text(a) }).collect()
    }

    /// `c1*word1 + c2*word2 - ...`; pairs `( a b )` expand as commutators.
    pub fn parse(s: &str, a: &Alphabet, order: OrderKind) -> Result<Self> {
        let mut p = Poly::zero(order);
        for (c, text) in split_terms(s)? {
            let fs = parse_factors(text, a, false)?;
            p.add_scaled(&factors_poly(&fs, order)?, &c);
        }
        Ok(p)
    }

    pub fn from_json(terms: &[TermJson], a: &Alphabet, order: OrderKind) -> Result<Self> {
        let mut p = Poly::zero(order);
        for t in terms {
            let c = parse_coefficient(&t.coeff)?;
            let fs = parse_factors(&t.word, a, false)?;
            p.add_scaled(&factors_poly(&fs, order)?, &c);
        }
        Ok(p)
    }
}

fn factors_poly(fs: &[Factor], order: OrderKind) -> Result<OpPolynomial> {
    let mut acc: Option<OpPolynomial> = None;
    for f in fs {
        let p = factor_poly(f, order)?;
        acc = Some(match acc {
            None => p,
            Some(a) => a.mul(&p),
        });
    }
    acc.ok_or_else(|| Error::Parse { pos: 0, msg: "empty word".into() })
}

fn factor_poly(f: &Factor, order: OrderKind) -> Result<OpPolynomial> {
    match f {
        Factor::Letter(l) => Ok(OpPolynomial::from_word(order, BracketedWord::letter(*l))),
        Factor::Op(inner) => Ok(factors_poly(inner, order)?.wrap()),
        Factor::Pair(x, y) => Ok(factor_poly(x, order)?.commutator(&factor_poly(y, order)?)),
        Factor::Star => Err(Error::Parse { pos: 0, msg: "unexpected `*`".into() }),
    }
}

/// Split at top-level `+`/`-`, peeling an optional `p/q*` coefficient.
fn split_terms(s: &str) -> Result<Vec<(Coefficient, &str)>> {
    let mut pieces: Vec<(bool, usize, usize)> = Vec::new();
    let (mut depth, mut start, mut neg) = (0i32, 0usize, false);
    let mut seen = false;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                if seen {
                    pieces.push((neg, start, i));
                } else if !s[start..i].trim().is_empty() {
                    return Err(Error::Parse { pos: i, msg: "dangling text before sign".into() });
                }
                neg = ch == '-';
                start = i + 1;
                seen = false;
                continue;
            }
            _ => {}
        }
        if !ch.is_whitespace() {
            seen = true;
        }
    }
    if seen {
        pieces.push((neg, start, s.len()));
    } else {
        return Err(Error::Parse { pos: s.len(), msg: "expected a term".into() });
    }
    let mut out = Vec::new();
    for (neg, a, b) in pieces {
        let t = s[a..b].trim();
        let digits = t.find(|c: char| !(c.is_ascii_digit() || c == '/' || c.is_whitespace())).unwrap_or(t.len());
        let (mut c, mut rest) = if digits > 0 && t[..digits].trim().chars().next().is_some_and(|c| c.is_ascii_digit()) {
            (parse_coefficient(&t[..digits])?, t[digits..].trim_start())
        } else {
            (Coefficient::one(), t)
        };
        if let Some(r) = rest.strip_prefix('*') {
            rest = r.trim_start();
        }
        if rest.is_empty() {
            return Err(Error::Parse { pos: b, msg: "term without a word".into() });
        }
        if neg {
            c = -c;
        }
        out.push((c, rest));
    }
    Ok(out)
}

impl LiePolynomial {
    /// Basis element `[w]`; `w` must be Lyndon-Shirshov.
    pub fn basis(order: OrderKind, w: BracketedWord) -> Result<Self> {
        if !is_lsbw(&w, &order) {
            return Err(Error::NotLyndon(default_text(&w)));
        }
        Ok(Poly::monomial(order, w, Coefficient::one()))
    }

    /// `⌊[u]⌋ = [⌊u⌋]`, so the operator maps basis words to basis words.
    pub fn apply_operator(&self) -> Self {
        self.map_words(BracketedWord::wrapped)
    }

    /// Terms as `(coefficient, [w])`, largest first.
    pub fn bracketed_terms(&self) -> Vec<(Coefficient, NaWord)> {
        self.iter()
            .map(|(w, c)| (c.clone(), bracketing_of(w, &self.order).expect("keys are Lyndon-Shirshov")))
            .collect()
    }

    pub fn to_text(&self, a: &Alphabet) -> String {
        let mut s = String::new();
        let ord = self.order;
        self.write_terms(&mut s, |w| bracketing_of(w, &ord).expect("keys are Lyndon-Shirshov").to_text(a));
        s
    }

    pub fn to_json(&self, a: &Alphabet) -> Vec<TermJson> {
        self.bracketed_terms()
            .into_iter()
            .map(|(c, t)| TermJson { coeff: c.to_string(), word: t.to_text(a) })
            .collect()
    }
}

/// Text of a word under the standard letter names.
pub(crate) fn default_text(w: &BracketedWord) -> String {
    fn max_rank(ps: &[Prime]) -> u32 {
        ps.iter()
            .map(|p| match p {
                Prime::Letter(l) => l.0,
                Prime::Op(w) => max_rank(w.primes()),
            })
            .max()
            .unwrap_or(0)
    }
    w.to_text(&Alphabet::standard(max_rank(w.primes()) as usize + 1))
}

/// Commutator expansion of a non-associative word: `(a b) ↦ ab - ba`.
pub fn commutator_expand(t: &NaWord, order: OrderKind) -> OpPolynomial {
    match t {
        NaWord::Leaf(l) => OpPolynomial::from_word(order, BracketedWord::letter(*l)),
        NaWord::Op(x) => commutator_expand(x, order).wrap(),
        NaWord::Pair(x, y) => commutator_expand(x, order).commutator(&commutator_expand(y, order)),
    }
}

/// Free operated Lie algebra under a fixed order, with a cache of basis expansions.
#[derive(Debug)]
pub struct LieAlgebra {
    order: OrderKind,
    expansions: Mutex<HashMap<BracketedWord, Arc<OpPolynomial>>>,
}

impl LieAlgebra {
    pub fn new(order: OrderKind) -> Self {
        LieAlgebra { order, expansions: Mutex::new(HashMap::new()) }
    }

    pub fn order(&self) -> OrderKind {
        self.order
    }

    /// Expansion of the basis element `[w]`.
    pub fn expand_basis(&self, w: &BracketedWord) -> Result<Arc<OpPolynomial>> {
        if let Some(e) = self.expansions.lock().expect("cache lock").get(w) {
            return Ok(e.clone());
        }
        let t = bracketing_of(w, &self.order).map_err(|_| Error::NotLyndon(default_text(w)))?;
        let e = Arc::new(commutator_expand(&t, self.order));
        self.expansions.lock().expect("cache lock").insert(w.clone(), e.clone());
        Ok(e)
    }

    pub fn expand(&self, f: &LiePolynomial) -> OpPolynomial {
        let mut p = OpPolynomial::zero(self.order);
        for (w, c) in f.iter() {
            p.add_scaled(&self.expand_basis(w).expect("keys are Lyndon-Shirshov"), c);
        }
        p
    }

    /// Rewrite an associative polynomial in the Lyndon-Shirshov basis by
    /// repeatedly peeling off the leading word.
    pub fn straighten(&self, p: &OpPolynomial) -> Result<LiePolynomial> {
        let mut rest = if p.order() == self.order { p.clone() } else { p.reorder(self.order) };
        let mut out = LiePolynomial::zero(self.order);
        while let Some((w, c)) = rest.leading() {
            if !is_lsbw(w, &self.order) {
                return Err(Error::NotLieElement(default_text(w)));
            }
            let (w, c) = (w.clone(), c.clone());
            let e = self.expand_basis(&w)?;
            rest.add_scaled(&e, &-c.clone());
            debug_assert!(rest.coeff(&w).is_zero());
            out.add_term(w, c);
        }
        Ok(out)
    }

    pub fn straighten_na(&self, t: &NaWord) -> LiePolynomial {
        self.straighten(&commutator_expand(t, self.order)).expect("bracket polynomials are Lie")
    }

    pub fn bracket(&self, f: &LiePolynomial, g: &LiePolynomial) -> LiePolynomial {
        let (ef, eg) = (self.expand(f), self.expand(g));
        self.straighten(&ef.commutator(&eg)).expect("commutators are Lie")
    }

    pub fn basis(&self, w: &BracketedWord) -> Result<LiePolynomial> {
        LiePolynomial::basis(self.order, w.clone())
    }

    /// Parse text as an associative polynomial and straighten it.
    pub fn parse(&self, s: &str, a: &Alphabet) -> Result<LiePolynomial> {
        self.straighten(&OpPolynomial::parse(s, a, self.order)?)
    }

    pub fn from_json(&self, terms: &[TermJson], a: &Alphabet) -> Result<LiePolynomial> {
        self.straighten(&OpPolynomial::from_json(terms, a, self.order)?)
    }
}
