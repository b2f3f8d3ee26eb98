//! Lyndon-Shirshov words over an ordered alphabet of primes, Lyndon
//! factorization, Shirshov standard bracketing and the enumeration of
//! Lyndon-Shirshov bracketed words.
//!
//! Convention: a proper prefix is lexicographically larger, and a word is
//! Lyndon-Shirshov when it beats each of its proper rotations.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::orders::{lex_cmp, WordOrder};
use crate::words::{Alphabet, BracketedWord, Letter, NaWord, Prime};

pub fn is_alsw<T>(w: &[T], f: impl Fn(&T, &T) -> Ordering) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    (1..n).all(|k| {
        let rot = w[k..].iter().chain(&w[..k]);
        for (a, b) in w.iter().zip(rot) {
            match f(a, b) {
                Ordering::Equal => continue,
                c => return c == Ordering::Greater,
            }
        }
        false
    })
}

/// Equivalent test: the word beats each of its proper suffixes.
pub fn is_alsw_by_suffix<T>(w: &[T], f: impl Fn(&T, &T) -> Ordering) -> bool {
    !w.is_empty() && (1..w.len()).all(|k| lex_cmp(w, &w[k..], &f) == Ordering::Greater)
}

/// Factor `w` into Lyndon-Shirshov words `c1 ⪯ c2 ⪯ ...`; returns the
/// factor boundaries as ranges.
pub fn lyndon_factorize<T>(w: &[T], f: impl Fn(&T, &T) -> Ordering) -> Vec<std::ops::Range<usize>> {
    // Duval with the comparison flipped.
    let below = |a: &T, b: &T| f(a, b) == Ordering::Greater;
    let n = w.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && !below(&w[j], &w[k]) {
            if below(&w[k], &w[j]) {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            out.push(i..i + j - k);
            i += j - k;
        }
    }
    out
}

/// Binary bracketing over positions of the input sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tree {
    Leaf(usize),
    Pair(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn span(&self) -> (usize, usize) {
        match self {
            Tree::Leaf(i) => (*i, *i + 1),
            Tree::Pair(a, b) => (a.span().0, b.span().1),
        }
    }

    pub fn map<N>(&self, leaf: &mut impl FnMut(usize) -> N, pair: &impl Fn(N, N) -> N) -> N {
        match self {
            Tree::Leaf(i) => leaf(*i),
            Tree::Pair(a, b) => {
                let x = a.map(leaf, pair);
                let y = b.map(leaf, pair);
                pair(x, y)
            }
        }
    }
}

/// Shirshov standard bracketing: repeatedly attach every run of the minimal
/// letter to the letter on its left. `None` when `w` is not Lyndon-Shirshov.
pub fn shirshov<T>(w: &[T], f: impl Fn(&T, &T) -> Ordering) -> Option<Tree> {
    if !is_alsw(w, &f) {
        return None;
    }
    let mut items: Vec<(Tree, Vec<usize>)> = (0..w.len()).map(|i| (Tree::Leaf(i), vec![i])).collect();
    let cmp_items = |a: &[usize], b: &[usize]| lex_cmp(a, b, |&i, &j| f(&w[i], &w[j]));
    while items.len() > 1 {
        let min = items
            .iter()
            .map(|(_, s)| s)
            .min_by(|a, b| cmp_items(a, b))
            .expect("nonempty")
            .clone();
        let mut next: Vec<(Tree, Vec<usize>)> = Vec::with_capacity(items.len());
        for (t, s) in items {
            let is_min = cmp_items(&s, &min) == Ordering::Equal;
            match next.last_mut() {
                Some((lt, ls)) if is_min && cmp_items(ls, &min) != Ordering::Equal => {
                    let left = std::mem::replace(lt, Tree::Leaf(0));
                    *lt = Tree::Pair(Box::new(left), Box::new(t));
                    ls.extend(s);
                }
                _ => next.push((t, s)),
            }
        }
        items = next;
    }
    items.pop().map(|(t, _)| t)
}

/// Lyndon-Shirshov bracketed word: every operator argument is one, and the
/// top-level prime sequence is Lyndon-Shirshov under the restricted order.
pub fn is_lsbw(w: &BracketedWord, ord: &dyn WordOrder) -> bool {
    w.primes().iter().all(|p| match p {
        Prime::Letter(_) => true,
        Prime::Op(inner) => is_lsbw(inner, ord),
    }) && is_alsw(w.primes(), |a, b| ord.cmp_primes(a, b))
}

/// `[w]`: operator arguments bracketed recursively, then the prime sequence
/// Shirshov-bracketed with primes compared by `ord`.
pub fn bracketing_of(w: &BracketedWord, ord: &dyn WordOrder) -> Result<NaWord> {
    bracketing_with(w, ord, &|a, b| ord.cmp_primes(a, b))
}

/// As [`bracketing_of`] with an explicit top-level prime order.
pub fn bracketing_with(
    w: &BracketedWord,
    ord: &dyn WordOrder,
    top: &dyn Fn(&Prime, &Prime) -> Ordering,
) -> Result<NaWord> {
    let not_ls = || Error::NotLyndon(format!("{w:?}"));
    let tree = shirshov(w.primes(), top).ok_or_else(not_ls)?;
    let mut leaves = Vec::with_capacity(w.breadth());
    for p in w.primes() {
        leaves.push(prime_bracketing(p, ord)?);
    }
    Ok(tree.map(&mut |i| leaves[i].clone(), &NaWord::pair))
}

pub(crate) fn prime_bracketing(p: &Prime, ord: &dyn WordOrder) -> Result<NaWord> {
    match p {
        Prime::Letter(l) => Ok(NaWord::Leaf(*l)),
        Prime::Op(inner) => Ok(NaWord::op(bracketing_of(inner, ord)?)),
    }
}

/// Non-associative Lyndon-Shirshov word test.
pub fn is_nlsw(t: &NaWord, ord: &dyn WordOrder) -> bool {
    match t {
        NaWord::Leaf(_) => true,
        NaWord::Op(inner) => is_nlsw(inner, ord),
        NaWord::Pair(a, b) => {
            let cmp = |x: &Prime, y: &Prime| ord.cmp_primes(x, y);
            if !is_alsw(t.forget().primes(), cmp) || !is_nlsw(a, ord) || !is_nlsw(b, ord) {
                return false;
            }
            match a.as_ref() {
                NaWord::Pair(_, a2) => {
                    lex_cmp(b.forget().primes(), a2.forget().primes(), cmp) != Ordering::Less
                }
                _ => true,
            }
        }
    }
}

/// Lyndon-Shirshov bracketed words by exact degree (index = degree), each
/// degree listed from largest to smallest under `ord`.
pub fn enumerate_lsbw(a: &Alphabet, ord: &dyn WordOrder, max: u32) -> Vec<Vec<BracketedWord>> {
    enumerate_inner(a, ord, max, true)
}

/// Operator-free Lyndon-Shirshov words by exact degree.
pub fn enumerate_depth0(a: &Alphabet, ord: &dyn WordOrder, max: u32) -> Vec<Vec<BracketedWord>> {
    enumerate_inner(a, ord, max, false)
}

fn enumerate_inner(a: &Alphabet, ord: &dyn WordOrder, max: u32, ops: bool) -> Vec<Vec<BracketedWord>> {
    let max = max as usize;
    let mut primes: Vec<Vec<Prime>> = vec![Vec::new(); max + 1];
    let mut out: Vec<Vec<BracketedWord>> = vec![Vec::new(); max + 1];
    if max >= 1 {
        primes[1] = a.letters().map(Prime::Letter).collect();
    }
    for n in 1..=max {
        if ops && n >= 2 {
            primes[n] = out[n - 1].iter().cloned().map(Prime::Op).collect();
        }
        let mut found = Vec::new();
        let mut stack: Vec<Prime> = Vec::new();
        extend_sequences(&primes, n, &mut stack, &mut |seq| {
            if is_alsw(seq, |x, y| ord.cmp_primes(x, y)) {
                found.push(BracketedWord::new(seq.to_vec()));
            }
        });
        found.sort_by(|u, v| ord.cmp_words(v, u));
        out[n] = found;
    }
    out
}

fn extend_sequences(
    primes: &[Vec<Prime>],
    remaining: usize,
    stack: &mut Vec<Prime>,
    emit: &mut dyn FnMut(&[Prime]),
) {
    if remaining == 0 {
        emit(stack);
        return;
    }
    for d in 1..=remaining {
        for p in &primes[d] {
            stack.push(p.clone());
            extend_sequences(primes, remaining - d, stack, emit);
            stack.pop();
        }
    }
}

/// Letters of an operator-free word.
pub fn letters_of(w: &BracketedWord) -> Option<Vec<Letter>> {
    w.primes()
        .iter()
        .map(|p| match p {
            Prime::Letter(l) => Some(*l),
            Prime::Op(_) => None,
        })
        .collect()
}
