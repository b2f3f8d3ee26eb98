//! Bracketed words, non-associative bracketed words and one-hole contexts.
//!
//! A bracketed word is a nonempty sequence of primes; a prime is a letter or
//! an operator applied to a bracketed word. Letters carry their rank in the
//! alphabet, rank 0 being the largest letter.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter(pub u32);

/// Ordered alphabet, largest letter first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    /// Names must be identifiers, distinct, prefix-free and must not start
    /// with `P` (reserved for the operator).
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("empty alphabet".into()));
        }
        for n in &names {
            let mut cs = n.chars();
            let ok_head = cs.next().is_some_and(|c| c.is_alphabetic() && c != 'P');
            if !ok_head || !n.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::InvalidAlphabet(format!("bad letter name `{n}`")));
            }
        }
        for (i, a) in names.iter().enumerate() {
            for (j, b) in names.iter().enumerate() {
                if i != j && b.starts_with(a.as_str()) {
                    return Err(Error::InvalidAlphabet(format!(
                        "`{a}` is a prefix of `{b}`"
                    )));
                }
            }
        }
        Ok(Alphabet { names })
    }

    /// Comma separated list, largest letter first: `x,y,z`.
    pub fn parse_list(s: &str) -> Result<Self> {
        Alphabet::new(s.split(',').map(str::trim).filter(|t| !t.is_empty()))
    }

    /// `x, y, z, w, v, u, t, s` truncated to `k`; longer alphabets use `a1, a2, ...`.
    pub fn standard(k: usize) -> Self {
        const BASE: [&str; 8] = ["x", "y", "z", "w", "v", "u", "t", "s"];
        if k <= BASE.len() {
            Alphabet::new(BASE[..k].iter().copied()).expect("static names")
        } else {
            Alphabet::new((1..=k).map(|i| format!("a{i}_"))).expect("generated names")
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, l: Letter) -> &str {
        self.names.get(l.0 as usize).map(String::as_str).unwrap_or("?")
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name).map(|i| Letter(i as u32))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len() as u32).map(Letter)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Longest letter name that prefixes `s`.
    fn match_prefix(&self, s: &str) -> Option<(Letter, usize)> {
        self.names
            .iter()
            .enumerate()
            .filter(|(_, n)| s.starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.len())
            .map(|(i, n)| (Letter(i as u32), n.len()))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Prime {
    Letter(Letter),
    Op(BracketedWord),
}

impl Prime {
    pub fn degree(&self) -> u32 {
        match self {
            Prime::Letter(_) => 1,
            Prime::Op(w) => w.degree + 1,
        }
    }

    pub fn letter_degree(&self) -> u32 {
        match self {
            Prime::Letter(_) => 1,
            Prime::Op(w) => w.letters,
        }
    }

    pub fn depth(&self) -> u32 {
        match self {
            Prime::Letter(_) => 0,
            Prime::Op(w) => w.depth + 1,
        }
    }

    pub fn op(w: BracketedWord) -> Prime {
        Prime::Op(w)
    }
}

/// Nonempty sequence of primes. Degree data is cached at construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BracketedWord {
    primes: Vec<Prime>,
    degree: u32,
    letters: u32,
    depth: u32,
}

impl BracketedWord {
    pub fn new(primes: Vec<Prime>) -> Self {
        assert!(!primes.is_empty(), "bracketed words are nonempty");
        let degree = primes.iter().map(Prime::degree).sum();
        let letters = primes.iter().map(Prime::letter_degree).sum();
        let depth = primes.iter().map(Prime::depth).max().unwrap_or(0);
        BracketedWord { primes, degree, letters, depth }
    }

    pub fn letter(l: Letter) -> Self {
        BracketedWord::new(vec![Prime::Letter(l)])
    }

    pub fn from_letters(ls: &[Letter]) -> Self {
        BracketedWord::new(ls.iter().map(|&l| Prime::Letter(l)).collect())
    }

    pub fn from_prime(p: Prime) -> Self {
        BracketedWord::new(vec![p])
    }

    /// `⌊self⌋` as a one-prime word.
    pub fn wrapped(&self) -> Self {
        BracketedWord::from_prime(Prime::Op(self.clone()))
    }

    pub fn primes(&self) -> &[Prime] {
        &self.primes
    }

    pub fn into_primes(self) -> Vec<Prime> {
        self.primes
    }

    pub fn breadth(&self) -> usize {
        self.primes.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn letter_degree(&self) -> u32 {
        self.letters
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn concat(&self, other: &BracketedWord) -> BracketedWord {
        let mut ps = self.primes.clone();
        ps.extend(other.primes.iter().cloned());
        BracketedWord::new(ps)
    }

    /// Present when the word is a single prime.
    pub fn as_prime(&self) -> Option<&Prime> {
        match self.primes.as_slice() {
            [p] => Some(p),
            _ => None,
        }
    }

    pub fn display<'a>(&'a self, a: &'a Alphabet) -> impl fmt::Display + 'a {
        Shown(move |f: &mut fmt::Formatter<'_>| write_primes(f, &self.primes, a))
    }

    pub fn to_text(&self, a: &Alphabet) -> String {
        self.display(a).to_string()
    }

    /// Every word of exact degree `n`, for `n` in `0..=max`; index 0 is empty.
    pub fn all_by_degree(a: &Alphabet, max: u32) -> Vec<Vec<BracketedWord>> {
        let letters: Vec<Letter> = a.letters().collect();
        words_by_degree(&letters, max)
    }
}

/// Words of exact degree over `letters`, index = degree.
pub(crate) fn words_by_degree(letters: &[Letter], max: u32) -> Vec<Vec<BracketedWord>> {
    let max = max as usize;
    let mut primes: Vec<Vec<Prime>> = vec![Vec::new(); max + 1];
    let mut words: Vec<Vec<BracketedWord>> = vec![Vec::new(); max + 1];
    for n in 1..=max {
        if n == 1 {
            primes[1] = letters.iter().map(|&l| Prime::Letter(l)).collect();
        } else {
            primes[n] = words[n - 1].iter().cloned().map(Prime::Op).collect();
        }
        let mut out = Vec::new();
        for first in 1..=n {
            for p in &primes[first] {
                if first == n {
                    out.push(BracketedWord::from_prime(p.clone()));
                } else {
                    for rest in &words[n - first] {
                        let mut ps = vec![p.clone()];
                        ps.extend(rest.primes.iter().cloned());
                        out.push(BracketedWord::new(ps));
                    }
                }
            }
        }
        words[n] = out;
    }
    words
}

struct Shown<F>(F);

impl<F: Fn(&mut fmt::Formatter<'_>) -> fmt::Result> fmt::Display for Shown<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        (self.0)(f)
    }
}

fn write_primes(f: &mut fmt::Formatter<'_>, ps: &[Prime], a: &Alphabet) -> fmt::Result {
    for (i, p) in ps.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        match p {
            Prime::Letter(l) => f.write_str(a.name(*l))?,
            Prime::Op(w) => {
                f.write_str("P(")?;
                write_primes(f, &w.primes, a)?;
                f.write_str(")")?;
            }
        }
    }
    Ok(())
}

/// Non-associative bracketed word: letters, operators and binary pairs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum NaWord {
    Leaf(Letter),
    Op(Box<NaWord>),
    Pair(Box<NaWord>, Box<NaWord>),
}

impl NaWord {
    pub fn pair(a: NaWord, b: NaWord) -> NaWord {
        NaWord::Pair(Box::new(a), Box::new(b))
    }

    pub fn op(a: NaWord) -> NaWord {
        NaWord::Op(Box::new(a))
    }

    /// Drop the pair brackets.
    pub fn forget(&self) -> BracketedWord {
        let mut ps = Vec::new();
        self.push_primes(&mut ps);
        BracketedWord::new(ps)
    }

    fn push_primes(&self, out: &mut Vec<Prime>) {
        match self {
            NaWord::Leaf(l) => out.push(Prime::Letter(*l)),
            NaWord::Op(t) => out.push(Prime::Op(t.forget())),
            NaWord::Pair(a, b) => {
                a.push_primes(out);
                b.push_primes(out);
            }
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            NaWord::Leaf(_) => 1,
            NaWord::Op(t) => t.degree() + 1,
            NaWord::Pair(a, b) => a.degree() + b.degree(),
        }
    }

    /// Compact form: `((x(yz))P(x))`.
    pub fn display<'a>(&'a self, a: &'a Alphabet) -> impl fmt::Display + 'a {
        Shown(move |f: &mut fmt::Formatter<'_>| write_na(f, self, a))
    }

    pub fn to_text(&self, a: &Alphabet) -> String {
        self.display(a).to_string()
    }

    /// Every non-associative word of exact degree `n`, index = degree.
    pub fn all_by_degree(a: &Alphabet, max: u32) -> Vec<Vec<NaWord>> {
        let max = max as usize;
        let mut out: Vec<Vec<NaWord>> = vec![Vec::new(); max + 1];
        for n in 1..=max {
            let mut here = Vec::new();
            if n == 1 {
                here.extend(a.letters().map(NaWord::Leaf));
            } else {
                here.extend(out[n - 1].iter().cloned().map(NaWord::op));
                for k in 1..n {
                    for l in &out[k] {
                        for r in &out[n - k] {
                            here.push(NaWord::pair(l.clone(), r.clone()));
                        }
                    }
                }
            }
            out[n] = here;
        }
        out
    }
}

fn write_na(f: &mut fmt::Formatter<'_>, t: &NaWord, a: &Alphabet) -> fmt::Result {
    match t {
        NaWord::Leaf(l) => f.write_str(a.name(*l)),
        NaWord::Op(x) => {
            f.write_str("P(")?;
            write_na(f, x, a)?;
            f.write_str(")")
        }
        NaWord::Pair(x, y) => {
            f.write_str("(")?;
            write_na(f, x, a)?;
            write_na(f, y, a)?;
            f.write_str(")")
        }
    }
}

/// One level of a context: primes left and right of the hole. Every frame
/// after the first sits inside an operator of the previous one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Frame {
    pub left: Vec<Prime>,
    pub right: Vec<Prime>,
}

/// Bracketed word with exactly one `⋆`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StarWord {
    frames: Vec<Frame>,
}

impl StarWord {
    /// The bare hole `⋆`.
    pub fn hole() -> Self {
        StarWord { frames: vec![Frame { left: Vec::new(), right: Vec::new() }] }
    }

    pub fn new(frames: Vec<Frame>) -> Self {
        assert!(!frames.is_empty());
        StarWord { frames }
    }

    /// `left ⋆ right` at top level.
    pub fn flat(left: Vec<Prime>, right: Vec<Prime>) -> Self {
        StarWord { frames: vec![Frame { left, right }] }
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn is_hole(&self) -> bool {
        self.frames.len() == 1 && self.frames[0].left.is_empty() && self.frames[0].right.is_empty()
    }

    /// Degree with `⋆` counted as one letter.
    pub fn degree(&self) -> u32 {
        let side: u32 = self
            .frames
            .iter()
            .flat_map(|fr| fr.left.iter().chain(fr.right.iter()))
            .map(Prime::degree)
            .sum();
        side + (self.frames.len() as u32 - 1) + 1
    }

    /// `q|_u`.
    pub fn fill(&self, u: &BracketedWord) -> BracketedWord {
        self.fill_primes(u.primes())
    }

    pub(crate) fn fill_primes(&self, u: &[Prime]) -> BracketedWord {
        let last = self.frames.len() - 1;
        let mut inner: Vec<Prime> = Vec::new();
        for (k, fr) in self.frames.iter().enumerate().rev() {
            let mut ps = fr.left.clone();
            if k == last {
                ps.extend(u.iter().cloned());
            } else {
                ps.push(Prime::Op(BracketedWord::new(std::mem::take(&mut inner))));
            }
            ps.extend(fr.right.iter().cloned());
            inner = ps;
        }
        BracketedWord::new(inner)
    }

    pub fn display<'a>(&'a self, a: &'a Alphabet) -> impl fmt::Display + 'a {
        Shown(move |f: &mut fmt::Formatter<'_>| write_star(f, &self.frames, a))
    }

    pub fn to_text(&self, a: &Alphabet) -> String {
        self.display(a).to_string()
    }

    /// Locate the unique occurrence of `star` in `w`.
    pub fn from_marked(w: &BracketedWord, star: Letter) -> Option<StarWord> {
        let u = [Prime::Letter(star)];
        let found = find_placements_primes(w.primes(), &u);
        match found.as_slice() {
            [q] => Some(q.clone()),
            _ => None,
        }
    }

    /// Every context of degree `n` over `a`, index = degree.
    pub fn all_by_degree(a: &Alphabet, max: u32) -> Vec<Vec<StarWord>> {
        let star = Letter(a.len() as u32);
        let mut letters: Vec<Letter> = a.letters().collect();
        letters.push(star);
        let words = words_by_degree(&letters, max);
        words
            .iter()
            .map(|ws| ws.iter().filter_map(|w| StarWord::from_marked(w, star)).collect())
            .collect()
    }
}

fn write_star(f: &mut fmt::Formatter<'_>, frames: &[Frame], a: &Alphabet) -> fmt::Result {
    let fr = &frames[0];
    write_primes_opt(f, &fr.left, a)?;
    if !fr.left.is_empty() {
        f.write_str(" ")?;
    }
    if frames.len() == 1 {
        f.write_str("*")?;
    } else {
        f.write_str("P(")?;
        write_star(f, &frames[1..], a)?;
        f.write_str(")")?;
    }
    if !fr.right.is_empty() {
        f.write_str(" ")?;
    }
    write_primes_opt(f, &fr.right, a)
}

fn write_primes_opt(f: &mut fmt::Formatter<'_>, ps: &[Prime], a: &Alphabet) -> fmt::Result {
    if ps.is_empty() {
        Ok(())
    } else {
        write_primes(f, ps, a)
    }
}

/// Every `q` with `q|_u = w`, left to right, outer occurrences first.
pub fn find_placements(w: &BracketedWord, u: &BracketedWord) -> Vec<StarWord> {
    find_placements_primes(w.primes(), u.primes())
}

fn find_placements_primes(w: &[Prime], u: &[Prime]) -> Vec<StarWord> {
    let mut out = Vec::new();
    for_each_segment(w, &mut |frames, seg| {
        if seg == u {
            out.push(StarWord::new(frames));
        }
        SegmentFlow::Continue
    }, Some(u.len()));
    out
}

pub(crate) enum SegmentFlow {
    Continue,
    Stop,
}

/// Visit every contiguous segment at every level in placement order: by start
/// position in reading order, outer level first, shorter segments first.
/// With `only_len`, only segments of that breadth are visited.
pub(crate) fn for_each_segment(
    w: &[Prime],
    visit: &mut dyn FnMut(Vec<Frame>, &[Prime]) -> SegmentFlow,
    only_len: Option<usize>,
) {
    let mut outer: Vec<Frame> = Vec::new();
    walk_segments(w, &mut outer, visit, only_len);
}

fn walk_segments(
    level: &[Prime],
    outer: &mut Vec<Frame>,
    visit: &mut dyn FnMut(Vec<Frame>, &[Prime]) -> SegmentFlow,
    only_len: Option<usize>,
) -> bool {
    for i in 0..level.len() {
        let lens: Vec<usize> = match only_len {
            Some(n) if i + n <= level.len() && n > 0 => vec![n],
            Some(_) => Vec::new(),
            None => (1..=level.len() - i).collect(),
        };
        for n in lens {
            let mut frames = outer.clone();
            frames.push(Frame { left: level[..i].to_vec(), right: level[i + n..].to_vec() });
            if let SegmentFlow::Stop = visit(frames, &level[i..i + n]) {
                return false;
            }
        }
        if let Prime::Op(inner) = &level[i] {
            outer.push(Frame { left: level[..i].to_vec(), right: level[i + 1..].to_vec() });
            let go_on = walk_segments(inner.primes(), outer, visit, only_len);
            outer.pop();
            if !go_on {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Factor {
    Letter(Letter),
    Star,
    Op(Vec<Factor>),
    Pair(Box<Factor>, Box<Factor>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Letter(Letter),
    Star,
    OpOpen,
    Open,
    Close,
}

fn tokenize(s: &str, a: &Alphabet, allow_star: bool) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut i = 0;
    let bytes = s.as_bytes();
    while i < s.len() {
        let rest = &s[i..];
        let c = rest.chars().next().expect("nonempty rest");
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        match c {
            '(' => {
                out.push((i, Tok::Open));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::Close));
                i += 1;
            }
            '*' | '⋆' if allow_star => {
                out.push((i, Tok::Star));
                i += c.len_utf8();
            }
            'P' => {
                let mut j = i + 1;
                while j < s.len() && bytes[j].is_ascii_whitespace() {
                    j += 1;
                }
                if j < s.len() && bytes[j] == b'(' {
                    out.push((i, Tok::OpOpen));
                    i = j + 1;
                } else {
                    return Err(Error::Parse { pos: i, msg: "`P` must be followed by `(`".into() });
                }
            }
            _ => match a.match_prefix(rest) {
                Some((l, n)) => {
                    out.push((i, Tok::Letter(l)));
                    i += n;
                }
                None => {
                    let end = rest
                        .char_indices()
                        .find(|(_, ch)| !(ch.is_alphanumeric() || *ch == '_'))
                        .map(|(k, _)| k)
                        .unwrap_or(rest.len())
                        .max(c.len_utf8());
                    return Err(Error::UnknownLetter(rest[..end].to_string()));
                }
            },
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.to_string() })
    }

    fn factors(&mut self) -> Result<Vec<Factor>> {
        let mut fs = Vec::new();
        while let Some(f) = self.factor()? {
            fs.push(f);
        }
        Ok(fs)
    }

    fn factor(&mut self) -> Result<Option<Factor>> {
        let Some((_, tok)) = self.toks.get(self.at).cloned() else { return Ok(None) };
        match tok {
            Tok::Letter(l) => {
                self.at += 1;
                Ok(Some(Factor::Letter(l)))
            }
            Tok::Star => {
                self.at += 1;
                Ok(Some(Factor::Star))
            }
            Tok::OpOpen => {
                self.at += 1;
                let inner = self.factors()?;
                if inner.is_empty() {
                    return self.err("empty operator argument");
                }
                self.expect_close()?;
                Ok(Some(Factor::Op(inner)))
            }
            Tok::Open => {
                self.at += 1;
                let inner = self.factors()?;
                if inner.len() != 2 {
                    return self.err("a pair needs exactly two children");
                }
                self.expect_close()?;
                let mut it = inner.into_iter();
                let a = it.next().expect("two");
                let b = it.next().expect("two");
                Ok(Some(Factor::Pair(Box::new(a), Box::new(b))))
            }
            Tok::Close => Ok(None),
        }
    }

    fn expect_close(&mut self) -> Result<()> {
        match self.toks.get(self.at) {
            Some((_, Tok::Close)) => {
                self.at += 1;
                Ok(())
            }
            _ => self.err("expected `)`"),
        }
    }
}

pub(crate) fn parse_factors(s: &str, a: &Alphabet, allow_star: bool) -> Result<Vec<Factor>> {
    let toks = tokenize(s, a, allow_star)?;
    let mut p = Parser { toks, at: 0, end: s.len() };
    let fs = p.factors()?;
    if p.at != p.toks.len() {
        return p.err("unbalanced `)`");
    }
    if fs.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty word".into() });
    }
    Ok(fs)
}

fn factors_to_primes(fs: &[Factor]) -> Result<Vec<Prime>> {
    fs.iter()
        .map(|f| match f {
            Factor::Letter(l) => Ok(Prime::Letter(*l)),
            Factor::Op(inner) => Ok(Prime::Op(BracketedWord::new(factors_to_primes(inner)?))),
            Factor::Pair(..) => Err(Error::Parse { pos: 0, msg: "pair inside an associative word".into() }),
            Factor::Star => Err(Error::Parse { pos: 0, msg: "unexpected `*`".into() }),
        })
        .collect()
}

fn factor_to_na(f: &Factor) -> Result<NaWord> {
    match f {
        Factor::Letter(l) => Ok(NaWord::Leaf(*l)),
        Factor::Op(inner) => match inner.as_slice() {
            [one] => Ok(NaWord::op(factor_to_na(one)?)),
            _ => Err(Error::Parse {
                pos: 0,
                msg: "operator argument in a non-associative word must be one tree".into(),
            }),
        },
        Factor::Pair(a, b) => Ok(NaWord::pair(factor_to_na(a)?, factor_to_na(b)?)),
        Factor::Star => Err(Error::Parse { pos: 0, msg: "unexpected `*`".into() }),
    }
}

fn has_pair(fs: &[Factor]) -> bool {
    fs.iter().any(|f| match f {
        Factor::Pair(..) => true,
        Factor::Op(inner) => has_pair(inner),
        _ => false,
    })
}

/// Result of [`parse_word`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedWord {
    Assoc(BracketedWord),
    NonAssoc(NaWord),
}

/// Words are identifiers separated by whitespace (or packed when unambiguous),
/// `P( ... )` is the operator and `( a b )` a pair. Text without pairs is an
/// associative bracketed word.
pub fn parse_word(s: &str, a: &Alphabet) -> Result<ParsedWord> {
    let fs = parse_factors(s, a, false)?;
    if has_pair(&fs) {
        match fs.as_slice() {
            [one] => Ok(ParsedWord::NonAssoc(factor_to_na(one)?)),
            _ => Err(Error::Parse { pos: 0, msg: "a non-associative word must be a single tree".into() }),
        }
    } else {
        Ok(ParsedWord::Assoc(BracketedWord::new(factors_to_primes(&fs)?)))
    }
}

pub fn parse_assoc(s: &str, a: &Alphabet) -> Result<BracketedWord> {
    match parse_word(s, a)? {
        ParsedWord::Assoc(w) => Ok(w),
        ParsedWord::NonAssoc(_) => Err(Error::Parse { pos: 0, msg: "expected a word without pairs".into() }),
    }
}

/// A single letter or `P(...)` is both; pairs force the non-associative reading.
pub fn parse_na(s: &str, a: &Alphabet) -> Result<NaWord> {
    let fs = parse_factors(s, a, false)?;
    match fs.as_slice() {
        [one] => factor_to_na(one),
        _ => Err(Error::Parse { pos: 0, msg: "a non-associative word must be a single tree".into() }),
    }
}

pub fn parse_star(s: &str, a: &Alphabet) -> Result<StarWord> {
    let fs = parse_factors(s, a, true)?;
    let star = Letter(a.len() as u32);
    fn conv(fs: &[Factor], star: Letter, n: &mut usize) -> Result<Vec<Prime>> {
        fs.iter()
            .map(|f| match f {
                Factor::Letter(l) => Ok(Prime::Letter(*l)),
                Factor::Star => {
                    *n += 1;
                    Ok(Prime::Letter(star))
                }
                Factor::Op(inner) => Ok(Prime::Op(BracketedWord::new(conv(inner, star, n)?))),
                Factor::Pair(..) => Err(Error::Parse { pos: 0, msg: "pair inside a context".into() }),
            })
            .collect()
    }
    let mut n = 0;
    let w = BracketedWord::new(conv(&fs, star, &mut n)?);
    if n != 1 {
        return Err(Error::Parse { pos: 0, msg: format!("a context needs exactly one `*`, found {n}") });
    }
    StarWord::from_marked(&w, star).ok_or_else(|| Error::Parse { pos: 0, msg: "bad context".into() })
}
