//! Special normal words and the two rewriting systems built from a set of
//! monic Lie relations: the Lie system on the Lyndon-Shirshov basis and the
//! associative system on bracketed words.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lyndon::{bracketing_of, is_alsw, is_lsbw, lyndon_factorize, prime_bracketing, shirshov, Tree};
use crate::orders::{lex_cmp, OrderKind, WordOrder};
use crate::poly::{commutator_expand, default_text, LieAlgebra, LiePolynomial, OpPolynomial};
use crate::words::{for_each_segment, Alphabet, BracketedWord, Frame, Letter, NaWord, Prime, SegmentFlow, StarWord};

/// Placeholder letter for `[s̄]` inside a skeleton. Never part of an alphabet.
pub(crate) const HOLE: Letter = Letter(u32::MAX);

/// `q|_p` for a polynomial `p`, extended linearly.
pub fn fill_poly(q: &StarWord, p: &OpPolynomial) -> OpPolynomial {
    p.map_words(|w| q.fill(w))
}

/// Replace every letter `l` by `sub(l)` (or keep it when `None`).
pub fn substitute_letters(
    p: &OpPolynomial,
    order: OrderKind,
    sub: &dyn Fn(Letter) -> Option<OpPolynomial>,
) -> OpPolynomial {
    fn word(w: &[Prime], order: OrderKind, sub: &dyn Fn(Letter) -> Option<OpPolynomial>) -> OpPolynomial {
        let mut acc: Option<OpPolynomial> = None;
        for p in w {
            let f = match p {
                Prime::Letter(l) => sub(*l).unwrap_or_else(|| OpPolynomial::from_word(order, BracketedWord::letter(*l))),
                Prime::Op(inner) => word(inner.primes(), order, sub).wrap(),
            };
            acc = Some(match acc {
                None => f,
                Some(a) => a.mul(&f),
            });
        }
        acc.expect("nonempty word")
    }
    let mut out = OpPolynomial::zero(order);
    for (w, c) in p.iter() {
        out.add_scaled(&word(w.primes(), order, sub), c);
    }
    out
}

/// Bracketing of `q|_u` with the factor holding `u` rebuilt as
/// `[..[[u][c1]]..][cm]`; the hole letter stands for `[u]`.
/// The second component reports whether two tail factors coincided.
pub fn special_skeleton(q: &StarWord, u: &BracketedWord, ord: &dyn WordOrder) -> Result<(NaWord, bool)> {
    if !is_lsbw(u, ord) {
        return Err(Error::Precondition(format!("`{}` is not Lyndon-Shirshov", default_text(u))));
    }
    let w = q.fill(u);
    if !is_lsbw(&w, ord) {
        return Err(Error::Precondition(format!("`{}` is not Lyndon-Shirshov", default_text(&w))));
    }
    let mut repeated = false;
    let t = skeleton_at(q.frames(), u.primes(), ord, &mut repeated)?;
    Ok((t, repeated))
}

fn skeleton_at(frames: &[Frame], u: &[Prime], ord: &dyn WordOrder, repeated: &mut bool) -> Result<NaWord> {
    let fr = &frames[0];
    let cmp = |a: &Prime, b: &Prime| ord.cmp_primes(a, b);
    let i = fr.left.len();
    let mut seq = fr.left.clone();
    if frames.len() == 1 {
        seq.extend(u.iter().cloned());
    } else {
        seq.push(Prime::Op(StarWord::new(frames[1..].to_vec()).fill_primes(u)));
    }
    seq.extend(fr.right.iter().cloned());
    let tree = shirshov(&seq, cmp).ok_or_else(|| Error::NotLyndon(default_text(&BracketedWord::new(seq.clone()))))?;

    if frames.len() > 1 {
        let inner = skeleton_at(&frames[1..], u, ord, repeated)?;
        return build(&tree, &seq, ord, None, &mut |k| (k == i).then(|| NaWord::op(inner.clone())));
    }

    let j = i + u.len();
    let mut best: Option<(usize, usize)> = None;
    collect_spans(&tree, &mut |s, e| {
        if s == i && e >= j && best.is_none_or(|(_, be)| e < be) {
            best = Some((s, e));
        }
    });
    let (_, k) = best.ok_or_else(|| Error::Precondition("no Shirshov factor starts at the hole".into()))?;
    let c = &seq[j..k];
    let mut acc = NaWord::Leaf(HOLE);
    let ranges = lyndon_factorize(c, cmp);
    for pair in ranges.windows(2) {
        match lex_cmp(&c[pair[0].clone()], &c[pair[1].clone()], cmp) {
            std::cmp::Ordering::Greater => {
                return Err(Error::TailOrdering(default_text(&BracketedWord::new(c.to_vec()))));
            }
            std::cmp::Ordering::Equal => *repeated = true,
            std::cmp::Ordering::Less => {}
        }
    }
    for r in ranges {
        let part = BracketedWord::new(c[r].to_vec());
        debug_assert!(is_alsw(part.primes(), cmp));
        acc = NaWord::pair(acc, bracketing_of(&part, ord)?);
    }
    build(&tree, &seq, ord, Some(((i, k), acc)), &mut |_| None)
}

fn collect_spans(t: &Tree, f: &mut impl FnMut(usize, usize)) {
    let (s, e) = t.span();
    f(s, e);
    if let Tree::Pair(a, b) = t {
        collect_spans(a, f);
        collect_spans(b, f);
    }
}

fn build(
    t: &Tree,
    seq: &[Prime],
    ord: &dyn WordOrder,
    replace: Option<((usize, usize), NaWord)>,
    leaf: &mut dyn FnMut(usize) -> Option<NaWord>,
) -> Result<NaWord> {
    if let Some((span, r)) = &replace {
        if t.span() == *span {
            return Ok(r.clone());
        }
    }
    match t {
        Tree::Leaf(k) => match leaf(*k) {
            Some(n) => Ok(n),
            None => prime_bracketing(&seq[*k], ord),
        },
        Tree::Pair(a, b) => {
            let x = build(a, seq, ord, replace.clone(), leaf)?;
            let y = build(b, seq, ord, replace, leaf)?;
            Ok(NaWord::pair(x, y))
        }
    }
}

/// `[q|_s]_{s̄}` for a monic Lie polynomial `s`, in the Lyndon-Shirshov basis.
/// Its leading word is `q|_{s̄}` with coefficient one.
pub fn special_normal_word(alg: &LieAlgebra, q: &StarWord, s: &LiePolynomial) -> Result<LiePolynomial> {
    Ok(special_normal_word_diag(alg, q, s)?.0)
}

pub(crate) fn special_normal_word_diag(
    alg: &LieAlgebra,
    q: &StarWord,
    s: &LiePolynomial,
) -> Result<(LiePolynomial, bool)> {
    let (sbar, lc) = s.leading().ok_or(Error::Zero)?;
    if !num_traits::One::is_one(lc) {
        return Err(Error::Precondition("relation is not monic".into()));
    }
    let order = alg.order();
    let (skel, repeated) = special_skeleton(q, sbar, &order)?;
    let es = alg.expand(s);
    let e = substitute_letters(&commutator_expand(&skel, order), order, &|l| (l == HOLE).then(|| es.clone()));
    let r = alg.straighten(&e)?;
    let w = q.fill(sbar);
    match r.leading() {
        Some((lw, c)) if *lw == w && num_traits::One::is_one(c) => Ok((r, repeated)),
        _ => Err(Error::Precondition(format!(
            "special normal word does not lead with `{}`",
            default_text(&w)
        ))),
    }
}

/// A monic relation with a printable origin.
#[derive(Clone, Debug)]
pub struct Relation {
    pub label: String,
    pub poly: LiePolynomial,
}

impl Relation {
    pub fn lead(&self) -> &BracketedWord {
        self.poly.leading_word().expect("relations are nonzero")
    }
}

/// Where relations come from: a finite list or an identity instantiated on demand.
pub trait RelationSource: Send + Sync {
    fn order(&self) -> OrderKind;

    /// Relations whose leading word is exactly the segment `p`, in a fixed order.
    fn with_lead(&self, p: &[Prime]) -> Result<Vec<Arc<Relation>>>;

    /// Every relation whose leading word has degree at most `bound`.
    fn up_to(&self, a: &Alphabet, bound: u32) -> Result<Vec<Arc<Relation>>> {
        let ord = self.order();
        let mut out = Vec::new();
        for w in crate::lyndon::enumerate_lsbw(a, &ord, bound).iter().flatten() {
            out.extend(self.with_lead(w.primes())?);
        }
        Ok(out)
    }

    fn describe(&self) -> String;
}

/// Finite set of relations, made monic on construction.
pub struct FiniteRelations {
    order: OrderKind,
    rels: Vec<Arc<Relation>>,
    by_lead: HashMap<BracketedWord, Vec<usize>>,
}

impl FiniteRelations {
    pub fn new(order: OrderKind, polys: Vec<LiePolynomial>) -> Result<Self> {
        let mut rels = Vec::new();
        let mut by_lead: HashMap<BracketedWord, Vec<usize>> = HashMap::new();
        for (i, p) in polys.into_iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let poly = p.reorder(order).monic()?;
            by_lead.entry(poly.leading_word().expect("nonzero").clone()).or_default().push(rels.len());
            rels.push(Arc::new(Relation { label: format!("s{}", i + 1), poly }));
        }
        Ok(FiniteRelations { order, rels, by_lead })
    }

    pub fn relations(&self) -> &[Arc<Relation>] {
        &self.rels
    }
}

impl RelationSource for FiniteRelations {
    fn order(&self) -> OrderKind {
        self.order
    }

    fn with_lead(&self, p: &[Prime]) -> Result<Vec<Arc<Relation>>> {
        let w = BracketedWord::new(p.to_vec());
        Ok(self.by_lead.get(&w).map(|ix| ix.iter().map(|&i| self.rels[i].clone()).collect()).unwrap_or_default())
    }

    fn up_to(&self, _a: &Alphabet, bound: u32) -> Result<Vec<Arc<Relation>>> {
        Ok(self.rels.iter().filter(|r| r.lead().degree() <= bound).cloned().collect())
    }

    fn describe(&self) -> String {
        format!("{} relations", self.rels.len())
    }
}

/// Which reducible word to rewrite next, and which match to use there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Largest reducible word, first match in placement order.
    #[default]
    LargestFirst,
    /// Smallest reducible word, last match in placement order.
    SmallestLast,
}

/// One applied rewrite.
#[derive(Clone, Debug, Serialize)]
pub struct RewriteStep {
    pub word: String,
    pub coefficient: String,
    pub context: String,
    pub relation: String,
    pub replacement: String,
}

/// A match of a relation's leading word inside `lhs`.
#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: BracketedWord,
    pub q: StarWord,
    pub rel: Arc<Relation>,
}

/// Lie rewriting: `[q|_{s̄}] ↦ [q|_{s̄}] - [q|_s]_{s̄}`.
pub struct LieSystem {
    alg: Arc<LieAlgebra>,
    src: Arc<dyn RelationSource>,
    matches: Mutex<HashMap<BracketedWord, Arc<Vec<Rule>>>>,
    snw: Mutex<HashMap<(BracketedWord, String), Arc<LiePolynomial>>>,
    repeated_tails: AtomicUsize,
}

impl LieSystem {
    pub fn new(alg: Arc<LieAlgebra>, src: Arc<dyn RelationSource>) -> Self {
        assert_eq!(alg.order(), src.order(), "algebra and relations use different orders");
        LieSystem {
            alg,
            src,
            matches: Mutex::new(HashMap::new()),
            snw: Mutex::new(HashMap::new()),
            repeated_tails: AtomicUsize::new(0),
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn source(&self) -> &Arc<dyn RelationSource> {
        &self.src
    }

    pub fn order(&self) -> OrderKind {
        self.alg.order()
    }

    /// Special normal words built so far whose tail had two equal factors.
    pub fn repeated_tail_count(&self) -> usize {
        self.repeated_tails.load(AtomicOrdering::Relaxed)
    }

    /// Every match inside `t`, in placement order.
    pub fn matches(&self, t: &BracketedWord) -> Result<Arc<Vec<Rule>>> {
        if let Some(m) = self.matches.lock().expect("cache lock").get(t) {
            return Ok(m.clone());
        }
        let found = Arc::new(find_matches(&*self.src, t)?);
        self.matches.lock().expect("cache lock").insert(t.clone(), found.clone());
        Ok(found)
    }

    pub fn is_reducible(&self, t: &BracketedWord) -> Result<bool> {
        Ok(!self.matches(t)?.is_empty())
    }

    /// `[q|_s]_{s̄}` for a rule, cached.
    pub fn special(&self, rule: &Rule) -> Result<Arc<LiePolynomial>> {
        let key = (rule.lhs.clone(), format!("{}@{:?}", rule.rel.label, rule.q));
        if let Some(p) = self.snw.lock().expect("cache lock").get(&key) {
            return Ok(p.clone());
        }
        let (p, rep) = special_normal_word_diag(&self.alg, &rule.q, &rule.rel.poly)?;
        if rep {
            self.repeated_tails.fetch_add(1, AtomicOrdering::Relaxed);
        }
        let p = Arc::new(p);
        self.snw.lock().expect("cache lock").insert(key, p.clone());
        Ok(p)
    }

    fn pick<'r>(&self, rules: &'r [Rule], strategy: Strategy) -> Option<&'r Rule> {
        match strategy {
            Strategy::LargestFirst => rules.first(),
            Strategy::SmallestLast => rules.last(),
        }
    }

    /// Normal form under the given strategy; fails past `step_cap` rewrites.
    pub fn normal_form_with(
        &self,
        f: &LiePolynomial,
        strategy: Strategy,
        step_cap: usize,
        mut trace: Option<&mut Vec<RewriteStep>>,
        a: Option<&Alphabet>,
    ) -> Result<LiePolynomial> {
        let mut f = f.reorder(self.order());
        let mut steps = 0usize;
        let mut cursor: Option<BracketedWord> = None;
        loop {
            let next = match (strategy, &cursor) {
                (Strategy::LargestFirst, None) => f.leading(),
                (Strategy::LargestFirst, Some(c)) => f.next_below(c),
                (Strategy::SmallestLast, None) => f.trailing(),
                (Strategy::SmallestLast, Some(c)) => f.next_above(c),
            };
            let Some((t, c)) = next else { break };
            let (t, c) = (t.clone(), c.clone());
            let rules = self.matches(&t)?;
            let Some(rule) = self.pick(&rules, strategy) else {
                cursor = Some(t);
                continue;
            };
            steps += 1;
            if steps > step_cap {
                return Err(Error::StepCap { cap: step_cap });
            }
            let snw = self.special(rule)?;
            if let (Some(tr), Some(a)) = (trace.as_deref_mut(), a) {
                let mut repl = snw.neg();
                repl.add_term(t.clone(), num_traits::One::one());
                tr.push(RewriteStep {
                    word: bracketing_of(&t, &self.order())?.to_text(a),
                    coefficient: c.to_string(),
                    context: rule.q.to_text(a),
                    relation: rule.rel.label.clone(),
                    replacement: repl.to_text(a),
                });
            }
            f.add_scaled(&snw, &-c);
            // Everything introduced lies below `t`.
            cursor = match strategy {
                Strategy::LargestFirst => Some(t),
                Strategy::SmallestLast => None,
            };
        }
        Ok(f)
    }

    pub fn normal_form(&self, f: &LiePolynomial, step_cap: usize) -> Result<LiePolynomial> {
        self.normal_form_with(f, Strategy::LargestFirst, step_cap, None, None)
    }

    /// Every rule whose left side has degree at most `bound`.
    pub fn rules_up_to(&self, a: &Alphabet, bound: u32) -> Result<Vec<Rule>> {
        let ord = self.order();
        let mut out = Vec::new();
        for t in crate::lyndon::enumerate_lsbw(a, &ord, bound).iter().flatten() {
            out.extend(self.matches(t)?.iter().cloned());
        }
        Ok(out)
    }

    pub fn joinable(&self, f: &LiePolynomial, g: &LiePolynomial, step_cap: usize) -> Result<bool> {
        Ok(self.normal_form(f, step_cap)? == self.normal_form(g, step_cap)?)
    }
}

fn find_matches(src: &dyn RelationSource, t: &BracketedWord) -> Result<Vec<Rule>> {
    let mut out = Vec::new();
    let mut err = None;
    for_each_segment(
        t.primes(),
        &mut |frames, seg| match src.with_lead(seg) {
            Ok(rels) => {
                for rel in rels {
                    out.push(Rule { lhs: t.clone(), q: StarWord::new(frames.clone()), rel });
                }
                SegmentFlow::Continue
            }
            Err(e) => {
                err = Some(e);
                SegmentFlow::Stop
            }
        },
        None,
    );
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Associative rewriting with the expanded relations: `q|_{s̄} ↦ q|_{s̄} - q|_s`.
pub struct AssocSystem {
    alg: Arc<LieAlgebra>,
    src: Arc<dyn RelationSource>,
    matches: Mutex<HashMap<BracketedWord, Arc<Vec<Rule>>>>,
    expanded: Mutex<HashMap<String, Arc<OpPolynomial>>>,
}

impl AssocSystem {
    pub fn new(alg: Arc<LieAlgebra>, src: Arc<dyn RelationSource>) -> Self {
        AssocSystem { alg, src, matches: Mutex::new(HashMap::new()), expanded: Mutex::new(HashMap::new()) }
    }

    pub fn order(&self) -> OrderKind {
        self.alg.order()
    }

    pub fn matches(&self, t: &BracketedWord) -> Result<Arc<Vec<Rule>>> {
        if let Some(m) = self.matches.lock().expect("cache lock").get(t) {
            return Ok(m.clone());
        }
        let found = Arc::new(find_matches(&*self.src, t)?);
        self.matches.lock().expect("cache lock").insert(t.clone(), found.clone());
        Ok(found)
    }

    pub fn expanded(&self, rel: &Relation) -> Arc<OpPolynomial> {
        if let Some(p) = self.expanded.lock().expect("cache lock").get(&rel.label) {
            return p.clone();
        }
        let p = Arc::new(self.alg.expand(&rel.poly));
        self.expanded.lock().expect("cache lock").insert(rel.label.clone(), p.clone());
        p
    }

    pub fn normal_form(&self, f: &OpPolynomial, step_cap: usize) -> Result<OpPolynomial> {
        let mut f = f.reorder(self.order());
        let mut steps = 0usize;
        let mut cursor: Option<BracketedWord> = None;
        loop {
            let next = match &cursor {
                None => f.leading(),
                Some(c) => f.next_below(c),
            };
            let Some((t, c)) = next else { break };
            let (t, c) = (t.clone(), c.clone());
            let rules = self.matches(&t)?;
            let Some(rule) = rules.first() else {
                cursor = Some(t);
                continue;
            };
            steps += 1;
            if steps > step_cap {
                return Err(Error::StepCap { cap: step_cap });
            }
            let r = fill_poly(&rule.q, &self.expanded(&rule.rel));
            f.add_scaled(&r, &-c);
            cursor = Some(t);
        }
        Ok(f)
    }
}
