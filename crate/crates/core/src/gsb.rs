//! Bounded Gröbner-Shirshov basis verification: compositions, their
//! triviality by reduction, irreducible words and the equivalence cross-checks.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lyndon::{bracketing_of, enumerate_lsbw, is_lsbw};
use crate::orders::OrderKind;
use crate::poly::{Coefficient, LiePolynomial, OpPolynomial};
use crate::rewrite::{fill_poly, AssocSystem, LieSystem, Relation, Rule, Strategy};
use crate::words::{Alphabet, BracketedWord, StarWord};

#[derive(Clone, Debug)]
pub struct GsbOptions {
    pub bound: u32,
    /// Explicit rewrite cap; `None` derives it from the input size.
    pub step_cap: Option<usize>,
    pub threads: usize,
    pub crosschecks: bool,
}

impl GsbOptions {
    pub fn new(bound: u32) -> Self {
        GsbOptions { bound, step_cap: None, threads: 1, crosschecks: true }
    }

    /// `LSGSB_THREADS` when set and positive, else 1.
    pub fn threads_from_env(mut self) -> Self {
        self.threads = std::env::var("LSGSB_THREADS")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
            .unwrap_or(1);
        self
    }
}

/// Milliseconds since `start`; wasm has no clock, so it reports zero there.
#[cfg(not(target_arch = "wasm32"))]
struct Stopwatch(std::time::Instant);
#[cfg(target_arch = "wasm32")]
struct Stopwatch;

impl Stopwatch {
    fn start() -> Self {
        #[cfg(not(target_arch = "wasm32"))]
        return Stopwatch(std::time::Instant::now());
        #[cfg(target_arch = "wasm32")]
        return Stopwatch;
    }

    fn elapsed_ms(&self) -> u128 {
        #[cfg(not(target_arch = "wasm32"))]
        return self.0.elapsed().as_millis();
        #[cfg(target_arch = "wasm32")]
        return 0;
    }
}

/// `10 * support * bound^2`, never below 1000.
pub fn step_cap_for(support: usize, bound: u32) -> usize {
    (10 * support.max(1) * (bound as usize).pow(2)).max(1000)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CompositionKind {
    Intersection,
    Including,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompositionReport {
    pub kind: CompositionKind,
    pub w: String,
    pub f: String,
    pub g: String,
    pub context: String,
    /// `trivial`, or `nontrivial` when reduction leaves a residue.
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckSummary {
    pub checked: usize,
    pub failed: usize,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckSummary {
    fn new(checked: usize, failures: Vec<String>) -> Self {
        CheckSummary { checked, failed: failures.len(), verdict: failures.is_empty(), witness: failures.into_iter().next() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCount {
    pub degree: u32,
    pub ls_words: usize,
    pub irreducible: usize,
    pub ideal_rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CdCheck {
    pub degrees: Vec<DegreeCount>,
    /// Pivots whose leading word is irreducible.
    pub irreducible_pivots: usize,
    pub verdict: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Crosschecks {
    pub compositions_trivial: bool,
    pub forks_joinable: CheckSummary,
    pub strategy_independent: CheckSummary,
    /// Skipped when some composition is nontrivial.
    pub cd_identity: Option<CdCheck>,
    pub associative: CheckSummary,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GsbReport {
    pub opi: String,
    pub order: OrderKind,
    pub alphabet: Vec<String>,
    pub degree_bound: u32,
    pub relations: usize,
    pub compositions: Vec<CompositionReport>,
    /// `GSB` or `NOT`.
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence_crosschecks: Option<Crosschecks>,
    pub repeated_tail_factors: usize,
    pub step_cap: usize,
    pub elapsed_ms: u128,
}

impl GsbReport {
    pub fn is_gsb(&self) -> bool {
        self.verdict == "GSB"
    }

    pub fn first_residue(&self) -> Option<&CompositionReport> {
        self.compositions.iter().find(|c| c.residue.is_some())
    }
}

/// One composition, before evaluation.
#[derive(Clone)]
pub struct Composition {
    pub kind: CompositionKind,
    pub w: BracketedWord,
    /// Including: `f - [q|_g]`. Intersection: `[f u] - [v g]` as two rules on `w`.
    pub left: Rule,
    pub right: Rule,
}

fn hole_rule(rel: &Arc<Relation>) -> Rule {
    Rule { lhs: rel.lead().clone(), q: StarWord::hole(), rel: rel.clone() }
}

/// Including compositions `w = f̄ = q|_{ḡ}` and top-level intersections
/// `w = f̄u = vḡ` with `deg w <= bound`. `lie` demands Lyndon-Shirshov `w`.
fn find_compositions(
    rels: &[Arc<Relation>],
    matches: &dyn Fn(&BracketedWord) -> Result<Arc<Vec<Rule>>>,
    ord: OrderKind,
    bound: u32,
    lie: bool,
) -> Result<Vec<Composition>> {
    let mut out = Vec::new();
    for f in rels {
        for rule in matches(f.lead())?.iter() {
            if rule.q.is_hole() && rule.rel.label <= f.label {
                continue;
            }
            out.push(Composition { kind: CompositionKind::Including, w: f.lead().clone(), left: hole_rule(f), right: rule.clone() });
        }
    }
    let mut by_first: HashMap<&crate::words::Prime, Vec<&Arc<Relation>>> = HashMap::new();
    for g in rels {
        by_first.entry(&g.lead().primes()[0]).or_default().push(g);
    }
    for f in rels {
        let fp = f.lead().primes();
        for k in 1..fp.len() {
            let Some(gs) = by_first.get(&fp[fp.len() - k]) else { continue };
            for g in gs {
                let gp = g.lead().primes();
                if gp.len() <= k || gp[..k] != fp[fp.len() - k..] {
                    continue;
                }
                let mut wp = fp.to_vec();
                wp.extend_from_slice(&gp[k..]);
                let w = BracketedWord::new(wp);
                if w.degree() > bound || (lie && !is_lsbw(&w, &ord)) {
                    continue;
                }
                let left = Rule { lhs: w.clone(), q: StarWord::flat(Vec::new(), gp[k..].to_vec()), rel: f.clone() };
                let right = Rule { lhs: w.clone(), q: StarWord::flat(fp[..fp.len() - k].to_vec(), Vec::new()), rel: (*g).clone() };
                out.push(Composition { kind: CompositionKind::Intersection, w, left, right });
            }
        }
    }
    Ok(out)
}

/// Run `job` over `items` on up to `threads` scoped threads, keeping input order.
fn par_map<T: Sync, R: Send>(items: &[T], threads: usize, job: &(dyn Fn(&T) -> R + Sync)) -> Vec<R> {
    if threads <= 1 || items.len() < 2 {
        return items.iter().map(job).collect();
    }
    let chunk = items.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(move || c.iter().map(job).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn support_size(rels: &[Arc<Relation>]) -> usize {
    rels.iter().map(|r| r.poly.len()).max().unwrap_or(1)
}

/// Compositions with their verdicts under the Lie rewriting system.
pub fn lie_compositions(sys: &LieSystem, a: &Alphabet, opts: &GsbOptions, cap: usize) -> Result<Vec<CompositionReport>> {
    let rels = sys.source().up_to(a, opts.bound)?;
    let comps = find_compositions(&rels, &|t| sys.matches(t), sys.order(), opts.bound, true)?;
    let results = par_map(&comps, opts.threads, &|c: &Composition| -> Result<CompositionReport> {
        let value = sys.special(&c.left)?.sub(&*sys.special(&c.right)?);
        let r = sys.normal_form(&value, cap)?;
        report(c, a, sys.order(), (!r.is_zero()).then(|| r.to_text(a)))
    });
    results.into_iter().collect()
}

fn report(c: &Composition, a: &Alphabet, ord: OrderKind, residue: Option<String>) -> Result<CompositionReport> {
    let context = match c.kind {
        CompositionKind::Including => c.right.q.to_text(a),
        CompositionKind::Intersection => format!("{} | {}", c.left.q.to_text(a), c.right.q.to_text(a)),
    };
    let w = match bracketing_of(&c.w, &ord) {
        Ok(t) => t.to_text(a),
        Err(_) => c.w.to_text(a),
    };
    Ok(CompositionReport {
        kind: c.kind,
        w,
        f: c.left.rel.label.clone(),
        g: c.right.rel.label.clone(),
        context,
        verdict: if residue.is_some() { "nontrivial" } else { "trivial" },
        residue,
    })
}

/// Compositions of the commutator-expanded relations under associative rewriting.
pub fn assoc_compositions(sys: &AssocSystem, lie: &LieSystem, a: &Alphabet, opts: &GsbOptions, cap: usize) -> Result<Vec<CompositionReport>> {
    let rels = lie.source().up_to(a, opts.bound)?;
    let comps = find_compositions(&rels, &|t| sys.matches(t), sys.order(), opts.bound, false)?;
    let side = |r: &Rule| -> OpPolynomial { fill_poly(&r.q, &sys.expanded(&r.rel)) };
    let results = par_map(&comps, opts.threads, &|c: &Composition| -> Result<CompositionReport> {
        let value = side(&c.left).sub(&side(&c.right));
        let r = sys.normal_form(&value, cap)?;
        report(c, a, sys.order(), (!r.is_zero()).then(|| r.to_text(a)))
    });
    results.into_iter().collect()
}

/// Lyndon-Shirshov words up to the bound containing no leading word, by degree.
pub fn enumerate_irr(sys: &LieSystem, a: &Alphabet, bound: u32) -> Result<Vec<Vec<BracketedWord>>> {
    let ord = sys.order();
    enumerate_lsbw(a, &ord, bound)
        .into_iter()
        .map(|ws| {
            let mut keep = Vec::new();
            for w in ws {
                if !sys.is_reducible(&w)? {
                    keep.push(w);
                }
            }
            Ok(keep)
        })
        .collect()
}

/// Every word with two or more matches: all one-step reducts share a normal form.
pub fn check_forks(sys: &LieSystem, a: &Alphabet, opts: &GsbOptions, cap: usize) -> Result<CheckSummary> {
    let ord = sys.order();
    let words: Vec<BracketedWord> = enumerate_lsbw(a, &ord, opts.bound).into_iter().flatten().collect();
    let results = par_map(&words, opts.threads, &|t: &BracketedWord| -> Result<Option<(usize, Option<String>)>> {
        let rules = sys.matches(t)?;
        if rules.len() < 2 {
            return Ok(None);
        }
        let mut first: Option<LiePolynomial> = None;
        for rule in rules.iter() {
            let mut reduct = sys.special(rule)?.neg();
            reduct.add_term(t.clone(), Coefficient::one());
            let nf = sys.normal_form(&reduct, cap)?;
            match &first {
                None => first = Some(nf),
                Some(f0) if *f0 != nf => {
                    return Ok(Some((1, Some(format!("{} via {} at {}", t.to_text(a), rule.rel.label, rule.q.to_text(a))))))
                }
                Some(_) => {}
            }
        }
        Ok(Some((1, None)))
    });
    let mut checked = 0;
    let mut failures = Vec::new();
    for r in results {
        if let Some((n, fail)) = r? {
            checked += n;
            failures.extend(fail);
        }
    }
    Ok(CheckSummary::new(checked, failures))
}

/// Largest-first and smallest-last reduction agree on every reducible basis word.
pub fn check_strategies(sys: &LieSystem, a: &Alphabet, opts: &GsbOptions, cap: usize) -> Result<CheckSummary> {
    let ord = sys.order();
    let words: Vec<BracketedWord> = enumerate_lsbw(a, &ord, opts.bound).into_iter().flatten().collect();
    let results = par_map(&words, opts.threads, &|t: &BracketedWord| -> Result<Option<Option<String>>> {
        if !sys.is_reducible(t)? {
            return Ok(None);
        }
        let f = sys.algebra().basis(t)?;
        let x = sys.normal_form_with(&f, Strategy::LargestFirst, cap, None, None)?;
        let y = sys.normal_form_with(&f, Strategy::SmallestLast, cap, None, None)?;
        Ok(Some((x != y).then(|| t.to_text(a))))
    });
    let mut checked = 0;
    let mut failures = Vec::new();
    for r in results {
        if let Some(fail) = r? {
            checked += 1;
            failures.extend(fail);
        }
    }
    Ok(CheckSummary::new(checked, failures))
}

/// Gaussian elimination over the special normal words of every rule up to the
/// bound: each pivot must sit on a reducible word, so that per degree
/// `#LS = #Irr + rank`.
///
/// Under `Dt` a row may carry terms of higher degree than its lead, so rows
/// are taken up to `bound + slack` where `slack` is the largest such excess
/// seen at the bound; only pivots of degree at most `bound` are counted.
pub fn cd_crosscheck(sys: &LieSystem, a: &Alphabet, bound: u32) -> Result<CdCheck> {
    let mut slack = 0;
    for rule in sys.rules_up_to(a, bound)? {
        let row = sys.special(&rule)?;
        let lead = row.leading_word().map_or(0, |w| w.degree());
        let top = row.words().map(|w| w.degree()).max().unwrap_or(0);
        slack = slack.max(top.saturating_sub(lead));
    }
    let mut pivots: HashMap<BracketedWord, LiePolynomial> = HashMap::new();
    for rule in sys.rules_up_to(a, bound + slack)? {
        let mut row = (*sys.special(&rule)?).clone();
        while let Some((lw, c)) = row.leading().map(|(w, c)| (w.clone(), c.clone())) {
            match pivots.get(&lw) {
                Some(p) => row.add_scaled(p, &-c),
                None => {
                    pivots.insert(lw, row.monic()?);
                    break;
                }
            }
        }
    }
    let mut irreducible_pivots = 0;
    let mut rank_by_degree = vec![0usize; bound as usize + 1];
    for w in pivots.keys().filter(|w| w.degree() <= bound) {
        if !sys.is_reducible(w)? {
            irreducible_pivots += 1;
        }
        if let Some(r) = rank_by_degree.get_mut(w.degree() as usize) {
            *r += 1;
        }
    }
    let ls = enumerate_lsbw(a, &sys.order(), bound);
    let irr = enumerate_irr(sys, a, bound)?;
    let degrees: Vec<DegreeCount> = (1..=bound as usize)
        .map(|d| DegreeCount { degree: d as u32, ls_words: ls[d].len(), irreducible: irr[d].len(), ideal_rank: rank_by_degree[d] })
        .collect();
    let verdict = irreducible_pivots == 0 && degrees.iter().all(|d| d.ls_words == d.irreducible + d.ideal_rank);
    Ok(CdCheck { degrees, irreducible_pivots, verdict })
}

/// `count` seeded random combinations of special normal words of degree at
/// most `bound`, some bracketed with a letter; returns those that fail to
/// reduce to zero.
pub fn random_ideal_elements(sys: &LieSystem, a: &Alphabet, bound: u32, count: usize, seed: u64, cap: usize) -> Result<Vec<String>> {
    let rules = sys.rules_up_to(a, bound)?;
    if rules.is_empty() {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..count {
        let mut f = LiePolynomial::zero(sys.order());
        for _ in 0..rng.gen_range(1..=4) {
            let rule = &rules[rng.gen_range(0..rules.len())];
            let c: i64 = rng.gen_range(-5..=5);
            let mut g = (*sys.special(rule)?).clone();
            if rule.lhs.degree() < bound && rng.gen_bool(0.5) {
                let l = BracketedWord::letter(crate::words::Letter(rng.gen_range(0..a.len() as u32)));
                g = sys.algebra().bracket(&g, &sys.algebra().basis(&l)?);
            }
            f.add_scaled(&g, &Coefficient::from_integer(c.into()));
        }
        let r = sys.normal_form(&f, cap)?;
        if !r.is_zero() {
            failures.push(f.to_text(a));
        }
    }
    Ok(failures)
}

/// Check every composition with `deg w <= bound`, plus the cross-checks when asked.
pub fn check_gsb(sys: &LieSystem, a: &Alphabet, opts: &GsbOptions) -> Result<GsbReport> {
    let clock = Stopwatch::start();
    let rels = sys.source().up_to(a, opts.bound)?;
    let cap = opts.step_cap.unwrap_or_else(|| step_cap_for(support_size(&rels), opts.bound));
    let compositions = lie_compositions(sys, a, opts, cap)?;
    let trivial = compositions.iter().all(|c| c.residue.is_none());
    let equivalence_crosschecks = if opts.crosschecks {
        let forks = check_forks(sys, a, opts, cap)?;
        let strategy = check_strategies(sys, a, opts, cap)?;
        let cd = if trivial { Some(cd_crosscheck(sys, a, opts.bound)?) } else { None };
        let assoc_sys = AssocSystem::new(sys.algebra().clone(), sys.source().clone());
        let assoc = assoc_compositions(&assoc_sys, sys, a, opts, cap)?;
        let assoc_fail: Vec<String> = assoc.iter().filter_map(|c| c.residue.as_ref().map(|r| format!("{}: {r}", c.w))).collect();
        let associative = CheckSummary::new(assoc.len(), assoc_fail);
        let agree = forks.verdict == trivial
            && strategy.verdict == trivial
            && cd.as_ref().is_none_or(|c| c.verdict)
            && associative.verdict == trivial;
        Some(Crosschecks {
            compositions_trivial: trivial,
            forks_joinable: forks,
            strategy_independent: strategy,
            cd_identity: cd,
            associative,
            agree,
        })
    } else {
        None
    };
    Ok(GsbReport {
        opi: sys.source().describe(),
        order: sys.order(),
        alphabet: a.names().to_vec(),
        degree_bound: opts.bound,
        relations: rels.len(),
        verdict: if trivial { "GSB" } else { "NOT" },
        compositions,
        equivalence_crosschecks,
        repeated_tail_factors: sys.repeated_tail_count(),
        step_cap: cap,
        elapsed_ms: clock.elapsed_ms(),
    })
}

/// A zero relation is rejected before it can reach a system.
pub fn ensure_nonzero(p: &LiePolynomial) -> Result<()> {
    if p.is_zero() {
        Err(Error::Zero)
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opi::{differential_bce, rota_baxter_weight, IdentityRelations};
    use crate::poly::{int, LieAlgebra};
    use crate::rewrite::FiniteRelations;

    fn identity_system(o: crate::opi::Olpi, a: &Alphabet) -> LieSystem {
        let alg = Arc::new(LieAlgebra::new(o.order));
        let src = Arc::new(IdentityRelations::new(Arc::new(o), alg.clone(), a.clone()));
        LieSystem::new(alg, src)
    }

    #[test]
    fn empty_system_is_a_basis_with_every_word_irreducible() {
        let a = Alphabet::parse_list("x,y").unwrap();
        let alg = Arc::new(LieAlgebra::new(OrderKind::Dl));
        let sys = LieSystem::new(alg, Arc::new(FiniteRelations::new(OrderKind::Dl, vec![]).unwrap()));
        let r = check_gsb(&sys, &a, &GsbOptions::new(4)).unwrap();
        assert!(r.is_gsb() && r.compositions.is_empty());
        assert!(r.equivalence_crosschecks.unwrap().agree);
        let irr = enumerate_irr(&sys, &a, 4).unwrap();
        assert_eq!(irr, enumerate_lsbw(&a, &OrderKind::Dl, 4));
    }

    #[test]
    fn rota_baxter_overlap_is_found() {
        let a = Alphabet::parse_list("x,y,z").unwrap();
        let sys = identity_system(rota_baxter_weight(OrderKind::Dl, int(1)), &a);
        let rels = sys.source().up_to(&a, 6).unwrap();
        let comps = find_compositions(&rels, &|t| sys.matches(t), OrderKind::Dl, 6, true).unwrap();
        assert!(comps.iter().any(|c| c.kind == CompositionKind::Intersection && c.w.to_text(&a) == "P(x) P(y) P(z)"));
    }

    #[test]
    fn broken_differential_candidate_fails_everywhere() {
        let a = Alphabet::parse_list("x,y,z").unwrap();
        let sys = identity_system(differential_bce(OrderKind::Dt, int(2), int(0), int(0)), &a);
        let r = check_gsb(&sys, &a, &GsbOptions::new(4)).unwrap();
        assert!(!r.is_gsb());
        assert!(r.first_residue().is_some());
        let x = r.equivalence_crosschecks.unwrap();
        assert!(x.agree, "{x:?}");
        assert!(x.cd_identity.is_none());
    }

    #[test]
    fn weight_one_differential_is_a_basis() {
        let a = Alphabet::parse_list("x,y,z").unwrap();
        let sys = identity_system(differential_bce(OrderKind::Dt, int(1), int(0), int(1)), &a);
        let r = check_gsb(&sys, &a, &GsbOptions::new(4)).unwrap();
        assert!(r.is_gsb(), "{:?}", r.first_residue());
        assert!(r.equivalence_crosschecks.unwrap().agree);
        let failures = random_ideal_elements(&sys, &a, 4, 20, 7, 10_000).unwrap();
        assert!(failures.is_empty());
    }
}
