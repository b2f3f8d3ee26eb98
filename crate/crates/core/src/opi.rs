//! Operated Lie polynomial identities in two variables, their instance sets
//! and the differential and Rota-Baxter type checks.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lyndon::{enumerate_lsbw, is_lsbw};
use crate::orders::{prime_lex, OrderKind, WordOrder};
use crate::poly::{parse_coefficient, Coefficient, LieAlgebra, LiePolynomial};
use crate::rewrite::{substitute_letters, LieSystem, Relation, RelationSource};
use crate::words::{for_each_segment, parse_assoc, parse_na, Alphabet, BracketedWord, Prime, SegmentFlow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `⌊(xy)⌋ - N(x, y)`, leading word `⌊xy⌋`.
    Diff,
    /// `(⌊x⌋⌊y⌋) - ⌊B(x, y)⌋`, leading word `⌊x⌋⌊y⌋`.
    Rb,
    /// `(⌊x⌋⌊y⌋) - ⌊(x⌊y⌋)⌋ - ⌊(⌊x⌋y)⌋ - λ(xy)`.
    Modrb,
    /// Any identity; its own leading word is the shape.
    Raw,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Diff => "diff",
            Family::Rb => "rb",
            Family::Modrb => "modrb",
            Family::Raw => "raw",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "diff" => Ok(Family::Diff),
            "rb" => Ok(Family::Rb),
            "modrb" => Ok(Family::Modrb),
            "raw" => Ok(Family::Raw),
            _ => Err(Error::Invalid(format!("unknown family `{s}` (diff, rb, modrb, raw)"))),
        }
    }

    /// The order the family's leading-word shape needs.
    pub fn required_order(self) -> Option<OrderKind> {
        match self {
            Family::Diff => Some(OrderKind::Dt),
            Family::Rb | Family::Modrb => Some(OrderKind::Dl),
            Family::Raw => None,
        }
    }
}

/// Named numeric parameters; `λ` is stored as `lambda`.
pub type Params = BTreeMap<String, Coefficient>;

/// `b=1,c=0,λ=-1/2`.
pub fn parse_params(s: &str) -> Result<Params> {
    let mut out = Params::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("parameter `{part}` needs `=`")))?;
        let k = match k.trim() {
            "λ" | "lambda" => "lambda".to_string(),
            other => other.to_string(),
        };
        out.insert(k, parse_coefficient(v)?);
    }
    Ok(out)
}

fn param(p: &Params, k: &str, default: i64) -> Coefficient {
    p.get(k).cloned().unwrap_or_else(|| Coefficient::from_integer(default.into()))
}

/// A two-variable identity `φ(x, y)` with `x ≻ y`.
#[derive(Clone, Debug)]
pub struct Olpi {
    pub name: String,
    pub family: Family,
    pub order: OrderKind,
    pub vars: Alphabet,
    pub phi: LiePolynomial,
    /// Leading monomial pattern: `⌊xy⌋` or `⌊x⌋⌊y⌋`, or the raw leading word.
    pub shape: BracketedWord,
    /// `N` for the differential family, `B` for the Rota-Baxter family.
    pub core: Option<LiePolynomial>,
    pub params: Params,
}

pub fn variables() -> Alphabet {
    Alphabet::parse_list("x,y").expect("static")
}

/// Sum of `c * [t]` over non-associative words in the variables.
fn combination(alg: &LieAlgebra, terms: &[(Coefficient, &str)]) -> LiePolynomial {
    let vars = variables();
    let mut p = LiePolynomial::zero(alg.order());
    for (c, t) in terms {
        let na = parse_na(t, &vars).expect("static term");
        p.add_scaled(&alg.straighten_na(&na), c);
    }
    p
}

impl Olpi {
    pub fn differential(name: &str, order: OrderKind, n: LiePolynomial, params: Params) -> Olpi {
        let alg = LieAlgebra::new(order);
        let vars = variables();
        let shape = parse_assoc("P(x y)", &vars).expect("static");
        let phi = combination(&alg, &[(Coefficient::one(), "P((x y))")]).sub(&n);
        Olpi { name: name.into(), family: Family::Diff, order, vars, phi, shape, core: Some(n), params }
    }

    pub fn rota_baxter(name: &str, order: OrderKind, b: LiePolynomial, params: Params) -> Olpi {
        let alg = LieAlgebra::new(order);
        let vars = variables();
        let shape = parse_assoc("P(x) P(y)", &vars).expect("static");
        let phi = combination(&alg, &[(Coefficient::one(), "(P(x) P(y))")]).sub(&b.apply_operator());
        Olpi { name: name.into(), family: Family::Rb, order, vars, phi, shape, core: Some(b), params }
    }

    pub fn modified_rb(order: OrderKind, lambda: Coefficient) -> Olpi {
        let alg = LieAlgebra::new(order);
        let one = Coefficient::one();
        let phi = combination(
            &alg,
            &[
                (one.clone(), "(P(x) P(y))"),
                (-one.clone(), "P((x P(y)))"),
                (-one, "P((P(x) y))"),
                (-lambda.clone(), "(x y)"),
            ],
        );
        let vars = variables();
        let shape = parse_assoc("P(x) P(y)", &vars).expect("static");
        let mut params = Params::new();
        params.insert("lambda".into(), lambda);
        Olpi { name: "modified-rota-baxter".into(), family: Family::Modrb, order, vars, phi, shape, core: None, params }
    }

    pub fn raw(name: &str, order: OrderKind, phi: LiePolynomial) -> Result<Olpi> {
        let shape = phi.leading_word().ok_or(Error::Zero)?.clone();
        Ok(Olpi { name: name.into(), family: Family::Raw, order, vars: variables(), phi, shape, core: None, params: Params::new() })
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    /// Every monomial of the expansion holds each variable exactly once.
    pub fn is_multilinear(&self) -> bool {
        multilinear(&self.phi, self.arity())
    }

    /// `φ(args)` evaluated in `alg`.
    pub fn instantiate(&self, alg: &LieAlgebra, args: &[LiePolynomial]) -> Result<LiePolynomial> {
        evaluate(&self.phi, alg, args)
    }

    pub fn to_text(&self) -> String {
        self.phi.to_text(&self.vars)
    }
}

fn multilinear(p: &LiePolynomial, arity: usize) -> bool {
    let e = LieAlgebra::new(p.order()).expand(p);
    let ok = e.words().all(|w| {
        let mut counts = vec![0usize; arity];
        count_letters(w.primes(), &mut counts);
        counts.iter().all(|&c| c == 1)
    });
    ok
}

fn count_letters(ps: &[Prime], counts: &mut [usize]) {
    for p in ps {
        match p {
            Prime::Letter(l) => {
                if let Some(c) = counts.get_mut(l.0 as usize) {
                    *c += 1;
                }
            }
            Prime::Op(w) => count_letters(w.primes(), counts),
        }
    }
}

/// Substitute Lie polynomials for the variables of a pattern polynomial.
pub fn evaluate(pattern: &LiePolynomial, alg: &LieAlgebra, args: &[LiePolynomial]) -> Result<LiePolynomial> {
    let pat_alg = LieAlgebra::new(pattern.order());
    let e = pat_alg.expand(pattern).reorder(alg.order());
    let eargs: Vec<_> = args.iter().map(|a| alg.expand(a)).collect();
    let mut max_var = 0usize;
    for w in e.words() {
        let mut counts = vec![0usize; 64];
        count_letters(w.primes(), &mut counts);
        if let Some(m) = counts.iter().rposition(|&c| c > 0) {
            max_var = max_var.max(m + 1);
        }
    }
    if max_var > args.len() {
        return Err(Error::Arity { expected: max_var, got: args.len() });
    }
    let s = substitute_letters(&e, alg.order(), &|l| eargs.get(l.0 as usize).cloned());
    alg.straighten(&s)
}

/// Bindings of the pattern's variables to nonempty runs of primes at the same level.
fn match_shape(pat: &[Prime], w: &[Prime], bind: Vec<Option<Vec<Prime>>>) -> Vec<Vec<Option<Vec<Prime>>>> {
    let Some(first) = pat.first() else {
        return if w.is_empty() { vec![bind] } else { Vec::new() };
    };
    if w.is_empty() {
        return Vec::new();
    }
    match first {
        Prime::Letter(v) => {
            let v = v.0 as usize;
            let mut out = Vec::new();
            for k in 1..=w.len() {
                let mut b = bind.clone();
                match &b[v] {
                    Some(prev) if prev.as_slice() != &w[..k] => continue,
                    Some(_) => {}
                    None => b[v] = Some(w[..k].to_vec()),
                }
                out.extend(match_shape(&pat[1..], &w[k..], b));
            }
            out
        }
        Prime::Op(inner) => {
            let Prime::Op(wi) = &w[0] else { return Vec::new() };
            let mut out = Vec::new();
            for b in match_shape(inner.primes(), wi.primes(), bind) {
                out.extend(match_shape(&pat[1..], &w[1..], b));
            }
            out
        }
    }
}

/// Lyndon-Shirshov argument tuples `args` with `shape(args) = p`.
pub fn shape_bindings(shape: &BracketedWord, arity: usize, p: &[Prime], ord: &dyn WordOrder) -> Vec<Vec<BracketedWord>> {
    match_shape(shape.primes(), p, vec![None; arity])
        .into_iter()
        .filter_map(|b| b.into_iter().map(|x| x.map(BracketedWord::new)).collect::<Option<Vec<_>>>())
        .filter(|args| args.iter().all(|u| is_lsbw(u, ord)))
        .collect()
}

/// Does `t` contain a Lyndon-Shirshov segment of the given shape?
pub fn shape_occurs(shape: &BracketedWord, arity: usize, t: &BracketedWord, ord: &dyn WordOrder) -> bool {
    let mut hit = false;
    for_each_segment(
        t.primes(),
        &mut |_, seg| {
            if is_lsbw(&BracketedWord::new(seg.to_vec()), ord) && !shape_bindings(shape, arity, seg, ord).is_empty() {
                hit = true;
                return SegmentFlow::Stop;
            }
            SegmentFlow::Continue
        },
        None,
    );
    hit
}

fn collect_shapes<'a>(
    arity: usize,
    ls: &'a [BracketedWord],
    budget: u32,
    args: &mut Vec<&'a BracketedWord>,
    emit: &mut dyn FnMut(&[&BracketedWord]),
) {
    if args.len() == arity {
        emit(args);
        return;
    }
    let used: u32 = args.iter().map(|u| u.degree()).sum();
    for u in ls {
        if used + u.degree() <= budget {
            args.push(u);
            collect_shapes(arity, ls, budget, args, emit);
            args.pop();
        }
    }
}

/// The shape with each variable replaced by its argument's primes.
fn fill_shape(pat: &[Prime], args: &[&BracketedWord]) -> Vec<Prime> {
    let mut out = Vec::new();
    for p in pat {
        match p {
            Prime::Letter(v) => out.extend(args[v.0 as usize].primes().iter().cloned()),
            Prime::Op(inner) => out.push(Prime::op(BracketedWord::new(fill_shape(inner.primes(), args)))),
        }
    }
    out
}

/// Instances `φ([u], [v])` whose shape word `shape(u, v)` is Lyndon-Shirshov.
pub struct IdentityRelations {
    olpi: Arc<Olpi>,
    alg: Arc<LieAlgebra>,
    alphabet: Alphabet,
    cache: Mutex<HashMap<BracketedWord, Vec<Arc<Relation>>>>,
}

impl IdentityRelations {
    pub fn new(olpi: Arc<Olpi>, alg: Arc<LieAlgebra>, alphabet: Alphabet) -> Self {
        assert_eq!(olpi.order, alg.order());
        IdentityRelations { olpi, alg, alphabet, cache: Mutex::new(HashMap::new()) }
    }

    pub fn olpi(&self) -> &Arc<Olpi> {
        &self.olpi
    }
}

impl RelationSource for IdentityRelations {
    fn order(&self) -> OrderKind {
        self.alg.order()
    }

    fn with_lead(&self, p: &[Prime]) -> Result<Vec<Arc<Relation>>> {
        let w = BracketedWord::new(p.to_vec());
        if let Some(r) = self.cache.lock().expect("cache lock").get(&w) {
            return Ok(r.clone());
        }
        let ord = self.order();
        let mut out = Vec::new();
        if is_lsbw(&w, &ord) {
            for args in shape_bindings(&self.olpi.shape, self.olpi.arity(), p, &ord) {
                let basis: Vec<LiePolynomial> = args.iter().map(|u| self.alg.basis(u)).collect::<Result<_>>()?;
                let inst = self.olpi.instantiate(&self.alg, &basis)?;
                let label = format!(
                    "phi({})",
                    args.iter().map(|u| u.to_text(&self.alphabet)).collect::<Vec<_>>().join(", ")
                );
                let Some(lead) = inst.leading_word() else { continue };
                if *lead != w {
                    return Err(Error::OrderHypothesis {
                        family: self.olpi.name.clone(),
                        order: ord.to_string(),
                        instance: label,
                        expected: w.to_text(&self.alphabet),
                        found: lead.to_text(&self.alphabet),
                    });
                }
                out.push(Arc::new(Relation { label, poly: inst.monic()? }));
            }
        }
        self.cache.lock().expect("cache lock").insert(w, out.clone());
        Ok(out)
    }

    /// Enumerates argument tuples rather than every word up to the bound.
    fn up_to(&self, a: &Alphabet, bound: u32) -> Result<Vec<Arc<Relation>>> {
        let ord = self.order();
        let shape = &self.olpi.shape;
        let extra = shape.degree() - shape.letter_degree();
        if bound <= extra {
            return Ok(Vec::new());
        }
        let ls: Vec<BracketedWord> = enumerate_lsbw(a, &ord, bound - extra).into_iter().flatten().collect();
        let mut leads = std::collections::BTreeSet::new();
        let mut args: Vec<&BracketedWord> = Vec::new();
        collect_shapes(self.olpi.arity(), &ls, bound - extra, &mut args, &mut |xs| {
            let w = BracketedWord::new(fill_shape(shape.primes(), xs));
            if w.degree() <= bound && is_lsbw(&w, &ord) {
                leads.insert(w);
            }
        });
        let mut out = Vec::new();
        for w in leads {
            out.extend(self.with_lead(w.primes())?);
        }
        Ok(out)
    }

    fn describe(&self) -> String {
        format!("{} = {}", self.olpi.name, self.olpi.to_text())
    }
}

/// Build an identity by family and parameters.
///
/// `diff`: `b, c, e` (or `lambda` as the weight with `b = 1, c = 0`);
/// `diff-ce`: `c, e`; `rb`: weight `lambda` or a catalog entry; `modrb`: `lambda`.
pub fn build_identity(family: Family, entry: Option<&str>, params: &Params, order: OrderKind) -> Result<Olpi> {
    match (family, entry) {
        (Family::Diff, None | Some("differential")) => {
            let lambda = params.get("lambda").cloned();
            let b = param(params, "b", 1);
            let c = param(params, "c", 0);
            let e = lambda.unwrap_or_else(|| param(params, "e", 0));
            Ok(differential_bce(order, b, c, e))
        }
        (Family::Diff, Some("diff-ce")) => Ok(differential_ce(order, param(params, "c", 1), param(params, "e", 1))),
        (Family::Rb, None | Some("rota-baxter")) => Ok(rota_baxter_weight(order, param(params, "lambda", 0))),
        (Family::Rb, Some(name)) => rb_entry(name, order),
        (Family::Modrb, _) => Ok(Olpi::modified_rb(order, param(params, "lambda", 0))),
        (f, Some(e)) => Err(Error::Invalid(format!("family `{}` has no entry `{e}`", f.name()))),
        (Family::Raw, None) => Err(Error::Invalid("the raw family needs an explicit identity".into())),
    }
}

pub fn differential_bce(order: OrderKind, b: Coefficient, c: Coefficient, e: Coefficient) -> Olpi {
    let alg = LieAlgebra::new(order);
    let n = combination(&alg, &[(b.clone(), "(x P(y))"), (b.clone(), "(P(x) y)"), (c.clone(), "(P(x) P(y))"), (e.clone(), "(x y)")]);
    let mut params = Params::new();
    params.insert("b".into(), b);
    params.insert("c".into(), c);
    params.insert("e".into(), e);
    Olpi::differential("differential", order, n, params)
}

pub fn differential_ce(order: OrderKind, c: Coefficient, e: Coefficient) -> Olpi {
    let alg = LieAlgebra::new(order);
    let ce = &c * &e;
    let n = combination(
        &alg,
        &[
            (&ce * &e, "(y x)"),
            (e.clone(), "(x y)"),
            (c.clone(), "(P(y) P(x))"),
            (-ce.clone(), "(y P(x))"),
            (-ce, "(P(y) x)"),
        ],
    );
    let mut params = Params::new();
    params.insert("c".into(), c);
    params.insert("e".into(), e);
    Olpi::differential("diff-ce", order, n, params)
}

pub fn rota_baxter_weight(order: OrderKind, lambda: Coefficient) -> Olpi {
    let alg = LieAlgebra::new(order);
    let one = Coefficient::one();
    let b = combination(&alg, &[(one.clone(), "(P(x) y)"), (one, "(x P(y))"), (lambda.clone(), "(x y)")]);
    let mut params = Params::new();
    params.insert("lambda".into(), lambda);
    Olpi::rota_baxter("rota-baxter", order, b, params)
}

/// Rota-Baxter type catalog entries other than the weighted one.
pub const RB_ENTRIES: [(&str, &[(i64, &str)]); 5] = [
    ("average", &[(1, "(x P(y))")]),
    ("inverse-average", &[(1, "(P(x) y)")]),
    ("sym-left", &[(1, "(P(x) y)"), (1, "(P(y) x)")]),
    ("sym-right", &[(1, "(x P(y))"), (1, "(y P(x))")]),
    ("nijenhuis", &[(1, "(x P(y))"), (1, "(P(x) y)"), (-1, "P((x y))")]),
];

pub fn rb_entry(name: &str, order: OrderKind) -> Result<Olpi> {
    let (_, terms) = RB_ENTRIES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Invalid(format!("unknown Rota-Baxter type entry `{name}`")))?;
    let alg = LieAlgebra::new(order);
    let terms: Vec<(Coefficient, &str)> = terms.iter().map(|(c, t)| (Coefficient::from_integer((*c).into()), *t)).collect();
    Ok(Olpi::rota_baxter(name, order, combination(&alg, &terms), Params::new()))
}

/// One catalog line.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    /// Accepted by [`parse_system`].
    pub spec: String,
    pub family: Family,
    pub order: OrderKind,
    pub identity: String,
    pub params: Vec<String>,
}

pub fn catalog() -> Vec<CatalogEntry> {
    let zero = Coefficient::zero;
    let mut v = vec![
        (differential_bce(OrderKind::Dt, Coefficient::one(), zero(), zero()), vec!["b", "c", "e", "lambda"]),
        (differential_ce(OrderKind::Dt, Coefficient::one(), Coefficient::one()), vec!["c", "e"]),
        (rota_baxter_weight(OrderKind::Dl, zero()), vec!["lambda"]),
    ];
    for (n, _) in RB_ENTRIES {
        v.push((rb_entry(n, OrderKind::Dl).expect("catalog entry"), vec![]));
    }
    v.push((Olpi::modified_rb(OrderKind::Dl, zero()), vec!["lambda"]));
    v.into_iter()
        .map(|(o, ps)| CatalogEntry {
            name: o.name.clone(),
            spec: format!("{}/{}", o.family.name(), o.name),
            family: o.family,
            order: o.order,
            identity: o.to_text(),
            params: ps.into_iter().map(String::from).collect(),
        })
        .collect()
}

/// A rewriting system named on the command line:
/// `FAMILY[/ENTRY][:PARAMS]` (`rb/average`, `diff:b=1,c=1,e=0`),
/// `raw:IDENTITY` in the variables `x, y`, or `rels:POLY;POLY` over the alphabet.
pub struct SystemSpec {
    pub olpi: Option<Arc<Olpi>>,
    pub system: LieSystem,
}

pub fn parse_system(spec: &str, a: &Alphabet, order: Option<OrderKind>) -> Result<SystemSpec> {
    let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
    if head == "rels" {
        let ord = order.unwrap_or(OrderKind::Dl);
        let alg = Arc::new(LieAlgebra::new(ord));
        let polys = rest
            .split(';')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| alg.parse(t, a))
            .collect::<Result<Vec<_>>>()?;
        let src = Arc::new(crate::rewrite::FiniteRelations::new(ord, polys)?);
        return Ok(SystemSpec { olpi: None, system: LieSystem::new(alg, src) });
    }
    let (fam, entry) = head.split_once('/').map_or((head, None), |(f, e)| (f, Some(e)));
    let family = Family::parse(fam)?;
    let ord = order.or(family.required_order()).unwrap_or(OrderKind::Dl);
    let olpi = if family == Family::Raw {
        let phi = LieAlgebra::new(ord).parse(rest, &variables())?;
        Olpi::raw("raw", ord, phi)?
    } else {
        build_identity(family, entry, &parse_params(rest)?, ord)?
    };
    let olpi = Arc::new(olpi);
    let alg = Arc::new(LieAlgebra::new(ord));
    let src = Arc::new(IdentityRelations::new(olpi.clone(), alg.clone(), a.clone()));
    Ok(SystemSpec { olpi: Some(olpi), system: LieSystem::new(alg, src) })
}

/// Outcome of one triple condition.
#[derive(Clone, Debug, Serialize)]
pub struct TripleCheck {
    pub args: Vec<String>,
    pub residue: Option<String>,
}

/// Conditions of the differential and Rota-Baxter type classifications.
#[derive(Clone, Debug, Serialize)]
pub struct TypeReport {
    pub identity: String,
    pub multilinear: bool,
    /// The core polynomial has no subword of the leading shape.
    pub core_reduced: bool,
    /// Every instance reduced within the step cap.
    pub terminating: bool,
    pub triples: Vec<TripleCheck>,
    pub verdict: bool,
}

/// Lyndon-Shirshov triples `u ≻ v ≻ w` with `deg u + deg v + deg w + extra <= bound`,
/// compared prime-wise lexicographically (`lex`) or by the ambient order.
fn triples(a: &Alphabet, ord: &dyn WordOrder, bound: u32, extra: u32, lex: bool) -> Vec<[BracketedWord; 3]> {
    if bound < 3 + extra {
        return Vec::new();
    }
    let ls: Vec<BracketedWord> = enumerate_lsbw(a, ord, bound - 2 - extra).into_iter().flatten().collect();
    let gt = |u: &BracketedWord, v: &BracketedWord| {
        if lex {
            prime_lex(ord, u.primes(), v.primes()) == std::cmp::Ordering::Greater
        } else {
            ord.cmp_words(u, v) == std::cmp::Ordering::Greater
        }
    };
    let mut out = Vec::new();
    for u in &ls {
        for v in &ls {
            if !gt(u, v) {
                continue;
            }
            for w in &ls {
                if gt(v, w) && u.degree() + v.degree() + w.degree() + extra <= bound {
                    out.push([u.clone(), v.clone(), w.clone()]);
                }
            }
        }
    }
    out
}

/// Differential type: multilinear, `N` free of `⌊uv⌋` subwords, and
/// `N([[u][w]],[v]) - N([[u][v]],[w]) + N([u],[[v][w]]) →* 0` for `u ≻ v ≻ w`.
pub fn check_differential_type(sys: &LieSystem, olpi: &Olpi, a: &Alphabet, bound: u32, step_cap: usize) -> Result<TypeReport> {
    let alg = sys.algebra();
    let ord = alg.order();
    let n = olpi.core.as_ref().ok_or_else(|| Error::Invalid("not a differential-family identity".into()))?;
    let core_reduced = !n.words().any(|t| shape_occurs(&olpi.shape, olpi.arity(), t, &ord));
    let mut checks = Vec::new();
    for [u, v, w] in triples(a, &ord, bound, 1, true) {
        let (bu, bv, bw) = (alg.basis(&u)?, alg.basis(&v)?, alg.basis(&w)?);
        let j = evaluate(n, alg, &[alg.bracket(&bu, &bw), bv.clone()])?
            .sub(&evaluate(n, alg, &[alg.bracket(&bu, &bv), bw.clone()])?)
            .add(&evaluate(n, alg, &[bu.clone(), alg.bracket(&bv, &bw)])?);
        let r = sys.normal_form(&j, step_cap)?;
        checks.push(TripleCheck {
            args: [u, v, w].iter().map(|x| x.to_text(a)).collect(),
            residue: (!r.is_zero()).then(|| r.to_text(a)),
        });
    }
    let multilinear = olpi.is_multilinear();
    let verdict = multilinear && core_reduced && checks.iter().all(|c| c.residue.is_none());
    Ok(TypeReport { identity: olpi.to_text(), multilinear, core_reduced, terminating: true, triples: checks, verdict })
}

/// Rota-Baxter type: multilinear, `B` free of `⌊u⌋⌊v⌋` subwords, terminating
/// reduction, and `B(B(u,w),v) - B(B(u,v),w) + B(u,B(v,w))` vanishing under
/// the operator modulo the system for `u ≻ v ≻ w`.
pub fn check_rb_type(sys: &LieSystem, olpi: &Olpi, a: &Alphabet, bound: u32, step_cap: usize) -> Result<TypeReport> {
    let alg = sys.algebra();
    let ord = alg.order();
    let b = olpi.core.as_ref().ok_or_else(|| Error::Invalid("not a Rota-Baxter-family identity".into()))?;
    let core_reduced = !b.words().any(|t| shape_occurs(&olpi.shape, olpi.arity(), t, &ord));
    let mut terminating = true;
    for rule in sys.rules_up_to(a, bound)? {
        let t = alg.basis(&rule.lhs)?;
        if let Err(Error::StepCap { .. }) = sys.normal_form(&t, step_cap) {
            terminating = false;
        }
    }
    let mut checks = Vec::new();
    for [u, v, w] in triples(a, &ord, bound, 3, false) {
        let (bu, bv, bw) = (alg.basis(&u)?, alg.basis(&v)?, alg.basis(&w)?);
        let j = evaluate(b, alg, &[evaluate(b, alg, &[bu.clone(), bw.clone()])?, bv.clone()])?
            .sub(&evaluate(b, alg, &[evaluate(b, alg, &[bu.clone(), bv.clone()])?, bw.clone()])?)
            .add(&evaluate(b, alg, &[bu.clone(), evaluate(b, alg, &[bv.clone(), bw.clone()])?])?);
        let r = sys.normal_form(&j.apply_operator(), step_cap)?;
        checks.push(TripleCheck {
            args: [u, v, w].iter().map(|x| x.to_text(a)).collect(),
            residue: (!r.is_zero()).then(|| r.to_text(a)),
        });
    }
    let multilinear = olpi.is_multilinear();
    let verdict = multilinear && core_reduced && terminating && checks.iter().all(|c| c.residue.is_none());
    Ok(TypeReport { identity: olpi.to_text(), multilinear, core_reduced, terminating, triples: checks, verdict })
}
