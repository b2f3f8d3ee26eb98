//! Acceptance suite: one pass/fail line per criterion, with wall-clock budgets.
//!
//! Reference values are checked against independent oracles written here:
//! the Witt formula, a direct commutator expansion of non-associative words,
//! and structural filters for irreducible words. The process exits nonzero
//! on any failure not listed in `DOCUMENTED`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use lsgsb_core::gsb::{cd_crosscheck, check_gsb, enumerate_irr, random_ideal_elements, GsbOptions};
use lsgsb_core::lyndon::{bracketing_of, enumerate_depth0, enumerate_lsbw, is_lsbw};
use lsgsb_core::opi::{differential_bce, parse_system};
use lsgsb_core::orders::WordOrder;
use lsgsb_core::poly::int;
use lsgsb_core::words::parse_assoc;
use lsgsb_core::{Alphabet, BracketedWord, LieAlgebra, LiePolynomial, NaWord, OpPolynomial, OrderKind, Prime};
use serde_json::Value;

const XYZ: &str = "x,y,z";

/// Systems listed for the positive composition check.
const POSITIVES: [&str; 17] = [
    "diff:lambda=0",
    "diff:lambda=1",
    "diff:lambda=-2",
    "diff:b=1,c=0,e=0",
    "diff:b=1,c=1,e=0",
    "diff:b=0,c=1,e=1",
    "rb:lambda=0",
    "rb:lambda=1",
    "rb:lambda=-1",
    "rb/average",
    "rb/inverse-average",
    "rb/nijenhuis",
    "rb/sym-left",
    "rb/sym-right",
    "modrb:lambda=-1",
    "modrb:lambda=0",
    "modrb:lambda=7/3",
];

/// Failures analysed in the decisions ledger: `b^2 = b + ce` does not hold at
/// `(0,1,1)`, and the four Rota-Baxter entries whose `B` is not antisymmetric
/// meet a nontrivial overlap at degree 6.
const DOCUMENTED: [&str; 5] = ["diff:b=0,c=1,e=1", "rb/average", "rb/inverse-average", "rb/sym-left", "rb/sym-right"];

struct Line {
    id: &'static str,
    title: &'static str,
    pass: bool,
    budget_s: f64,
    secs: f64,
    detail: String,
    /// Names of failing systems; all must be in `DOCUMENTED` to keep a zero exit.
    failing: Vec<String>,
}

fn run(id: &'static str, title: &'static str, budget_s: f64, f: impl FnOnce() -> (bool, String, Vec<String>)) -> Line {
    let t = Instant::now();
    let (pass, detail, failing) = f();
    let secs = t.elapsed().as_secs_f64();
    Line { id, title, pass: pass && secs <= budget_s, budget_s, secs, detail, failing }
}

fn main() {
    let lines = vec![
        run("1", "Lyndon counts", 5.0, lyndon_counts),
        run("2", "Shirshov bracketing examples", 1.0, bracketing_examples),
        run("3", "basis soundness", 60.0, basis_soundness),
        run("4", "Lie axioms", 60.0, lie_axioms),
        run("5", "composition positives at bound 5", 600.0, || positives(5)),
        run("5+", "Rota-Baxter family at bound 7 (first overlaps appear at 6)", 600.0, || positives_rb(7)),
        run("6", "composition negative b=2", 60.0, negative),
        run("7", "equivalence cross-checks at bound 4", 900.0, || crosschecks(4, &POSITIVES)),
        run("7+", "equivalence cross-checks at bound 6, Rota-Baxter family", 900.0, || {
            crosschecks(6, &POSITIVES[6..])
        }),
        run("8", "irreducible words", 60.0, irreducibles),
        run("9", "random ideal elements reduce to zero", 120.0, ideal_membership),
    ];
    let mut unexpected = false;
    for l in &lines {
        let status = if l.pass { "PASS" } else { "FAIL" };
        println!("criterion {:<3} {status}  {} [{:.2}s / {:.0}s]  {}", l.id, l.title, l.secs, l.budget_s, l.detail);
        if !l.pass {
            let undocumented: Vec<_> = l.failing.iter().filter(|s| !DOCUMENTED.contains(&s.as_str())).collect();
            if l.failing.is_empty() || !undocumented.is_empty() {
                unexpected = true;
            } else {
                println!("              documented deviation: {}", l.failing.join(", "));
            }
        }
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    println!("acceptance: {passed}/{} criteria pass", lines.len());
    if unexpected {
        std::process::exit(1);
    }
}

fn alphabet(s: &str) -> Alphabet {
    Alphabet::parse_list(s).unwrap()
}

// ---- 1 ----------------------------------------------------------------------

fn mobius(n: u64) -> i64 {
    let (mut n, mut m, mut p) = (n, 1i64, 2u64);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

fn witt(k: u64, n: u64) -> u64 {
    let s: i64 = (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| mobius(n / d) * (k.pow(d as u32) as i64)).sum();
    (s / n as i64) as u64
}

fn lyndon_counts() -> (bool, String, Vec<String>) {
    let published: [(usize, u32, &[u64]); 2] = [(2, 8, &[2, 1, 2, 3, 6, 9, 18, 30]), (3, 6, &[3, 3, 8, 18, 48, 116])];
    let mut ok = true;
    let mut detail = Vec::new();
    for (k, max, expect) in published {
        let a = Alphabet::standard(k);
        let witt_values: Vec<u64> = (1..=max as u64).map(|n| witt(k as u64, n)).collect();
        for ord in [OrderKind::Dl, OrderKind::Dt] {
            let got: Vec<u64> = enumerate_depth0(&a, &ord, max).iter().skip(1).map(|v| v.len() as u64).collect();
            ok &= got == expect && got == witt_values;
            if ord == OrderKind::Dl {
                detail.push(format!("k={k}: {got:?}"));
            }
        }
    }
    (ok, detail.join("; "), Vec::new())
}

// ---- 2 ----------------------------------------------------------------------

fn bracketing_examples() -> (bool, String, Vec<String>) {
    let a = alphabet(XYZ);
    let b = |w: &str| bracketing_of(&parse_assoc(w, &a).unwrap(), &OrderKind::Dl).unwrap().to_text(&a);
    let (x, y) = (b("x x y y x y"), b("P(x y z) P(x) P(y)"));
    let ok = x == "((x((xy)y))(xy))" && y == "(P((x(yz)))(P(x)P(y)))";
    (ok, format!("{x}, {y}"), Vec::new())
}

// ---- 3, 4: independent commutator expansion ---------------------------------

type Expansion = HashMap<BracketedWord, i64>;

fn oracle_expand(t: &NaWord) -> Expansion {
    match t {
        NaWord::Leaf(l) => HashMap::from([(BracketedWord::letter(*l), 1)]),
        NaWord::Op(inner) => oracle_expand(inner).into_iter().map(|(w, c)| (w.wrapped(), c)).collect(),
        NaWord::Pair(l, r) => commutator(&oracle_expand(l), &oracle_expand(r)),
    }
}

fn commutator(a: &Expansion, b: &Expansion) -> Expansion {
    let mut out: Expansion = HashMap::new();
    for (u, c) in a {
        for (v, d) in b {
            *out.entry(u.concat(v)).or_default() += c * d;
            *out.entry(v.concat(u)).or_default() -= c * d;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn as_expansion(p: &OpPolynomial) -> Expansion {
    p.iter()
        .map(|(w, c)| {
            assert!(c.is_integer(), "integer input gives integer expansion");
            (w.clone(), i64::try_from(c.to_integer()).unwrap())
        })
        .collect()
}

fn basis_soundness() -> (bool, String, Vec<String>) {
    let a = alphabet(XYZ);
    let words: Vec<NaWord> = NaWord::all_by_degree(&a, 5).into_iter().flatten().collect();
    let mut ok = true;
    let mut bad = Vec::new();
    for ord in [OrderKind::Dl, OrderKind::Dt] {
        let alg = LieAlgebra::new(ord);
        for t in &words {
            let lie = alg.straighten_na(t);
            if as_expansion(&alg.expand(&lie)) != oracle_expand(t) {
                ok = false;
                bad.push(t.to_text(&a));
            }
        }
    }
    let mut leads = 0;
    for ord in [OrderKind::Dl, OrderKind::Dt] {
        let alg = LieAlgebra::new(ord);
        for u in enumerate_lsbw(&a, &ord, 6).iter().flatten() {
            leads += 1;
            if alg.expand_basis(u).unwrap().leading_word() != Some(u) {
                ok = false;
                bad.push(u.to_text(&a));
            }
        }
    }
    let detail = format!("{} non-associative words x 2 orders, {leads} leading words{}", words.len(), first(&bad));
    (ok, detail, Vec::new())
}

fn first(bad: &[String]) -> String {
    bad.first().map(|b| format!("; first failure {b}")).unwrap_or_default()
}

fn lie_axioms() -> (bool, String, Vec<String>) {
    let a = alphabet(XYZ);
    let mut ok = true;
    let mut pairs = 0;
    let mut triples = 0;
    for ord in [OrderKind::Dl, OrderKind::Dt] {
        let alg = LieAlgebra::new(ord);
        let basis: Vec<(BracketedWord, LiePolynomial)> = enumerate_lsbw(&a, &ord, 4)
            .into_iter()
            .flatten()
            .map(|w| {
                let p = alg.basis(&w).unwrap();
                (w, p)
            })
            .collect();
        let ex = |p: &LiePolynomial| as_expansion(&alg.expand(p));
        for (u, pu) in &basis {
            for (v, pv) in &basis {
                if u.degree() + v.degree() > 4 {
                    continue;
                }
                pairs += 1;
                let uv = alg.bracket(pu, pv);
                ok &= uv.add(&alg.bracket(pv, pu)).is_zero();
                ok &= ex(&uv) == commutator(&ex(pu), &ex(pv));
                for (w, pw) in &basis {
                    if u.degree() + v.degree() + w.degree() > 4 {
                        continue;
                    }
                    triples += 1;
                    let j = alg
                        .bracket(&uv, pw)
                        .add(&alg.bracket(&alg.bracket(pv, pw), pu))
                        .add(&alg.bracket(&alg.bracket(pw, pu), pv));
                    ok &= j.is_zero();
                }
            }
        }
    }
    (ok, format!("{pairs} pairs, {triples} triples over both orders"), Vec::new())
}

// ---- 5, 6: through the binary -----------------------------------------------

fn lsgsb(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lsgsb")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../schema/certificate.schema.json")).unwrap();
    jsonschema::JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn positives(bound: u32) -> (bool, String, Vec<String>) {
    let schema = schema();
    let b = bound.to_string();
    let mut failing = Vec::new();
    let mut comps = 0;
    for s in POSITIVES {
        let (code, out) = lsgsb(&["--alphabet", XYZ, "--format", "json", "gsb-check", "--system", s, "--bound", &b, "--no-crosschecks"]);
        let v: Value = serde_json::from_str(&out).unwrap_or(Value::Null);
        let list = v["compositions"].as_array().cloned().unwrap_or_default();
        comps += list.len();
        let all_trivial = list.iter().all(|c| c["verdict"] == "trivial");
        if code != 0 || v["verdict"] != "GSB" || !all_trivial || !schema.is_valid(&v) {
            failing.push(s.to_string());
        }
    }
    let detail = format!("{} systems, {comps} compositions; failing: {}", POSITIVES.len(), list_or_none(&failing));
    (failing.is_empty(), detail, failing)
}

fn list_or_none(v: &[String]) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        v.join(", ")
    }
}

fn positives_rb(bound: u32) -> (bool, String, Vec<String>) {
    let a = alphabet(XYZ);
    let mut failing = Vec::new();
    let mut comps = 0;
    for s in &POSITIVES[6..] {
        let spec = parse_system(s, &a, None).unwrap();
        let mut opts = GsbOptions::new(bound).threads_from_env();
        opts.crosschecks = false;
        let r = check_gsb(&spec.system, &a, &opts).unwrap();
        comps += r.compositions.len();
        if !r.is_gsb() {
            failing.push(s.to_string());
        }
    }
    let detail = format!("{} systems, {comps} compositions; failing: {}", POSITIVES.len() - 6, list_or_none(&failing));
    (failing.is_empty(), detail, failing)
}

/// The broken operator pushed down to letters: `D(z) = ⌊z⌋` and
/// `D([u, v]) = 2([u, D(v)] + [D(u), v])`.
fn broken_d(t: &NaWord) -> Expansion {
    match t {
        NaWord::Leaf(l) => HashMap::from([(BracketedWord::letter(*l).wrapped(), 1)]),
        NaWord::Op(_) => unreachable!("operator-free input"),
        NaWord::Pair(u, v) => {
            let mut out = commutator(&oracle_expand(u), &broken_d(v));
            for (w, c) in commutator(&broken_d(u), &oracle_expand(v)) {
                *out.entry(w).or_default() += c;
            }
            out.retain(|_, c| *c != 0);
            out.into_iter().map(|(w, c)| (w, 2 * c)).collect()
        }
    }
}

fn negative() -> (bool, String, Vec<String>) {
    let (code, out) = lsgsb(&["--alphabet", XYZ, "--format", "json", "gsb-check", "--system", "diff:b=2,c=0,e=0", "--bound", "4"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let residue = v["compositions"].as_array().unwrap().iter().find_map(|c| c["residue"].as_str().map(String::from));
    let mut ok = code == 1 && v["verdict"] == "NOT" && schema().is_valid(&v) && residue.is_some();
    ok &= v["equivalence_crosschecks"]["forks_joinable"]["verdict"] == false;

    // Oracle: `D` on the two sides of the Jacobi identity
    // `[x,[y,z]] = [[x,y],z] - [[x,z],y]` differs, since `b^2 != b`.
    let a = alphabet(XYZ);
    let t = |s: &str| lsgsb_core::words::parse_na(s, &a).unwrap();
    let mut j = broken_d(&t("(x(yz))"));
    for (w, c) in broken_d(&t("((xy)z)")) {
        *j.entry(w).or_default() -= c;
    }
    for (w, c) in broken_d(&t("((xz)y)")) {
        *j.entry(w).or_default() += c;
    }
    j.retain(|_, c| *c != 0);
    // Operators only on single letters.
    let single = |w: &BracketedWord| w.primes().iter().all(|p| matches!(p, Prime::Letter(_)) || p.degree() == 2);
    ok &= !j.is_empty() && j.keys().all(single);
    if let Some(r) = &residue {
        let alg = LieAlgebra::new(OrderKind::Dt);
        let got = as_expansion(&alg.expand(&alg.parse(r, &a).unwrap()));
        let ratio = got.get(j.keys().next().unwrap()).copied().unwrap_or(0) as f64 / *j.values().next().unwrap() as f64;
        ok &= ratio != 0.0 && j.iter().all(|(w, c)| got.get(w).copied().unwrap_or(0) as f64 == ratio * *c as f64);
        ok &= got.len() == j.len();
    }
    (ok, format!("exit {code}, residue {}", residue.unwrap_or_default()), Vec::new())
}

// ---- 7 ----------------------------------------------------------------------

fn crosschecks(bound: u32, systems: &[&str]) -> (bool, String, Vec<String>) {
    let a = alphabet(XYZ);
    let mut disagree = Vec::new();
    let mut summary = BTreeMap::new();
    for s in systems {
        let spec = parse_system(s, &a, None).unwrap();
        let r = check_gsb(&spec.system, &a, &GsbOptions::new(bound).threads_from_env()).unwrap();
        let x = r.equivalence_crosschecks.as_ref().unwrap();
        // The dimension identity is computed for every system, including the
        // ones the certificate gates out.
        let cd = match &x.cd_identity {
            Some(c) => c.verdict,
            None => cd_crosscheck(&spec.system, &a, bound).unwrap().verdict,
        };
        let t = x.compositions_trivial;
        let agree = x.forks_joinable.verdict == t && x.strategy_independent.verdict == t && cd == t && x.associative.verdict == t;
        *summary.entry(if t { "GSB" } else { "NOT" }).or_insert(0) += 1;
        if !agree {
            disagree.push(s.to_string());
        }
    }
    let detail = format!("{} systems {summary:?}; four verdicts and Lie/associative agree except: {}", systems.len(), list_or_none(&disagree));
    (disagree.is_empty(), detail, Vec::new())
}

// ---- 8 ----------------------------------------------------------------------

/// `⌊..⌊z⌋..⌋` for some letter `z` and some depth.
fn is_delta(p: &Prime) -> bool {
    match p {
        Prime::Letter(_) => true,
        Prime::Op(w) => w.breadth() == 1 && is_delta(&w.primes()[0]),
    }
}

/// Some level holds adjacent `⌊u⌋⌊v⌋` with `u ≻ v` Lyndon-Shirshov.
fn has_operator_pair(ps: &[Prime], ord: &dyn WordOrder) -> bool {
    ps.windows(2).any(|w| match (&w[0], &w[1]) {
        (Prime::Op(u), Prime::Op(v)) => {
            is_lsbw(u, ord) && is_lsbw(v, ord) && ord.cmp_words(u, v) == std::cmp::Ordering::Greater
        }
        _ => false,
    }) || ps.iter().any(|p| matches!(p, Prime::Op(w) if has_operator_pair(w.primes(), ord)))
}

fn irreducibles() -> (bool, String, Vec<String>) {
    let a = alphabet(XYZ);
    let mut ok = true;

    let alg = Arc::new(LieAlgebra::new(OrderKind::Dt));
    let o = Arc::new(differential_bce(OrderKind::Dt, int(1), int(0), int(1)));
    let src = Arc::new(lsgsb_core::opi::IdentityRelations::new(o, alg.clone(), a.clone()));
    let diff = lsgsb_core::rewrite::LieSystem::new(alg, src);
    let irr: BTreeSet<BracketedWord> = enumerate_irr(&diff, &a, 5).unwrap().into_iter().flatten().collect();
    let delta: BTreeSet<BracketedWord> = enumerate_lsbw(&a, &OrderKind::Dt, 5)
        .into_iter()
        .flatten()
        .filter(|w| w.primes().iter().all(is_delta))
        .collect();
    ok &= irr == delta;
    let n_diff = irr.len();

    let rb = parse_system("rb:lambda=1", &a, None).unwrap().system;
    let irr = enumerate_irr(&rb, &a, 6).unwrap();
    let ls = enumerate_lsbw(&a, &OrderKind::Dl, 6);
    let mut n_rb = 0;
    for (have, all) in irr.iter().zip(&ls) {
        let want: Vec<_> = all.iter().filter(|w| !has_operator_pair(w.primes(), &OrderKind::Dl)).collect();
        ok &= have.iter().collect::<Vec<_>>() == want;
        n_rb += have.len();
    }
    (ok, format!("differential: {n_diff} words over the operator powers of letters (bound 5); Rota-Baxter: {n_rb} (bound 6)"), Vec::new())
}

// ---- 9 ----------------------------------------------------------------------

fn ideal_membership() -> (bool, String, Vec<String>) {
    let a = alphabet(XYZ);
    let mut failing = Vec::new();
    let mut systems = 0;
    for (i, s) in POSITIVES.iter().enumerate() {
        let spec = parse_system(s, &a, None).unwrap();
        let mut opts = GsbOptions::new(5);
        opts.crosschecks = false;
        if !check_gsb(&spec.system, &a, &opts).unwrap().is_gsb() {
            continue;
        }
        systems += 1;
        let bad = random_ideal_elements(&spec.system, &a, 5, 50, 0x5eed + i as u64, 100_000).unwrap();
        if !bad.is_empty() {
            failing.push(s.to_string());
        }
    }
    (failing.is_empty(), format!("50 elements x {systems} confluent systems; failing: {}", list_or_none(&failing)), failing)
}
