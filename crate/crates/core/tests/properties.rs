use std::cmp::Ordering;
use std::sync::OnceLock;

use lsgsb_core::gsb::enumerate_irr;
use lsgsb_core::lyndon::{enumerate_lsbw, is_lsbw};
use lsgsb_core::opi::parse_system;
use lsgsb_core::poly::int;
use lsgsb_core::rewrite::{LieSystem, Strategy as Pick};
use lsgsb_core::{Alphabet, BracketedWord, LieAlgebra, LiePolynomial, OrderKind, StarWord, WordOrder};
use proptest::prelude::*;

fn xyz() -> Alphabet {
    Alphabet::parse_list("x,y,z").unwrap()
}

fn words() -> &'static Vec<BracketedWord> {
    static W: OnceLock<Vec<BracketedWord>> = OnceLock::new();
    W.get_or_init(|| BracketedWord::all_by_degree(&xyz(), 4).into_iter().flatten().collect())
}

fn stars() -> &'static Vec<StarWord> {
    static S: OnceLock<Vec<StarWord>> = OnceLock::new();
    S.get_or_init(|| StarWord::all_by_degree(&xyz(), 3).into_iter().flatten().collect())
}

fn ls(ord: OrderKind) -> Vec<BracketedWord> {
    enumerate_lsbw(&xyz(), &ord, 5).into_iter().flatten().collect()
}

fn order() -> impl Strategy<Value = OrderKind> {
    prop_oneof![Just(OrderKind::Dl), Just(OrderKind::Dt)]
}

fn word() -> impl Strategy<Value = BracketedWord> {
    (0..words().len()).prop_map(|i| words()[i].clone())
}

fn star() -> impl Strategy<Value = StarWord> {
    (0..stars().len()).prop_map(|i| stars()[i].clone())
}

/// Random integer combination of Lyndon-Shirshov basis elements.
fn lie_poly(ord: OrderKind) -> impl Strategy<Value = LiePolynomial> {
    let basis = ls(ord);
    proptest::collection::vec((0..basis.len(), -4i64..=4), 1..5).prop_map(move |terms| {
        let alg = LieAlgebra::new(ord);
        let mut f = LiePolynomial::zero(ord);
        for (i, c) in terms {
            f.add_scaled(&alg.basis(&basis[i]).unwrap(), &int(c));
        }
        f
    })
}

fn system(spec: &str) -> LieSystem {
    parse_system(spec, &xyz(), None).unwrap().system
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn orders_are_total_and_transitive(ord in order(), u in word(), v in word(), w in word()) {
        let uv = ord.cmp_words(&u, &v);
        prop_assert_eq!(uv, ord.cmp_words(&v, &u).reverse());
        prop_assert_eq!(uv == Ordering::Equal, u == v);
        if uv != Ordering::Greater && ord.cmp_words(&v, &w) != Ordering::Greater {
            prop_assert_ne!(ord.cmp_words(&u, &w), Ordering::Greater);
        }
    }

    #[test]
    fn orders_are_monomial(ord in order(), u in word(), v in word(), q in star()) {
        prop_assume!(u != v);
        prop_assert_eq!(ord.cmp_words(&q.fill(&u), &q.fill(&v)), ord.cmp_words(&u, &v));
    }

    #[test]
    fn expansion_round_trips(f in lie_poly(OrderKind::Dl)) {
        let alg = LieAlgebra::new(OrderKind::Dl);
        prop_assert_eq!(alg.straighten(&alg.expand(&f)).unwrap(), f);
    }

    #[test]
    fn lead_of_expansion_is_lead_of_polynomial(f in lie_poly(OrderKind::Dt)) {
        let alg = LieAlgebra::new(OrderKind::Dt);
        prop_assume!(!f.is_zero());
        let e = alg.expand(&f);
        prop_assert_eq!(e.leading_word(), f.leading_word());
    }

    #[test]
    fn rota_baxter_normal_forms(f in lie_poly(OrderKind::Dl)) {
        let sys = rb();
        let n = sys.normal_form(&f, 100_000).unwrap();
        for w in n.words() {
            prop_assert!(!sys.is_reducible(w).unwrap());
        }
        prop_assert_eq!(&sys.normal_form(&n, 100_000).unwrap(), &n);
        let other = sys.normal_form_with(&f, Pick::SmallestLast, 100_000, None, None).unwrap();
        prop_assert_eq!(other, n);
    }

    #[test]
    fn differential_normal_forms(f in lie_poly(OrderKind::Dt)) {
        let sys = diff();
        let n = sys.normal_form(&f, 100_000).unwrap();
        for w in n.words() {
            prop_assert!(!sys.is_reducible(w).unwrap());
        }
        let other = sys.normal_form_with(&f, Pick::SmallestLast, 100_000, None, None).unwrap();
        prop_assert_eq!(other, n);
    }
}

fn rb() -> &'static LieSystem {
    static S: OnceLock<LieSystem> = OnceLock::new();
    S.get_or_init(|| system("rb:lambda=1"))
}

fn diff() -> &'static LieSystem {
    static S: OnceLock<LieSystem> = OnceLock::new();
    S.get_or_init(|| system("diff:lambda=1"))
}

#[test]
fn special_normal_words_keep_their_lead() {
    let a = xyz();
    for spec in ["rb:lambda=1", "diff:lambda=-2", "modrb:lambda=7/3", "rb/nijenhuis"] {
        let sys = system(spec);
        let rules = sys.rules_up_to(&a, 5).unwrap();
        assert!(!rules.is_empty());
        for r in rules {
            let s = sys.special(&r).unwrap();
            assert_eq!(s.leading_word(), Some(&r.lhs), "{spec}: {}", r.lhs.to_text(&a));
            assert!(is_lsbw(&r.lhs, &sys.order()));
        }
    }
}

#[test]
fn irreducibles_are_lyndon_shirshov_and_unmatched() {
    let a = xyz();
    let sys = system("modrb:lambda=-1");
    for (d, ws) in enumerate_irr(&sys, &a, 5).unwrap().iter().enumerate() {
        for w in ws {
            assert_eq!(w.degree() as usize, d);
            assert!(is_lsbw(w, &OrderKind::Dl));
            assert!(sys.matches(w).unwrap().is_empty());
        }
    }
}
