use lsgsb_core::gsb::{cd_crosscheck, check_gsb, GsbOptions};
use lsgsb_core::opi::{catalog, check_differential_type, check_rb_type, parse_system, Family};
use lsgsb_core::Alphabet;

fn xyz() -> Alphabet {
    Alphabet::parse_list("x,y,z").unwrap()
}

// `(0,1,1)` is not homogeneous: under `Dt` its overlap at degree 4 only
// reduces through rules of degree 5.
#[test]
fn dimension_check_sees_inhomogeneous_failure() {
    let a = xyz();
    let sys = parse_system("diff:b=0,c=1,e=1", &a, None).unwrap().system;
    let cd = cd_crosscheck(&sys, &a, 4).unwrap();
    assert!(!cd.verdict);
    assert_eq!(cd.irreducible_pivots, 1);
    let ok = parse_system("diff:b=1,c=1,e=0", &a, None).unwrap().system;
    assert!(cd_crosscheck(&ok, &a, 5).unwrap().verdict);
}

#[test]
fn every_catalog_entry_parses_and_checks() {
    let a = xyz();
    for e in catalog() {
        let spec = e.spec;
        let s = parse_system(&spec, &a, None).unwrap_or_else(|err| panic!("{spec}: {err}"));
        let r = check_gsb(&s.system, &a, &GsbOptions::new(4)).unwrap();
        assert!(r.equivalence_crosschecks.unwrap().agree, "{spec}");
    }
}

#[test]
fn type_checks_match_verdicts() {
    let a = xyz();
    let cases = [("diff:lambda=1", true), ("diff:b=0,c=1,e=1", false), ("rb/nijenhuis", true), ("rb/sym-left", false)];
    for (spec, want) in cases {
        let s = parse_system(spec, &a, None).unwrap();
        let o = s.olpi.unwrap();
        let report = match o.family {
            Family::Diff => check_differential_type(&s.system, &o, &a, 6, 100_000),
            _ => check_rb_type(&s.system, &o, &a, 6, 100_000),
        }
        .unwrap();
        assert_eq!(report.verdict, want, "{spec}");
    }
}

#[test]
fn rels_spec_builds_finite_system() {
    let a = xyz();
    let s = parse_system("rels:(x y) - P(x); (x z)", &a, None).unwrap();
    assert!(s.olpi.is_none());
    let r = check_gsb(&s.system, &a, &GsbOptions::new(4)).unwrap();
    assert_eq!(r.relations, 2);
}
