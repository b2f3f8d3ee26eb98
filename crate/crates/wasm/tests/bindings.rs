use lsgsb_wasm::{bracket_json, check_json, normal_form_json, MAX_BOUND};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn bracketing_of_the_six_letter_word() {
    let v = parse(bracket_json("x x y y x y", "x,y", "").unwrap());
    assert_eq!(v["bracketing"], "((x((xy)y))(xy))");
    assert_eq!(v["lyndon_shirshov"], true);
}

#[test]
fn non_lyndon_word_reports_its_factors() {
    let v = parse(bracket_json("y x", "x,y", "dl").unwrap());
    assert_eq!(v["lyndon_shirshov"], false);
    assert!(v["bracketing"].is_null());
    assert_eq!(v["factors"], serde_json::json!(["y", "x"]));
}

#[test]
fn rota_baxter_rewrite_of_two_operators() {
    let v = parse(normal_form_json("rb:lambda=1", "(P(x)P(y))", "x,y", "").unwrap());
    assert_eq!(v["steps"].as_array().unwrap().len(), 1);
    assert_eq!(v["normal_form"], "P((P(x)y)) - P((P(y)x)) + P((xy))");
}

#[test]
fn check_reports_the_broken_candidate() {
    let v = parse(check_json("diff:b=2,c=0,e=0", 4, "x,y,z", "").unwrap());
    assert_eq!(v["verdict"], "NOT");
    assert!(check_json("rb:lambda=1", MAX_BOUND + 1, "x,y", "").is_err());
}

#[test]
fn errors_are_messages() {
    assert!(bracket_json("x q", "x,y", "").is_err());
    assert!(normal_form_json("nosuch", "x", "x,y", "").is_err());
}
