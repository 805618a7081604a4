use leibhom::commands::Command;
use leibhom_py::{load, run, verifier};

#[test]
fn examples_load_by_name() {
    assert!(load("e_algebra").is_ok());
    assert!(load("no-such-example").is_err());
}

#[test]
fn cohomology_through_the_binding_layer() {
    let r = run(
        "e_algebra",
        &Command::Hl {
            cohomology: true,
            module: "trivial".into(),
        },
        Some(1),
    )
    .unwrap();
    assert!(r.passed);
    assert!(r.text.contains("H^1 = 1"));
    assert!(r.json.contains("\"dims\""));
}

#[test]
fn verifiers_are_built_from_keyword_arguments() {
    let v = verifier("thm-tor", &[("m", "k"), ("n", "gdown")]).unwrap();
    let r = run("e_algebra", &Command::Verify(v), Some(2)).unwrap();
    assert!(r.passed, "{}", r.text);
    assert!(verifier("thm-tor", &[("m", "k")]).is_err());
    assert!(verifier("bogus", &[]).is_err());
}
