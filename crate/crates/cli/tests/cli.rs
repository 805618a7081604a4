use std::path::PathBuf;
use std::process::{Command, Output};

fn leibhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leibhom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("leibhom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn lie_quotient_of_e() {
    let o = leibhom(&["--session", "e_algebra", "lie-quotient"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("dim g_Lie = 1, kernel basis: f"));
}

#[test]
fn leibniz_cohomology_of_e_with_trivial_coefficients() {
    let o = leibhom(&["hl", "--cohomology", "trivial", "--max-degree", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(
        text.contains("H^0 = 1") && text.contains("H^1 = 1"),
        "{text}"
    );
}

#[test]
fn flagship_verification_passes_with_a_table() {
    let json = scratch("flagship.json");
    let o = leibhom(&[
        "verify",
        "thm-ext-sym",
        "--n1",
        "k",
        "--n2",
        "k",
        "--max-degree",
        "3",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("PASS thm-ext-sym"), "{text}");
    assert!(text.contains("Ext_Lie"));
    let report = std::fs::read_to_string(json).unwrap();
    assert!(report.contains("\"passed\": true"));
}

#[test]
fn session_files_are_validated() {
    let path = scratch("corrupt.json");
    let text = r#"{"name": "corrupt", "algebra": {"basis": ["e", "f"], "structure_constants":
        [[["1", "0"], ["0", "0"]], [["0", "1"], ["0", "0"]]]}}"#;
    std::fs::write(&path, text).unwrap();
    let o = leibhom(&["--session", path.to_str().unwrap(), "check"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("invalid algebra"), "{err}");

    let empty = scratch("empty.json");
    std::fs::write(&empty, r#"{"name": "x", "algebra": {"basis": ["x"], "structure_constants": [[["0"]]]}, "modules": {}}"#)
        .unwrap();
    let o = leibhom(&["--session", empty.to_str().unwrap(), "check"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn unknown_modules_are_errors() {
    let o = leibhom(&["hl", "--homology", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn functors_and_tor_run() {
    let o = leibhom(&["functor", "asym", "adjoint"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("asym adjoint: dim 1"));
    let o = leibhom(&["tor", "--m", "k", "--n", "k", "--max-degree", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Tor_0 = 1"));
    let o = leibhom(&[
        "ext",
        "--from-asym",
        "--lie",
        "k",
        "--module",
        "trivial",
        "--max-degree",
        "2",
    ]);
    assert!(o.status.success());
}

#[test]
fn sweep_is_deterministic() {
    let (a, b) = (scratch("sweep-a.json"), scratch("sweep-b.json"));
    let first = leibhom(&["sweep", "--json", a.to_str().unwrap()]);
    let second = leibhom(&["sweep", "--json", b.to_str().unwrap()]);
    assert!(first.status.success() && second.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}
