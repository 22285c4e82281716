use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const EX1: &str = "(a,c)^[b] (b,c) (b,a)^[c] (c,a) (c,b)^[a] (a,b)";

fn doodle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_doodle"))
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn fixtures_match_generator() {
    for name in ["poppy", "borromean", "hallwitt36"] {
        let o = doodle(&["example", name]);
        assert_eq!(code(&o), 0);
        let file = std::fs::read_to_string(fixture(&format!("{name}.doodle"))).unwrap();
        assert_eq!(
            stdout(&o),
            file,
            "{name}: regenerate with `doodle example {name} -o fixtures/{name}.doodle`"
        );
    }
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&doodle(&["verify", EX1])), 0);
    assert_eq!(code(&doodle(&["verify", "(a,b)"])), 1);
    assert_eq!(code(&doodle(&["verify", "(a,b"])), 3);
    assert_eq!(code(&doodle(&["no-such-command"])), 3);
}

#[test]
fn extracted_identity_verifies() {
    let o = doodle(&["identity", p(&fixture("borromean.doodle"))]);
    assert_eq!(code(&o), 0);
    let id = stdout(&o);
    assert_eq!(code(&doodle(&["verify", id.trim()])), 0);
    let o = doodle(&[
        "identity",
        p(&fixture("borromean.doodle")),
        "--base",
        "F(X1.2)",
    ]);
    assert_eq!(code(&doodle(&["verify", stdout(&o).trim()])), 0);
}

#[test]
fn construct_reduce_iso() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ex1.doodle");
    assert_eq!(
        code(&doodle(&[
            "construct",
            EX1,
            "--method",
            "elementary",
            "-o",
            p(&out)
        ])),
        0
    );
    assert_eq!(code(&doodle(&["validate", p(&out)])), 0);
    let red = dir.path().join("min.doodle");
    assert_eq!(
        code(&doodle(&["reduce", p(&out), "-o", p(&red), "--seed", "3"])),
        0
    );
    assert_eq!(code(&doodle(&["iso", p(&red), p(&red)])), 0);
    assert_eq!(
        code(&doodle(&[
            "iso",
            p(&fixture("poppy.doodle")),
            p(&fixture("borromean.doodle"))
        ])),
        1
    );
    let hw = dir.path().join("hw.doodle");
    let terms =
        "([a^-1 b^-1 a b],[a^-1 c a]) ([c^-1 a^-1 c a],[c^-1 b c]) ([b^-1 c^-1 b c],[b^-1 a b])";
    assert_eq!(
        code(&doodle(&[
            "construct",
            terms,
            "--method",
            "lemma31",
            "-o",
            p(&hw)
        ])),
        0
    );
    assert_eq!(
        std::fs::read_to_string(&hw).unwrap(),
        std::fs::read_to_string(fixture("hallwitt36.doodle")).unwrap()
    );
}

#[test]
fn moves_then_reduce_returns() {
    let dir = tempfile::tempdir().unwrap();
    let curl = dir.path().join("curl.doodle");
    let b = fixture("borromean.doodle");
    assert_eq!(
        code(&doodle(&[
            "moves",
            p(&b),
            "--ops",
            "h1+ E4 left; h1+ E2 right",
            "-o",
            p(&curl)
        ])),
        0
    );
    assert_eq!(code(&doodle(&["iso", p(&curl), p(&b)])), 1);
    let back = dir.path().join("back.doodle");
    assert_eq!(code(&doodle(&["reduce", p(&curl), "-o", p(&back)])), 0);
    assert_eq!(code(&doodle(&["iso", p(&back), p(&b)])), 0);
    assert_eq!(code(&doodle(&["moves", p(&b), "--ops", "h1- F(X1.2)"])), 3);
}

#[test]
fn equivalence_and_cobordism_verdicts() {
    assert_eq!(
        code(&doodle(&[
            "equiv",
            "--relation",
            "weak",
            "(a,b) (b,a)",
            "1"
        ])),
        0
    );
    assert_eq!(
        code(&doodle(&["equiv", "--relation", "strict", EX1, EX1])),
        0
    );
    let o = doodle(&["equiv", "--relation", "equiv", "(a,b) (b,a)", "(b,a) (a,b)"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(
        code(&doodle(&[
            "equiv",
            "--relation",
            "weak",
            "(a,b) (b,a)",
            "(a,c) (c,a)"
        ])),
        0
    );
    assert_eq!(
        code(&doodle(&[
            "equiv",
            "--relation",
            "strict",
            "(a,b) (b,a)",
            "(b,a) (a,b)"
        ])),
        1
    );
    assert_eq!(
        code(&doodle(&["equiv", "--relation", "weak", "(a,b)", "1"])),
        3
    );
    let b = fixture("borromean.doodle");
    assert_eq!(code(&doodle(&["cobordant", p(&b), p(&b)])), 0);
    let o = doodle(&["cobordant", p(&fixture("hallwitt36.doodle")), p(&b)]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
}

#[test]
fn transform_invariants_dot() {
    let o = doodle(&[
        "transform",
        "(a,b)^[c] (b,a)^[c]",
        "--ops",
        "sigma 1; sigma^-1 1",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        code(&doodle(&[
            "equiv",
            "--relation",
            "strict",
            stdout(&o).trim(),
            "(a,b)^[c] (b,a)^[c]"
        ])),
        0
    );
    let o = doodle(&["invariants", EX1]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("weak class sum:"));
    let o = doodle(&["export-dot", p(&fixture("poppy.doodle"))]);
    assert!(stdout(&o).starts_with("digraph"));
}
