use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ordim"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, content).unwrap();
    p
}

const TWO_TWO: &str = "poset v1\nelements: a b c d\na < b\nc < d\n";
const CHAIN5: &str = "poset v1\nelements: a b c d e\na < b\nb < c\nc < d\nd < e\n";
const UNIT_REP: &str = "rep v1\na = 0 1\nb = 1/2 3/2\nc = 2 3\n";

fn standard_example_3() -> String {
    let mut s = String::from("poset v1\nelements: a1 a2 a3 b1 b2 b3\n");
    for i in 1..=3 {
        for j in 1..=3 {
            if i != j {
                s.push_str(&format!("a{} < b{}\n", i, j));
            }
        }
    }
    s
}

#[test]
fn recognize_reports_forbidden_suborder() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "p.poset", TWO_TWO);
    let out = run(&["recognize", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("interval order: no; witness: a b c d"));
    assert!(text.contains("semiorder: no"));

    let strict = run(&["recognize", f.to_str().unwrap(), "--require-interval"]);
    assert_eq!(code(&strict), 1);
}

#[test]
fn recognize_reports_representation_facts() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "u.rep", UNIT_REP);
    let out = run(&["recognize", f.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("twin-free: yes"));
    assert!(text.contains("distinguishing: yes"));
    assert!(text.contains("interval order: yes"));
    assert!(text.contains("semiorder: yes"));
    assert!(text.contains("a < c"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.poset", "not a header\n");
    assert_eq!(code(&run(&["recognize", f.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["dim", f.to_str().unwrap()])), 2);
    let missing = dir.path().join("absent.poset");
    assert_eq!(code(&run(&["dim", missing.to_str().unwrap()])), 2);
}

#[test]
fn dim_prints_the_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain.poset", CHAIN5);
    let out = run(&["dim", chain.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "1");

    let s3 = write(dir.path(), "s3.poset", &standard_example_3());
    let out = run(&["dim", s3.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "3");

    let capped = run(&["dim", s3.to_str().unwrap(), "--max-k", "2"]);
    assert_eq!(code(&capped), 1);
    assert!(stderr(&capped).contains("exceeds"));
}

#[test]
fn realize_emits_a_verified_family() {
    let dir = tempfile::tempdir().unwrap();
    let rep = write(
        dir.path(),
        "z.rep",
        "rep v1\na = 0 0\nb = 1/4 5/4\nc = 1 1\nd = 3/4 7/4\n",
    );
    let out = run(&["realize", rep.to_str().unwrap(), "--class", "01"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("realizer v1 k="));
    let k: usize = text
        .lines()
        .next()
        .unwrap()
        .strip_prefix("realizer v1 k=")
        .unwrap()
        .parse()
        .unwrap();
    assert!(k <= 3);
    assert!(stderr(&out).contains("bound 3"));

    // The emitted file must verify against the induced poset.
    let induced = "poset v1\nelements: a b c d\na < b\na < c\na < d\n";
    let pf = write(dir.path(), "z.poset", induced);
    let rf = write(dir.path(), "z.real", &text);
    let verify = run(&["verify", pf.to_str().unwrap(), rf.to_str().unwrap()]);
    assert_eq!(code(&verify), 0);
    assert!(stdout(&verify).contains("realizer: yes"));
}

#[test]
fn realize_range_class_accepts_t() {
    let dir = tempfile::tempdir().unwrap();
    let rep = write(
        dir.path(),
        "r.rep",
        "rep v1\na = 0 1\nb = 1/2 5/2\nc = 3 7\n",
    );
    let out = run(&[
        "realize",
        rep.to_str().unwrap(),
        "--class",
        "range",
        "--t",
        "4",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("realizer v1 k="));

    let missing_t = run(&["realize", rep.to_str().unwrap(), "--class", "range"]);
    assert_eq!(code(&missing_t), 2);
}

#[test]
fn realize_rejects_lengths_outside_the_class() {
    let dir = tempfile::tempdir().unwrap();
    let rep = write(dir.path(), "long.rep", "rep v1\na = 0 5\nb = 1 2\n");
    let out = run(&["realize", rep.to_str().unwrap(), "--class", "c2"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("outside class"));
}

#[test]
fn distinguish_separates_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let rep = write(dir.path(), "t.rep", "rep v1\na = 0 1\nb = 0 1\n");
    let out = run(&["distinguish", rep.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("a = 0 1"));
    assert!(text.contains("b = 1/2 3/2"));

    let frozen = write(dir.path(), "f.rep", "rep v1\na = 2 2\nb = 2 2\n");
    let stuck = run(&["distinguish", frozen.to_str().unwrap()]);
    assert_eq!(code(&stuck), 1);
    assert!(stderr(&stuck).contains("cannot be separated"));
}

#[test]
fn distinguish_enforces_the_length_class() {
    let dir = tempfile::tempdir().unwrap();
    let rep = write(dir.path(), "t.rep", "rep v1\na = 0 1\nb = 0 3\n");
    let out = run(&["distinguish", rep.to_str().unwrap(), "--class", "{0,1}"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("outside class"));
}

#[test]
fn verify_rejects_a_non_realizer() {
    let dir = tempfile::tempdir().unwrap();
    let pf = write(dir.path(), "a.poset", "poset v1\nelements: a b\n");
    let rf = write(dir.path(), "a.real", "realizer v1 k=1\na b\n");
    let out = run(&["verify", pf.to_str().unwrap(), rf.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("realizer: no"));
}

#[test]
fn search_survey_of_unit_grid() {
    let out = run(&[
        "search", "--n", "4", "--grid", "2", "--class", "{1}", "--max-k", "3",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("search v1\n"));
    let max: usize = text
        .lines()
        .find_map(|l| l.strip_prefix("max "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(max <= 3);
    assert!(stderr(&out).contains("elapsed"));
}

#[test]
fn search_verify_mode_reports_no_violations() {
    let out = run(&[
        "search", "--n", "3", "--grid", "2", "--class", "{0,1}", "--verify", "01",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("violations 0"));
}

#[test]
fn emitted_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let rep = write(dir.path(), "u.rep", UNIT_REP);
    let first = run(&["distinguish", rep.to_str().unwrap()]);
    assert_eq!(code(&first), 0);
    let again = write(dir.path(), "u2.rep", &stdout(&first));
    let second = run(&["distinguish", again.to_str().unwrap()]);
    assert_eq!(code(&second), 0);
    assert_eq!(stdout(&first), stdout(&second));
}
