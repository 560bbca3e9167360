use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_earslice");

const TRIPLE: &str = "p hyp 3 3 3\ne 0 1 2\ne 0 1 2\ne 0 1 2\n";
const FANO: &str =
    "c Fano plane\np hyp 7 7 3\ne 0 1 2\ne 0 3 4\ne 0 5 6\ne 1 3 5\ne 1 4 6\ne 2 3 6\ne 2 4 5\n";
const TWO_TRIPLES: &str = "p hyp 6 6 3\ne 0 1 2\ne 0 1 2\ne 0 1 2\ne 3 4 5\ne 3 4 5\ne 3 4 5\n";
const K33: &str = "p bip 3 3 9\ne 0 0\ne 0 1\ne 0 2\ne 1 0\ne 1 1\ne 1 2\ne 2 0\ne 2 1\ne 2 2\n";

fn file(name: &str, contents: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["solve"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn solve_triple() {
    let o = run(&["solve", &file("triple.hyp", TRIPLE)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "triangle 0 1 2\n");
}

#[test]
fn solve_reads_stdin() {
    let mut child = Command::new(BIN)
        .args(["solve", "-", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(TRIPLE.as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(json["kind"], "tri-partition");
    assert_eq!(json["triangle"], serde_json::json!([0, 1, 2]));
}

#[test]
fn solve_then_verify_fano() {
    let instance = file("fano.hyp", FANO);
    let o = run(&["solve", &instance]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(
        text.lines().filter(|l| l.starts_with("triangle")).count(),
        1
    );
    assert_eq!(text.lines().filter(|l| l.starts_with("pair")).count(), 2);
    let cert = file("fano.cert", &text);
    let v = run(&["verify", &instance, &cert]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(stdout(&v), "OK\n");
}

#[test]
fn disconnected_input() {
    let instance = file("two.hyp", TWO_TRIPLES);
    let o = run(&["solve", &instance]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("disconnected"));
    let o = run(&["solve", &instance, "--components"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "triangle 0 1 2\ntriangle 3 4 5\n");
    let cert = file("two.cert", &stdout(&o));
    assert_eq!(run(&["verify", &instance, &cert]).status.code(), Some(1));
    assert_eq!(
        run(&["verify", &instance, &cert, "--components"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn invalid_certificates() {
    let instance = file("fano2.hyp", FANO);
    let overlap = file(
        "overlap.cert",
        "triangle 0 1 2\npair 2 3\npair 4 6\npair 5 6\n",
    );
    let o = run(&["verify", &instance, &overlap]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not disjoint"));
    let valid = file("valid.cert", "triangle 0 1 2\npair 3 4\npair 5 6\n");
    assert_eq!(run(&["verify", &instance, &valid]).status.code(), Some(0));
    let two = file("two2.hyp", TWO_TRIPLES);
    let across = file("across.cert", "pair 0 3\npair 1 4\npair 2 5\n");
    let o = run(&["verify", &two, &across, "--components"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("block not in hereditary closure"));
    let wrong = file("wrong.cert", "triangle 0 1 3\npair 2 4\npair 5 6\n");
    let o = run(&["verify", &instance, &wrong]);
    assert_eq!(o.status.code(), Some(1));
    let too_big = file("toobig.cert", "triangle 0 1 2\npair 3 4\npair 5 9\n");
    assert_eq!(run(&["verify", &instance, &too_big]).status.code(), Some(2));
}

#[test]
fn malformed_input() {
    let bad = file("bad.hyp", "p hyp 3 1 3\ne 0 1 7\n");
    let o = run(&["solve", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    let irregular = file("irregular.hyp", "p hyp 3 1 3\ne 0 1 2\n");
    let o = run(&["solve", &irregular]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("regular"));
    assert_eq!(run(&["solve", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn gen_outputs() {
    let o = run(&["gen", "--n", "3", "--seed", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), TRIPLE);
    assert_eq!(run(&["gen", "--n", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["gen", "--bip", "--n", "2", "--k", "3"]).status.code(),
        Some(2)
    );
    let o = run(&["gen", "--bip", "--n", "3", "--k", "3"]);
    assert_eq!(stdout(&o), K33);
    let a = run(&["gen", "--n", "40", "--seed", "11", "--connected"]);
    let b = run(&["gen", "--n", "40", "--seed", "11", "--connected"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(
        a.stdout,
        run(&["gen", "--n", "40", "--seed", "12", "--connected"]).stdout
    );
}

#[test]
fn lu_round_trip() {
    let instance = file("k33.bip", K33);
    let o = run(&["lu", &instance]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().all(|l| l.starts_with("keep ")));
    let cert = file("k33.cert", &text);
    let v = run(&["verify", "--lu", &instance, &cert]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    let bad = file("k33bad.cert", "keep 0 0\nkeep 1 1\n");
    let v = run(&["verify", "--lu", &instance, &bad]);
    assert_eq!(v.status.code(), Some(1));
}

#[test]
fn oracle_agreement() {
    let o = run(&["oracle", &file("fano3.hyp", FANO)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("agreement yes"));
    let big = stdout(&run(&["gen", "--n", "21", "--seed", "1", "--connected"]));
    assert_eq!(
        run(&["oracle", &file("big.hyp", &big)]).status.code(),
        Some(2)
    );
}

#[test]
fn ears_output() {
    let c5 = file("c5.gr", "p gr 5 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n");
    let o = run(&["ears", &c5]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(stdout(&o).starts_with("ear 0 nontrivial : "));
    let c4 = file("c4.gr", "p gr 4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n");
    let o = run(&["ears", &c4]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("factor-critical"));
    let o = run(&["ears", &file("fano4.hyp", FANO), "--maximal"]);
    assert_eq!(o.status.code(), Some(0));
}
