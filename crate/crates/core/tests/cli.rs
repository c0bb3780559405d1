use std::path::{Path, PathBuf};
use std::process::Command;

use multiplicity::cli::run_command;
use tempfile::TempDir;

const ZERO_MTA: &str = "\
mta
alphabet: a/0 f/2
dim: 2
symbol a
1 2
1 1
symbol f
4 2
1 0
0 1
1 1
2 0
final:
2 1
0
0
";

// Counts occurrences of `a`.
const COUNT_MWA: &str = "\
mwa
alphabet: a b
dim: 2
symbol a
2 2
1 1
0 1
symbol b
2 2
1 0
0 1
initial:
1 2
1 0
final:
2 1
0
1
";

const CIRCUIT: &str = "\
g0 = var x0
g1 = var x1
g2 = add g0 g1
g3 = mul g2 g2
g4 = mul g0 g1
g5 = sub g3 g4
output g5
";

fn fixtures() -> (TempDir, PathBuf, PathBuf, PathBuf) {
    let dir = TempDir::new().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let zero = write("zero.mta", ZERO_MTA);
    let count = write("count.mwa", COUNT_MWA);
    let circuit = write("c.circ", CIRCUIT);
    (dir, zero, count, circuit)
}

fn run(args: &[&str]) -> multiplicity::cli::CommandResult {
    run_command(std::iter::once("multiplicity").chain(args.iter().copied()))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn minimize_zero_tree_automaton() {
    let (_d, zero, _, _) = fixtures();
    let r = run(&["minimize", s(&zero)]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    assert!(r.stdout.contains("dim: 0\n"));
    assert!(r.stdout.ends_with("# dim 2 -> 0\n"));
    let gram = run(&["minimize", "--method", "gram", s(&zero)]);
    assert!(gram.stdout.ends_with("# dim 2 -> 0\n"));
}

#[test]
fn equivalence_and_zeroness() {
    let (_d, zero, count, _) = fixtures();
    let r = run(&["equiv", s(&count), s(&count)]);
    assert_eq!((r.status, r.stdout.as_str()), (0, "equivalent\n"));
    assert_eq!(run(&["zeroness", s(&zero)]).stdout, "zero\n");
    assert_eq!(run(&["zeroness", s(&count)]).stdout, "nonzero\n");
    let mixed = run(&["equiv", s(&zero), s(&count)]);
    assert_eq!(mixed.status, 1);
}

#[test]
fn eval_word_and_tree() {
    let (_d, zero, count, _) = fixtures();
    assert_eq!(run(&["eval", s(&count), "b a a"]).stdout, "2\n");
    assert_eq!(run(&["eval", s(&count), ""]).stdout, "0\n");
    assert_eq!(run(&["eval", s(&zero), "f(a,f(a,a))"]).stdout, "0\n");
}

#[test]
fn product_and_difference() {
    let (d, _, count, _) = fixtures();
    let sq = run(&["product", s(&count), s(&count)]);
    assert_eq!(sq.status, 0);
    let p = d.path().join("sq.mwa");
    std::fs::write(&p, &sq.stdout).unwrap();
    assert_eq!(run(&["eval", s(&p), "a b a a"]).stdout, "9\n");
    let diff = run(&["diff", s(&count), s(&count)]);
    let q = d.path().join("diff.mwa");
    std::fs::write(&q, &diff.stdout).unwrap();
    assert_eq!(run(&["zeroness", s(&q)]).stdout, "zero\n");
}

#[test]
fn hankel_rank_and_reduction() {
    let (d, zero, count, _) = fixtures();
    assert_eq!(run(&["hankel-rank", s(&count)]).stdout, "2\n");
    assert_eq!(run(&["hankel-rank", s(&zero)]).stdout, "0\n");
    for (k, expect) in [(1, "nonzero\n"), (2, "zero\n")] {
        let c = run(&["to-acit", s(&count), &k.to_string()]);
        assert_eq!(c.status, 0, "{}", c.stderr);
        let p = d.path().join(format!("r{k}.circ"));
        std::fs::write(&p, &c.stdout).unwrap();
        let v = run(&["acit", "--exact", s(&p)]);
        assert_eq!(v.stdout, format!("{expect}# confidence: exact\n"));
    }
}

#[test]
fn acit_is_reproducible() {
    let (_d, _, _, circuit) = fixtures();
    let a = run(&["acit", "--seed", "7", "--trials", "5", s(&circuit)]);
    let b = run(&["acit", "--seed", "7", "--trials", "5", s(&circuit)]);
    assert_eq!(a, b);
    assert_eq!(a.stdout, "nonzero\n# confidence: exact\n");

    // (x0 + x1)² − x0·x1 − x0·(x0 + x1) − x1² vanishes identically.
    let dir = TempDir::new().unwrap();
    let id = dir.path().join("id.circ");
    let text = CIRCUIT.replace(
        "output g5\n",
        "g6 = mul g0 g2\ng7 = sub g5 g6\ng8 = mul g1 g1\ng9 = sub g7 g8\noutput g9\n",
    );
    std::fs::write(&id, text).unwrap();
    let z = run(&["acit", "--seed", "7", "--trials", "5", s(&id)]);
    assert_eq!(z, run(&["acit", "--seed", "7", "--trials", "5", s(&id)]));
    assert_eq!(z.stdout, "zero\n# confidence: one-sided, 5 trials, multiplicative depth 1\n");
    let exact = run(&["acit", "--exact", s(&circuit)]);
    assert_eq!(exact.status, 1);
}

#[test]
fn sentence_pipeline() {
    let dir = TempDir::new().unwrap();
    let sen = dir.path().join("s.txt");
    // x1² − 2 = 0 has no rational solution; x1² − 4 = 0 has x1 = 2.
    std::fs::write(&sen, "vars 1\n1:2 -4:0\n").unwrap();
    let enc = run(&["encode-sentence", s(&sen)]);
    assert_eq!(enc.status, 0, "{}", enc.stderr);
    assert!(enc.stdout.starts_with("# dimension 3\n# excluded: s x1 t\t= a1\n"));
    let sample = dir.path().join("sample.txt");
    std::fs::write(&sample, &enc.stdout).unwrap();
    let fig = run(&["figure-automaton", s(&sen), "--witness", "2"]);
    let a = dir.path().join("fig.mwa");
    std::fs::write(&a, &fig.stdout).unwrap();
    assert_eq!(run(&["verify-sample", s(&a), s(&sample)]).stdout, "consistent\n");
    let fig = run(&["figure-automaton", s(&sen), "--witness", "-2"]);
    std::fs::write(&a, &fig.stdout).unwrap();
    assert_eq!(run(&["verify-sample", s(&a), s(&sample)]).stdout, "consistent\n");
    let fig = run(&["figure-automaton", s(&sen), "--witness", "1"]);
    std::fs::write(&a, &fig.stdout).unwrap();
    assert_eq!(run(&["verify-sample", s(&a), s(&sample)]).stdout, "inconsistent\n");
}

#[test]
fn learn_from_sample() {
    let dir = TempDir::new().unwrap();
    let sample = dir.path().join("pow.txt");
    std::fs::write(&sample, "\t1\na\t2\na a\t4\n").unwrap();
    let r = run(&["learn-hankel", s(&sample), "--rows", "", "--cols", ""]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    let a = dir.path().join("pow.mwa");
    std::fs::write(&a, &r.stdout).unwrap();
    assert_eq!(run(&["eval", s(&a), "a a a"]).stdout, "8\n");
}

#[test]
fn exit_codes() {
    let (d, _, count, _) = fixtures();
    let usage = run(&["minimize"]);
    assert_eq!(usage.status, 2);
    assert!(usage.stdout.is_empty());
    assert_eq!(run(&["no-such-command"]).status, 2);
    assert_eq!(run(&["--help"]).status, 0);

    let missing = run(&["zeroness", s(&d.path().join("absent.mta"))]);
    assert_eq!(missing.status, 1);
    assert!(missing.stderr.starts_with("error: "));

    let bad = d.path().join("bad.mwa");
    std::fs::write(&bad, COUNT_MWA.replace("1 1\n0 1", "1 1\n0 1/0")).unwrap();
    let r = run(&["zeroness", s(&bad)]);
    assert_eq!(r.status, 1);
    assert!(r.stderr.lines().next().unwrap().starts_with("error: "));
    assert!(r.stderr.contains(":7:3:"), "{}", r.stderr);

    assert_eq!(run(&["eval", s(&count), "a z"]).status, 1);
}

#[test]
fn inputs_are_not_modified() {
    let (_d, zero, count, circuit) = fixtures();
    run(&["minimize", s(&zero)]);
    run(&["minimize", s(&count)]);
    run(&["product", s(&count), s(&count)]);
    run(&["acit", s(&circuit)]);
    assert_eq!(std::fs::read_to_string(&zero).unwrap(), ZERO_MTA);
    assert_eq!(std::fs::read_to_string(&count).unwrap(), COUNT_MWA);
    assert_eq!(std::fs::read_to_string(&circuit).unwrap(), CIRCUIT);
}

#[test]
fn binary_matches_library() {
    let (_d, _, count, _) = fixtures();
    let out = Command::new(env!("CARGO_BIN_EXE_multiplicity"))
        .args(["eval", s(&count), "b a a"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "2\n");

    let out = Command::new(env!("CARGO_BIN_EXE_multiplicity")).arg("bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_multiplicity"))
        .args(["zeroness", "/nonexistent/file.mta"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error: "));
}
