use std::io::Write;
use std::process::{Command, Output, Stdio};

use castkit_harness::golden::{golden_dir, load_cases};

const OMEGA: &str = "((lam (x : Dyn) (x x)@1) (lam (x : Dyn) (x x)@2))@3";
const WRONG_ARGUMENT: &str = "(((lam (x : Dyn) x) not)@1 ((lam (x : Dyn) x) 1)@2)@3";

fn castkit(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_castkit"))
        .args(args)
        .env_remove("CASTKIT_FUEL")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn run_prints_the_value() {
    let o = castkit(&["run", "-", "--calculus", "eda"], "((lam (x : Dyn) x) 4)@1");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "value 4\n");
}

#[test]
fn blame_exits_with_3() {
    let o = castkit(&["run", "-"], "((lam (x : Nat) x) ((lam (y : Dyn) y) true)@1)@2");
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout(&o), "blame 2\n");
}

#[test]
fn parse_and_type_errors_have_their_own_codes() {
    let o = castkit(&["run", "-"], "(lam (x : Nat) x");
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    let o = castkit(&["run", "-"], "((lam (x : Nat) x) true)@1");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fuel_comes_from_the_flag_or_the_environment() {
    let o = castkit(&["run", "-", "--fuel", "50"], OMEGA);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(stdout(&o), "timeout\n");
    let out = Command::new(env!("CARGO_BIN_EXE_castkit"))
        .args(["run", "-", "--trace"])
        .env("CASTKIT_FUEL", "7")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .and_then(|mut c| {
            c.stdin.take().unwrap().write_all(OMEGA.as_bytes())?;
            c.wait_with_output()
        })
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 7 + 1);
}

#[test]
fn trace_has_one_numbered_line_per_step() {
    let o = castkit(&["run", "-", "--trace", "--calculus", "lambda-s"], "((lam (x : Dyn) x) 4)@1");
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    let (last, steps) = lines.split_last().unwrap();
    assert_eq!(*last, "value 4");
    for (i, l) in steps.iter().enumerate() {
        assert!(l.starts_with(&format!("{} ", i + 1)), "{l}");
    }
}

#[test]
fn unknown_calculus_is_a_usage_error() {
    let o = castkit(&["run", "-", "--calculus", "lambda-z"], "1");
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lambda-b1"));
    assert_eq!(castkit(&["--help"], "").status.code(), Some(0));
}

#[test]
fn golden_traces_through_the_binary() {
    let cases = load_cases(&golden_dir()).unwrap();
    assert_eq!(cases.len(), 10);
    for c in cases {
        let path = golden_dir().join(format!("{}.prog", c.name));
        let o = castkit(
            &["run", path.to_str().unwrap(), "--calculus", c.calculus.name(), "--variant", &c.variant, "--trace"],
            "",
        );
        assert_eq!(stdout(&o), c.expected, "{}", c.name);
    }
}

#[test]
fn measure_reports_every_step_and_passes() {
    for calc in ["lambda-s", "hyper"] {
        let o = castkit(&["measure", "-", "--calculus", calc], "((lam (f : (-> Dyn Dyn)) (f 1)@1) (lam (x : Nat) x))@2");
        assert_eq!(o.status.code(), Some(0), "{calc}");
        let text = stdout(&o);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 9 + 2);
        assert!(lines[0].starts_with("1 fun-cast size="));
        assert_eq!(lines[9], "value 1");
        assert!(lines[10].starts_with("PASS max real="));
    }
    let o = castkit(&["measure", "-", "--calculus", "eda"], "1");
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn diff_reports_disagreement_and_exits_0() {
    let o = castkit(&["diff", "-", "--calculi", "edc,lambda-c"], WRONG_ARGUMENT);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "edc        blame -3\nlambda-c   blame 1  *\ndisagreement\n");
    let o = castkit(&["diff", "-"], "((lam (x : Nat) (inc x)@1) 1)@2");
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 9 + 1);
    assert!(text.ends_with("all agree\n"));
}
