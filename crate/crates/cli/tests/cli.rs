//! End-to-end tests of the `extensia` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn scratch(name: &str, src: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("extensia-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, src).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extensia"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn schema() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/model.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

#[test]
fn collapse_of_the_overview_program() {
    let path = fixture("overview.hl");
    let out = run(&["solve", "--collapse", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in ["p = True", "q = False", "r = False", "s = True"] {
        assert!(
            text.lines().any(|l| l == line),
            "missing {line:?} in {text}"
        );
    }
}

#[test]
fn wadge_program_leaves_q_of_b_at_zero() {
    let path = fixture("wadge.hl");
    let out = run(&["solve", "--wadge", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l == "q(b) = 0"));
    let out = run(&["solve", "--wadge", "--json", path.to_str().unwrap()]);
    let v = json(&out);
    assert_eq!(v["model"]["q"]["(b)"]["sign"], "0");
    assert_eq!(v["collapsed"]["q"]["(b)"], "Undef");
}

#[test]
fn json_output_matches_the_schema() {
    let validator = schema();
    for (args, file) in [
        (vec!["solve", "--json"], "overview.hl"),
        (vec!["solve", "--json", "--wadge"], "wadge.hl"),
        (vec!["oracle-min", "--json", "--kappa", "2"], "overview.hl"),
    ] {
        let path = fixture(file);
        let mut all = args.clone();
        all.push(path.to_str().unwrap());
        let out = run(&all);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{all:?}: {errors:?}");
    }
}

#[test]
fn human_and_json_outputs_agree() {
    let path = fixture("overview.hl");
    let human = stdout(&run(&["solve", "--collapse", path.to_str().unwrap()]));
    let v = json(&run(&["solve", "--json", path.to_str().unwrap()]));
    let collapsed = v["collapsed"].as_object().unwrap();
    let mut n = 0;
    for (pred, cells) in collapsed {
        for (args, value) in cells.as_object().unwrap() {
            let label = if args == "()" {
                pred.clone()
            } else {
                format!("{pred}{args}")
            };
            let line = format!("{label} = {}", value.as_str().unwrap());
            assert!(human.lines().any(|l| l == line), "missing {line:?}");
            n += 1;
        }
    }
    assert_eq!(n, human.lines().count());
}

#[test]
fn output_is_byte_identical_across_runs() {
    let path = fixture("wadge.hl");
    let args = ["solve", "--wadge", "--json", path.to_str().unwrap()];
    let first = run(&args).stdout;
    for _ in 0..3 {
        assert_eq!(run(&args).stdout, first);
    }
}

#[test]
fn wfs_agrees_with_collapsed_solve_on_normal_programs() {
    let path = scratch("normal.hl", "p :- not q.\nq :- not p.\nr :- not s.\n");
    let wfs = json(&run(&["wfs", "--json", path.to_str().unwrap()]));
    let solve = json(&run(&["solve", "--json", path.to_str().unwrap()]));
    for (atom, label) in [
        ("p", "Undef"),
        ("q", "Undef"),
        ("r", "True"),
        ("s", "False"),
    ] {
        assert_eq!(wfs["collapsed"][atom], label);
        assert_eq!(solve["collapsed"][atom]["()"], label);
    }
}

#[test]
fn function_symbols_are_a_restriction_error() {
    let path = scratch("fun.hl", "p(f(a)).\n");
    let out = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn syntax_errors_exit_with_two() {
    let path = scratch("bad.hl", "p( :- .\n");
    assert_eq!(
        run(&["solve", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn usage_errors_exit_with_one() {
    let path = fixture("overview.hl");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["solve", "--kappa", "0", p]).status.code(), Some(1));
    assert_eq!(run(&["solve", "--kappa", "many", p]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn exhausted_budget_exits_with_four() {
    let path = fixture("overview.hl");
    let out = run(&[
        "oracle-min",
        "--kappa",
        "3",
        "--budget",
        "2",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn query_evaluates_in_the_minimum_model() {
    let path = fixture("overview.hl");
    let out = run(&["query", path.to_str().unwrap(), "r | s"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "T1");
}
