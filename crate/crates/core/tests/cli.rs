//! The command-line front end, run as a separate process.

use std::process::Command;

use lab::constructions::fixtures::if_candidates;
use lab::constructions::wrong_lift;
use lab::kernel::{parse_program, Asm};
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn lab(args: &[&str], env: &[(&str, &str)]) -> (String, String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lab"));
    cmd.args(args).env_remove("LAB_BUDGET").env_remove("LAB_QMAX");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn json_lines(s: &str) -> Vec<Value> {
    s.lines().map(|l| serde_json::from_str(l).expect("one JSON object per line")).collect()
}

#[test]
fn excluded_middle_is_provable() {
    let (out, _, code) = lab(&["succ", "decide", "--sentence", "(or (C 3) (not (C 3)))"], &[]);
    assert_eq!((out.as_str(), code), ("PROVABLE\n", 0));
}

#[test]
fn loop_exhausts_with_exit_2() {
    let (out, _, code) = lab(&["run", "--program", &fixture("loop.sexp"), "--input", "0", "--budget", "100"], &[]);
    assert_eq!((out.as_str(), code), ("EXHAUSTED\n", 2));
}

#[test]
fn wrong_lift_is_refuted() {
    let (out, _, code) = lab(&["refute-if", "--theory", "prop", "--candidate", &fixture("wrong_lift.sexp")], &[]);
    assert_eq!(code, 0);
    let r = &json_lines(&out)[0];
    assert_eq!(r["construction"], "keukensmurf");
    assert!(r["branch"] == "F1" || r["branch"] == "F2", "{r}");
    assert!(r["certificates"].as_array().is_some_and(|c| !c.is_empty()));
}

#[test]
fn usage_errors_print_the_grammar() {
    for args in [&["bogus"][..], &["run", "--input", "3"], &["succ", "decide"]] {
        let (out, err, code) = lab(args, &[]);
        assert_eq!(code, 1, "{args:?}");
        assert!(out.is_empty());
        assert!(err.contains("Commands:") && err.contains("refute-if"), "{err}");
    }
    let (out, _, code) = lab(&["--help"], &[]);
    assert_eq!(code, 0);
    assert!(out.contains("kleene-witness"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let (_, err, code) = lab(&["parse", "--sentence", "(and (atom 1)"], &[]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
}

#[test]
fn run_traces_one_line_per_step() {
    let (out, _, code) = lab(&["run", "--program", &fixture("succ.sexp"), "--input", "41", "--trace"], &[]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.last(), Some(&"CONVERGED 42"));
    let steps = json_lines(&lines[..lines.len() - 1].join("\n"));
    assert_eq!(steps.len(), 2);
    assert_eq!(steps[0]["op"], "INC");
    assert_eq!(steps[0]["regs"]["0"], 41);
    assert_eq!(steps[1]["op"], "HALT");
    // fixed key order
    assert!(lines[0].starts_with("{\"step\":0,\"pc\":0,\"op\":\"INC\",\"regs\":"), "{}", lines[0]);
}

#[test]
fn parse_echoes_canonical_form_and_code() {
    let (out, _, code) = lab(&["parse", "--sentence", "(atom   1)"], &[]);
    assert_eq!((out.as_str(), code), ("(atom 1)\n218\n", 0));
    let (out, _, _) = lab(&["parse", "--sentence", "(bottom)"], &[]);
    assert_eq!(out, "(bottom)\n26\n");
}

#[test]
fn witnesses_print_sentences() {
    let (out, _, code) = lab(&["prop", "witness", "--sentence", "(atom 0)"], &[]);
    assert_eq!(code, 0);
    let w = out.trim();
    let (v, _, _) = lab(&["prop", "decide", "--assume", &fixture("p0.sexp"), "--sentence", w], &[]);
    assert_eq!(v, "INDEPENDENT\n");
}

#[test]
fn kleene_witness_branches() {
    let cases = [
        ("everything.sexp", "loop.sexp", "i_first", 0),
        ("loop.sexp", "everything.sexp", "j_first", 0),
        ("loop.sexp", "loop.sexp", "neither", 0),
    ];
    for (i, j, branch, exit) in cases {
        let (out, _, code) = lab(&["kleene-witness", "--i", &fixture(i), "--j", &fixture(j), "--budget", "100000"], &[]);
        assert_eq!(code, exit, "{i} {j}");
        let r = &json_lines(&out)[0];
        assert_eq!(r["branch"], branch, "{i} {j}");
        assert_eq!(r["value"].is_null(), branch == "neither", "{r}");
    }
}

#[test]
fn flags_beat_environment_beat_defaults() {
    let lp = fixture("loop.sexp");
    let steps = |args: &[&str], env: &[(&str, &str)]| {
        let mut a = vec!["run", "--program", &lp, "--input", "0", "--trace"];
        a.extend_from_slice(args);
        let (out, _, code) = lab(&a, env);
        assert_eq!(code, 2);
        out.lines().count() - 1
    };
    assert_eq!(steps(&[], &[("LAB_BUDGET", "7")]), 7);
    assert_eq!(steps(&["--budget", "5"], &[("LAB_BUDGET", "7")]), 5);
    assert_eq!(steps(&["--budget", "5"], &[]), 5);

    // the default budget is large enough for a short loop
    let (out, _, code) = lab(&["run", "--program", &fixture("succ.sexp"), "--input", "0"], &[]);
    assert_eq!((out.as_str(), code), ("CONVERGED 1\n", 0));

    let rank2 = "(exists x (forall y (not (= (S y) x))))";
    let decide = |args: &[&str], env: &[(&str, &str)]| {
        let mut a = args.to_vec();
        a.extend(["succ", "decide", "--sentence", rank2]);
        lab(&a, env).2
    };
    assert_eq!(decide(&[], &[]), 0);
    assert_eq!(decide(&[], &[("LAB_QMAX", "1")]), 1);
    assert_eq!(decide(&["--qmax", "2"], &[("LAB_QMAX", "1")]), 0);
}

#[test]
fn fixture_programs_match_the_library() {
    let file = |n: &str| parse_program(&std::fs::read_to_string(fixture(n)).unwrap()).unwrap().encode();
    assert_eq!(file("wrong_lift.sexp"), wrong_lift().e);
    assert_eq!(file("wrong_lift.sexp"), if_candidates()[0].e);
    assert_eq!(file("const_bottom.sexp"), if_candidates()[1].e);
    let mut halt = Asm::new();
    halt.halt();
    assert_eq!(file("everything.sexp"), halt.code());
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let runs: Vec<Vec<String>> = vec![
        vec!["refute-if".into(), "--theory".into(), "prop".into(), "--candidate".into(), fixture("const_bottom.sexp")],
        vec!["funiform".into(), "--theory".into(), "prop".into(), "--random".into(), "3".into(), "--seed".into(), "9".into()],
        vec!["pourel".into(), "--theory".into(), "prop".into(), "--candidate".into(), fixture("const_p1.sexp"),
             "--i".into(), fixture("p1.sexp"), "--j".into(), fixture("empty.sexp")],
    ];
    for args in runs {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = lab(&a, &[]);
        assert_eq!(first.2, 0, "{args:?}: {}", first.1);
        assert_eq!(first, lab(&a, &[]), "{args:?}");
    }
}
