use std::process::Command;

use liaison_cli::script::{Expr, Stmt};
use liaison_cli::{emit, parse_script, run_source, Flags, RunError};
use liaison::polycore::FieldSpec;
use proptest::prelude::*;
use serde_json::Value;

fn flags() -> Flags {
    Flags::default()
}

fn run(src: &str) -> liaison_cli::RunOutcome {
    run_source(src, &flags()).expect("script parses")
}

fn parse_err(src: &str) -> liaison_cli::ParseError {
    match run_source(src, &flags()) {
        Err(RunError::Parse(e)) => e,
        other => panic!("expected a parse error, got {other:?}"),
    }
}

fn json_lines(out: &liaison_cli::RunOutcome) -> Vec<Value> {
    emit(&out.records, true).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn empty_script() {
    let out = run("");
    assert!(out.records.is_empty());
    assert_eq!(out.exit_code(), 0);
    let out = run("  # only a comment\n// and another\n");
    assert!(out.records.is_empty());
    assert_eq!(out.exit_code(), 0);
}

#[test]
fn betti_of_a_cyclic_module() {
    let out = run("ring A = k[x] local / (x^3); show betti(coker([[x]]), 4);");
    assert_eq!(out.exit_code(), 0);
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["kind"], "betti");
    assert_eq!(recs[0]["payload"]["betti"], serde_json::json!([1, 1, 1, 1, 1]));
    assert_eq!(recs[0]["check"], Value::Null);
    let text = emit(&out.records, false);
    assert!(text.contains("beta  1 1 1 1 1"), "{text}");
}

#[test]
fn statements_and_bindings() {
    let src = "
        ring A = k[x,y] local / (x^2, y^2);
        ideal I = ideal(x, y);
        poly f = 3*x*y - x/2 + (x+y)^2;
        module M = quotient(I);
        let k = residue();
        check nf(f, ideal(y)) == -x/2;
        check nf(f, ideal(x)) == 0;
        check member(x*y, I);
        check length(M) == 1;
        check M == k;
        check ann(k) == maximal();
        check ideal(x*y) <= maximal()^2;
        check stable(k);
        check numgens(omega(k, 3)) == 4;
        check vdim() == 4;
        check socle() == 1;
        check gorenstein();
        check length(hom(k, free(1))) == 1;
        check iszero(tor(free(1), k, 1));
        check length(ext(k, k, 2)) == 3;
        check dagger(k) == k;
        check dual(k) == k;
        check transpose(transpose(coker([[x, y]]))) == coker([[x, y]]);
        check tensor(k, k) == k;
    ";
    let out = run(src);
    for r in &out.records {
        let c = r.check.as_ref().unwrap();
        assert!(c.pass, "{} failed:\n{}", c.expr, r.text);
    }
    assert!(out.error.is_none(), "{:?}", out.error);
    assert_eq!(out.exit_code(), 0);
}

#[test]
fn linkage_functions() {
    let src = "
        ring B = k[x] local / (x^3);
        module M = coker([[x]]);
        check link(M) == quotient(ideal(x^2));
        check link(M, ideal(0)) == quotient(ideal(x^2));
        show cone(M, ideal(0), 4);
        show mcmapprox(M, ideal(0), 4);
        show cx(M);
        show eisenbud(residue(), 5);
        show transfer(M, ideal(0));
        show verdict(residue(), M, ext_from, 2, 6);
        show verdict(M, free(1), ext_into);
        show verdict(residue(), link(M), tor, 2, 6);
        show fingerprint(M);
        show resolve(M, 3);
    ";
    let out = run(src);
    assert!(out.error.is_none(), "{:?}", out.error);
    let recs = json_lines(&out);
    let kinds: Vec<&str> = recs.iter().map(|r| r["kind"].as_str().unwrap()).collect();
    assert_eq!(
        kinds,
        [
            "module",
            "module",
            "cone-report",
            "mcm-approx",
            "complexity",
            "operators",
            "transfer",
            "verdict",
            "verdict",
            "verdict",
            "fingerprint",
            "betti"
        ]
    );
    assert_eq!(recs[2]["payload"]["concentrated"], true);
    assert_eq!(recs[2]["payload"]["matches_link"], true);
    assert_eq!(recs[3]["payload"]["certified"], true);
    assert_eq!(recs[4]["payload"]["class"], "1");
    assert_eq!(recs[5]["payload"]["periodic_from"], 0);
    assert_eq!(recs[6]["payload"]["matches"], true);
    for i in 7..10 {
        assert_eq!(recs[i]["payload"]["label"], "window evidence");
    }
    assert_eq!(recs[7]["payload"]["vanishes_on_window"], false);
    assert_eq!(recs[8]["payload"]["vanishes_on_window"], true);
    // The default window starts at dim A + 2.
    assert_eq!(recs[8]["payload"]["window"], serde_json::json!([2, 8]));
    assert_eq!(recs[9]["payload"]["vanishes_on_window"], false);
    assert_eq!(recs[11]["payload"]["differentials"][0], serde_json::json!([["x"]]));
}

#[test]
fn json_shape() {
    let out = run("ring A = k[x] local / (x^3); show ideal(x); check 1 == 1;");
    for r in json_lines(&out) {
        let o = r.as_object().unwrap();
        let mut keys: Vec<&String> = o.keys().collect();
        keys.sort();
        assert_eq!(keys, ["check", "kind", "payload", "provenance"]);
        let p = &r["provenance"];
        assert_eq!(p["characteristic"], 32003);
        assert_eq!(p["order"], "local");
        assert_eq!(p["bounds"]["resolution"], 8);
        assert_eq!(p["bounds"]["window"], serde_json::json!([2, 8]));
        assert_eq!(p["seed"], Value::Null);
    }
    let recs = json_lines(&out);
    assert_eq!(recs[1]["check"], serde_json::json!({ "expr": "1 == 1", "pass": true }));
}

#[test]
fn provenance_follows_flags() {
    let f = Flags { bound: 6, characteristic: 0, seed: Some(5), ..Flags::default() };
    let out = run_source("ring A = k[x] grevlex; show x;", &f).unwrap();
    let recs = json_lines(&out);
    assert_eq!(recs[0]["provenance"]["characteristic"], 0);
    assert_eq!(recs[0]["provenance"]["order"], "grevlex");
    assert_eq!(recs[0]["provenance"]["bounds"]["window"], serde_json::json!([2, 6]));
    assert_eq!(recs[0]["provenance"]["seed"], 5);
}

#[test]
fn parse_errors_report_positions() {
    let e = parse_err("ring A = k[x] local;\nshow y;");
    assert_eq!(e.pos, 26);
    assert!(e.msg.contains("not bound"));
    let e = parse_err("ring A = k[x] local; show x");
    assert!(e.msg.contains("terminated"));
    assert_eq!(e.pos, 21);
    let e = parse_err("ring A = k[x] local; let f = x; let f = x^2;");
    assert!(e.msg.contains("already bound"));
    let e = parse_err("ring A = k[x] local; let x = 1;");
    assert!(e.msg.contains("already bound"));
    let e = parse_err("ring A = k[x] local / (x^3; show x;");
    assert!(e.pos >= 9, "{e:?}");
    let e = parse_err("frobnicate x;");
    assert_eq!(e.pos, 0);
    let e = parse_err("ring A = k[x] local; show (x + ;");
    assert_eq!(e.pos, 31);
    let e = parse_err("ring A = k[x] local; show [[x, 1], [x]];");
    assert!(e.msg.contains("different lengths"));
    let e = parse_err("ring A = k[x] local; show x @ 2;");
    assert_eq!(e.pos, 28);
    assert_eq!(RunError::Parse(e).exit_code(), 2);
}

#[test]
fn rings_switch_back() {
    let src = "ring A = k[x] local; ring B = k[y] local; ring A; show x^2;";
    let out = run(src);
    assert_eq!(json_lines(&out)[0]["payload"]["value"], "x^2");
    let e = parse_err("ring A = k[x] local; ring B = k[y] local; show x;");
    assert!(e.msg.contains("not bound"));
}

#[test]
fn parsed_statements() {
    let s = parse_script("ring A = k[x] local; check f(x, 2) <= -x^2;", FieldSpec::rationals());
    // `f` is a call, so it needs no binding.
    let s = s.unwrap();
    assert_eq!(s.statements.len(), 2);
    assert_eq!(s.statements[1].offset, 21);
    match &s.statements[1].stmt {
        Stmt::Check { lhs: Expr::Call(name, args, _), cmp: Some((_, Expr::Neg(..))) } => {
            assert_eq!(name, "f");
            assert_eq!(args.len(), 2);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn failed_checks_continue_unless_fail_fast() {
    let src = "check 1 == 2; check 2 == 2; check 3 > 4;";
    let out = run(src);
    assert_eq!(out.records.len(), 3);
    assert_eq!(out.failed_checks, 2);
    assert_eq!(out.exit_code(), 1);
    let ff = Flags { fail_fast: true, ..Flags::default() };
    let out = run_source(src, &ff).unwrap();
    assert_eq!(out.records.len(), 1);
    assert_eq!(out.exit_code(), 1);
}

#[test]
fn semantic_errors_abort() {
    let src = "ring A = k[x] local / (x^3); show link(free(1)); show x;";
    let out = run(src);
    assert!(out.records.is_empty());
    let (stmt, e) = out.error.clone().unwrap();
    assert_eq!(stmt, "show link(free(1))");
    assert!(e.to_string().contains("free direct summand"), "{e}");
    assert_eq!(out.exit_code(), 3);
    let out = run("ring A = k[x] local; show link(quotient(ideal(x)), ideal(x^2, 1 + x));");
    assert_eq!(out.exit_code(), 3);
    let out = run("ring A = k[x] local; check x;");
    assert_eq!(out.exit_code(), 3);
    let out = run("show residue();");
    assert_eq!(out.exit_code(), 3);
    let out = run("ring A = k[x] local; show betti(x);");
    assert_eq!(out.exit_code(), 3);
    let out = run("ring A = k[x] local; show cx(residue(), 5);");
    assert_eq!(out.exit_code(), 3);
}

#[test]
fn identical_runs_give_identical_bytes() {
    let src = "ring A = k[x,y] local / (x^2, y^2); show resolve(residue(), 4); show fingerprint(omega(residue(), 2));
               show cx(residue());";
    for json in [false, true] {
        let a = emit(&run(src).records, json);
        let b = emit(&run(src).records, json);
        assert_eq!(a, b);
    }
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_liaison"))
}

fn script_file(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("liaison-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn binary_exit_codes() {
    let ok = script_file("ok.txt", "ring A = k[x] local / (x^3); check length(residue()) == 1;");
    let status = binary().arg("run").arg(&ok).status().unwrap();
    assert_eq!(status.code(), Some(0));
    let bad = script_file("bad.txt", "check 1 == 2;");
    assert_eq!(binary().arg("run").arg(&bad).status().unwrap().code(), Some(1));
    let syn = script_file("syn.txt", "show (;");
    assert_eq!(binary().arg("run").arg(&syn).status().unwrap().code(), Some(2));
    let sem = script_file("sem.txt", "show residue();");
    assert_eq!(binary().arg("run").arg(&sem).status().unwrap().code(), Some(3));
    assert_eq!(binary().args(["--char", "4", "run"]).arg(&ok).status().unwrap().code(), Some(2));
    assert_eq!(binary().arg("frobnicate").status().unwrap().code(), Some(2));
    let out = binary().args(["--json", "run"]).arg(&ok).output().unwrap();
    let line = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(v["check"]["pass"], true);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn exit_code_tracks_checks(pairs in proptest::collection::vec((0i64..5, 0i64..5), 0..8)) {
        let src: String = pairs.iter().map(|(a, b)| format!("check {a} <= {b};\n")).collect();
        let out = run(&src);
        let all = pairs.iter().all(|(a, b)| a <= b);
        prop_assert_eq!(out.exit_code() == 0, all);
        prop_assert_eq!(out.records.len(), pairs.len());
    }

    #[test]
    fn polynomial_text_is_stable(coeffs in proptest::collection::vec(-20i64..20, 1..6)) {
        // A polynomial printed by `show` parses back to the same value.
        let terms: Vec<String> = coeffs.iter().enumerate().map(|(i, c)| format!("({c})*x^{i}*y")).collect();
        let src = format!("ring A = k[x,y] local / (x^4); show {};", terms.join(" + "));
        let out = run(&src);
        let shown = json_lines(&out)[0]["payload"]["value"].as_str().unwrap().to_string();
        let back = format!("ring A = k[x,y] local / (x^4); poly f = {}; check f == {};", terms.join(" + "), if shown.is_empty() { "0".into() } else { shown.clone() });
        let out2 = run(&back);
        prop_assert_eq!(out2.exit_code(), 0, "{}", shown);
        prop_assert_eq!(emit(&run(&src).records, true), emit(&out.records, true));
    }
}
