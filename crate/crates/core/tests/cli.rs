//! The `jetvar` binary end to end: output formats, files and exit codes.

use std::io::Write;
use std::process::{Command, Output};

use jetvar::calculus::EvolutionSystem;
use jetvar::jetcore::parse_expr;
use jetvar::paperlab::Report;

fn jetvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetvar"))
        .args(args)
        .env_remove("JETVAR_MAX_ORDER")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn eval_output_parses_back() {
    let out = jetvar(&["eval", "--op", "dt", "--expr", "u_x^3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let sys = EvolutionSystem::pmkdv();
    let got = parse_expr(text.trim(), sys.ctx()).unwrap();
    assert_eq!(
        got,
        parse_expr("36*u_x^4*u_xx + 3*u_x^2*u_xxxx", sys.ctx()).unwrap()
    );
}

#[test]
fn invariants_via_eval() {
    let order = jetvar(&["eval", "--op", "order", "--expr", "u_xxxx + x*u_x"]);
    assert_eq!(stdout(&order).trim(), "4");
    let euler = jetvar(&["eval", "--op", "euler", "--expr", "u_x*u_xx"]);
    assert_eq!(stdout(&euler).trim(), "0");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    for args in [
        &["eval", "--op", "dt"][..],
        &["frobnicate"],
        &["eval", "--op", "dx", "--expr", "u_x^"],
        &["eval", "--op", "dx", "--expr", "v_x"],
        &[
            "eval",
            "--system",
            "/no/such/file.sys",
            "--op",
            "dx",
            "--expr",
            "u",
        ],
        &["verify", "--suite", "nope"],
        &["verify", "--check", "no-such-check"],
    ] {
        let out = jetvar(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn order_cap_from_environment() {
    let capped = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_jetvar"))
            .args(["eval", "--op", "dx", "--expr", "u_xxxx"])
            .env("JETVAR_MAX_ORDER", cap)
            .output()
            .unwrap()
    };
    assert_eq!(capped("4").status.code(), Some(2));
    assert_eq!(capped("5").status.code(), Some(0));
    assert_eq!(capped("many").status.code(), Some(2));
}

#[test]
fn system_files_are_loaded_from_paths() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        f,
        "name: burgers-like\nindep: t, x\ntime: t\nrhs: u_xx + u_x^2\nmax_order: 8"
    )
    .unwrap();
    let path = f.path().to_str().unwrap();
    let out = jetvar(&["eval", "--system", path, "--op", "dt", "--expr", "u"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "u_x^2 + u_xx");

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "name: broken\nindep: t, x\ntime: t\nrhs: u_t").unwrap();
    let out = jetvar(&[
        "eval",
        "--system",
        bad.path().to_str().unwrap(),
        "--op",
        "dt",
        "--expr",
        "u",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_writes_a_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = jetvar(&[
        "verify",
        "--check",
        "prop1",
        "--check",
        "remark-density",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.suite, "paper");
    let ids: Vec<&str> = report.results.iter().map(|r| r.check_id.as_str()).collect();
    assert_eq!(ids, ["prop1", "remark-density"]);
    assert!(report.all_passed());
    assert!(stdout(&out).contains("2 passed, 0 failed"));
}

#[test]
fn verify_json_on_stdout() {
    let out = jetvar(&[
        "verify",
        "--suite",
        "properties",
        "--check",
        "grading",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.summary.pass, 1);
}

#[test]
fn solver_commands() {
    let out = jetvar(&["cosym", "--max-order", "2", "--u-deg", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["basis"][0], "u_xx");

    let out = jetvar(&[
        "potential",
        "--target",
        "2*Dx",
        "--max-order",
        "1",
        "--u-deg",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("no solution"));

    let out = jetvar(&[
        "divrep",
        "--density",
        "4*u_x^3",
        "--max-order",
        "2",
        "--u-deg",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("g1 = "));
}

#[test]
fn linearize_rejects_off_shell_input() {
    assert_eq!(
        jetvar(&["linearize", "--expr", "u_t*u_x"]).status.code(),
        Some(2)
    );
    let out = jetvar(&["linearize", "--expr", "u_x^2"]);
    assert_eq!(stdout(&out).trim(), "2*u_x*Dx");
}
