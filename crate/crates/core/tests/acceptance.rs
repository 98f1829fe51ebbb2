//! Acceptance gate: every criterion runs exactly, within its time budget,
//! and prints one PASS/FAIL line. Exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use jetvar::calculus::{euler, total_derivative, EvolutionSystem};
use jetvar::jetcore::{parse_expr, JetContext};
use jetvar::operators::{CDiffOp, OpAlgebra};
use jetvar::paperlab::{Lab, Report};
use jetvar::Result;

type Verdict = Result<std::result::Result<String, String>>;

fn ok(detail: impl Into<String>) -> Verdict {
    Ok(Ok(detail.into()))
}

fn bad(detail: impl Into<String>) -> Verdict {
    Ok(Err(detail.into()))
}

fn checks(ids: &[&str]) -> Verdict {
    let ids: Vec<String> = ids.iter().map(|s| s.to_string()).collect();
    let report = Lab::new().run_suite("paper", Some(&ids))?;
    verdict_of(&report)
}

fn verdict_of(report: &Report) -> Verdict {
    let failed: Vec<String> = report
        .results
        .iter()
        .filter(|r| !r.passed())
        .map(|r| {
            format!(
                "{}: {} [{}]",
                r.check_id,
                r.details,
                r.counterexample.clone().unwrap_or_default()
            )
        })
        .collect();
    if failed.is_empty() {
        let ids: Vec<&str> = report.results.iter().map(|r| r.check_id.as_str()).collect();
        ok(ids.join(", "))
    } else {
        bad(failed.join(" | "))
    }
}

fn c1_euler() -> Verdict {
    let ctx = JetContext::tx();
    let lambda = parse_expr("u_t*u_x/2 - u_x^4 + u_xx^2/2", &ctx)?;
    let eq = parse_expr("u_t - 4*u_x^3 - u_xxx", &ctx)?;
    let sum = euler(&lambda, &ctx)? + total_derivative(&eq, 1, &ctx)?;
    if sum.is_zero() {
        ok("euler(lambda) + Dx(F) = 0")
    } else {
        bad(sum.to_text(&ctx))
    }
}

fn scaling_psi(sys: &EvolutionSystem, alg: &OpAlgebra) -> Result<jetvar::DiffPoly> {
    alg.dx(&parse_expr("-3*t*(4*u_x^3 + u_xxx) - x*u_x", sys.ctx())?)
}

fn c2_cosymmetries() -> Verdict {
    let sys = EvolutionSystem::pmkdv();
    let alg = OpAlgebra::for_system(&sys)?;
    let a = alg.adjoint_linearization_apply(&sys, &parse_expr("u_xx", sys.ctx())?)?;
    let b = alg.adjoint_linearization_apply(&sys, &scaling_psi(&sys, &alg)?)?;
    if a.is_zero() && b.is_zero() {
        ok("l_E*(u_xx) = 0, l_E*(Dx(phi)) = 0")
    } else {
        bad(format!(
            "{} ; {}",
            a.to_text(sys.ctx()),
            b.to_text(sys.ctx())
        ))
    }
}

fn c3_presymp() -> Verdict {
    let sys = EvolutionSystem::pmkdv();
    let alg = OpAlgebra::for_system(&sys)?;
    let a = alg.presymp(&scaling_psi(&sys, &alg)?)?;
    let b = alg.presymp(&parse_expr("u_x", sys.ctx())?)?;
    if a.is_zero() && b == CDiffOp::term(jetvar::DiffPoly::int(2), 1) {
        ok("presymp(Dx(phi)) = 0, presymp(u_x) = 2Dx")
    } else {
        bad(format!(
            "{} ; {}",
            a.to_text(sys.ctx()),
            b.to_text(sys.ctx())
        ))
    }
}

fn c9_properties() -> Verdict {
    let lab = Lab::new();
    let mut ids = Vec::new();
    for id in ["prop1", "prop2", "commutator-dt"] {
        let r = lab.run_check(id)?;
        if !r.passed() {
            return bad(format!(
                "{id}: {} [{}]",
                r.details,
                r.counterexample.unwrap_or_default()
            ));
        }
        ids.push(id.to_string());
    }
    let report = lab.run_suite("properties", None)?;
    match verdict_of(&report)? {
        Ok(rest) => ok(format!(
            "{}, {rest} ({} cases each)",
            ids.join(", "),
            lab.cases
        )),
        Err(e) => bad(e),
    }
}

fn strip_timing(text: &str) -> std::result::Result<serde_json::Value, String> {
    let mut v: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    for r in v["results"].as_array_mut().ok_or("no results array")? {
        r.as_object_mut()
            .ok_or("result is not an object")?
            .remove("elapsed_ms");
    }
    Ok(v)
}

fn c10_determinism() -> Verdict {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_jetvar"))
            .args(["verify", "--suite", "paper", "--json"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    if !a.status.success() || !b.status.success() {
        return bad(format!(
            "exit codes {:?} {:?}",
            a.status.code(),
            b.status.code()
        ));
    }
    let (a, b) = (
        String::from_utf8_lossy(&a.stdout),
        String::from_utf8_lossy(&b.stdout),
    );
    match (strip_timing(&a), strip_timing(&b)) {
        (Ok(x), Ok(y)) if x == y => {
            let (x, y) = (
                serde_json::to_string(&x).unwrap(),
                serde_json::to_string(&y).unwrap(),
            );
            if x == y {
                ok(format!("{} bytes identical modulo elapsed_ms", x.len()))
            } else {
                bad("serializations differ")
            }
        }
        (Ok(_), Ok(_)) => bad("reports differ"),
        (Err(e), _) | (_, Err(e)) => bad(format!("unparseable report: {e}")),
    }
}

type Criterion = (&'static str, Duration, Box<dyn Fn() -> Verdict>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            "1 variational-derivative identity",
            Duration::from_secs(1),
            Box::new(c1_euler),
        ),
        (
            "2 cosymmetry certificates",
            Duration::from_secs(1),
            Box::new(c2_cosymmetries),
        ),
        (
            "3 presymplectic identities",
            Duration::from_secs(1),
            Box::new(c3_presymp),
        ),
        (
            "4 order <= 6 nonexistence",
            Duration::from_secs(300),
            Box::new(|| checks(&["order6-nonexistence"])),
        ),
        (
            "5 lemma-chain spot checks",
            Duration::from_secs(10),
            Box::new(|| {
                checks(&[
                    "eq-firstterm",
                    "lemma2-relation",
                    "lemma3-cancellation",
                    "lemma4-exactness",
                ])
            }),
        ),
        (
            "6 example suite",
            Duration::from_secs(5),
            Box::new(|| {
                checks(&[
                    "example-decomposition",
                    "trivial-characteristic",
                    "remark-density",
                ])
            }),
        ),
        (
            "7 bounded nontriviality",
            Duration::from_secs(30),
            Box::new(|| checks(&["nontrivial-cl-bounded"])),
        ),
        (
            "8 three-variable conservation law",
            Duration::from_secs(10),
            Box::new(|| checks(&["xi-onshell-closed"])),
        ),
        (
            "9 property suites",
            Duration::from_secs(60),
            Box::new(c9_properties),
        ),
        (
            "10 determinism",
            Duration::from_secs(600),
            Box::new(c10_determinism),
        ),
    ];

    let mut failures = 0;
    for (name, budget, run) in &criteria {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let (pass, detail) = match verdict {
            Ok(Ok(d)) if elapsed <= *budget => (true, d),
            Ok(Ok(d)) => (false, format!("{d}; over budget {budget:?}")),
            Ok(Err(d)) => (false, d),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "{} criterion {name:<36} {:>9.3}s / {:>4}s  {detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
