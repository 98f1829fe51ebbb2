//! Command-line front end.
//!
//! [`run`] takes the argument vector (without the program name) and returns
//! the exit code together with what would be written to stdout and stderr,
//! so the binary is a thin wrapper and the commands are testable in
//! process. Exit codes: 0 success, 1 a verification failed, 2 usage, parse
//! or order-cap errors.

use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::calculus::{euler, euler_x, order_of, EvolutionSystem, WeightSpec};
use crate::error::{JetError, Result};
use crate::jetcore::parse_expr;
use crate::operators::{CDiffOp, OpAlgebra};
use crate::paperlab::Lab;
use crate::solver::{
    solve_cosymmetries, solve_divergence_repr, solve_presymp_potential, AnsatzSpec,
};

/// Environment variable overriding the jet-order cap.
pub const MAX_ORDER_ENV: &str = "JETVAR_MAX_ORDER";

#[derive(Parser, Debug)]
#[command(
    name = "jetvar",
    version,
    about = "Exact variational calculus for scalar evolution equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply a derivation or invariant to an expression.
    Eval {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long, value_enum)]
        op: EvalOp,
        #[arg(long)]
        expr: String,
    },
    /// Linearization of an on-shell expression, as an operator in Dx.
    Linearize {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        expr: String,
    },
    /// Formal adjoint of an operator.
    Adjoint {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        op: String,
    },
    /// Presymplectic operator l_psi - l_psi* of a cosymmetry.
    Presymp {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        cosym: String,
    },
    /// Green-formula concomitant B with Dx(B) = psi*op(phi) - op*(psi)*phi.
    Concomitant {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        op: String,
        #[arg(long)]
        psi: String,
        #[arg(long)]
        phi: String,
    },
    /// Basis of the cosymmetries inside a polynomial ansatz.
    Cosym {
        #[command(flatten)]
        sys: SystemArg,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long)]
        weight: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Cosymmetries whose presymplectic operator equals a target.
    Potential {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long)]
        weight: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Search density = Dt(g2) - Dx(g1) inside polynomial ansatze.
    Divrep {
        #[command(flatten)]
        sys: SystemArg,
        #[arg(long)]
        density: String,
        #[command(flatten)]
        bounds: Bounds,
        /// Restrict g1 to one weight.
        #[arg(long)]
        g1_weight: Option<i64>,
        /// Restrict g2 to one weight.
        #[arg(long)]
        g2_weight: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "paper")]
        suite: String,
        /// Run only these checks (repeatable).
        #[arg(long = "check")]
        checks: Vec<String>,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct SystemArg {
    /// Built-in system name (pmkdv, pmkdv-y, pmkdv-3d) or a system file.
    #[arg(long, default_value = "pmkdv")]
    system: String,
}

#[derive(Args, Debug)]
struct Bounds {
    #[arg(long, default_value_t = 3)]
    max_order: u32,
    #[arg(long, default_value_t = 0)]
    t_deg: u32,
    #[arg(long, default_value_t = 0)]
    x_deg: u32,
    /// Maximal total degree in the jet variables.
    #[arg(long, default_value_t = 3)]
    u_deg: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EvalOp {
    Dx,
    Dy,
    Dt,
    Euler,
    Eulerx,
    Order,
    Weight,
    Reduce,
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, msg: String) -> Self {
        Output {
            code,
            stdout: String::new(),
            stderr: msg,
        }
    }
}

/// Run the command line `args` (program name excluded).
pub fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("jetvar".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output::error(2, text)
            } else {
                Output::ok(text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(e) => Output::error(2, format!("error: {e}\n")),
    }
}

fn max_order_override() -> Result<Option<u32>> {
    match std::env::var(MAX_ORDER_ENV) {
        Err(_) => Ok(None),
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            JetError::Context(format!(
                "{MAX_ORDER_ENV} must be a positive integer, got `{v}`"
            ))
        }),
    }
}

fn load_system(arg: &SystemArg) -> Result<EvolutionSystem> {
    let sys = match EvolutionSystem::named(&arg.system) {
        Some(sys) => sys,
        None if Path::new(&arg.system).is_file() => {
            let text = std::fs::read_to_string(&arg.system)
                .map_err(|e| JetError::Context(format!("cannot read `{}`: {e}", arg.system)))?;
            EvolutionSystem::parse_file(&text)?
        }
        None => {
            return Err(JetError::Context(format!(
                "unknown system `{}`",
                arg.system
            )))
        }
    };
    match max_order_override()? {
        Some(cap) => sys.with_max_order(cap),
        None => Ok(sys),
    }
}

fn weights(sys: &EvolutionSystem) -> Result<WeightSpec> {
    sys.weights()
        .cloned()
        .ok_or_else(|| JetError::Context(format!("system `{}` declares no weights", sys.name())))
}

fn ansatz(sys: &EvolutionSystem, b: &Bounds, weight: Option<i64>) -> Result<AnsatzSpec> {
    let spec = AnsatzSpec::new(b.max_order, b.u_deg)
        .t_degree(b.t_deg)
        .x_degree(b.x_deg);
    Ok(match weight {
        Some(w) => spec.graded(weights(sys)?, w),
        None => spec,
    })
}

fn lines<T: AsRef<str>>(items: &[T]) -> String {
    items.iter().map(|s| format!("{}\n", s.as_ref())).collect()
}

fn dispatch(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Eval { sys, op, expr } => {
            let sys = load_system(&sys)?;
            let ctx = sys.ctx();
            let f = parse_expr(&expr, ctx)?;
            let text = match op {
                EvalOp::Dx | EvalOp::Dy | EvalOp::Dt => {
                    let name = match op {
                        EvalOp::Dx => "x",
                        EvalOp::Dy => "y",
                        _ => ctx.indep_name(sys.time()),
                    };
                    let v = ctx.require_var(name)?;
                    sys.dbar(&sys.reduce_onshell(&f)?, v)?.to_text(ctx)
                }
                EvalOp::Euler => euler(&f, ctx)?.to_text(ctx),
                EvalOp::Eulerx => {
                    euler_x(&sys.reduce_onshell(&f)?, sys.spatial_x()?, ctx)?.to_text(ctx)
                }
                EvalOp::Order => order_of(&sys.reduce_onshell(&f)?).to_string(),
                EvalOp::Weight => match weights(&sys)?.weight_of(&f) {
                    Some(w) => w.to_string(),
                    None => "none".into(),
                },
                EvalOp::Reduce => sys.reduce_onshell(&f)?.to_text(ctx),
            };
            Ok(Output::ok(text + "\n"))
        }
        Command::Linearize { sys, expr } => {
            let sys = load_system(&sys)?;
            let alg = OpAlgebra::for_system(&sys)?;
            let f = parse_expr(&expr, sys.ctx())?;
            sys.check_onshell(&f)?;
            Ok(Output::ok(alg.linearize(&f)?.to_text(sys.ctx()) + "\n"))
        }
        Command::Adjoint { sys, op } => {
            let sys = load_system(&sys)?;
            let alg = OpAlgebra::for_system(&sys)?;
            let op = CDiffOp::parse(&op, sys.ctx())?;
            Ok(Output::ok(alg.adjoint(&op)?.to_text(sys.ctx()) + "\n"))
        }
        Command::Presymp { sys, cosym } => {
            let sys = load_system(&sys)?;
            let alg = OpAlgebra::for_system(&sys)?;
            let psi = parse_expr(&cosym, sys.ctx())?;
            sys.check_onshell(&psi)?;
            Ok(Output::ok(alg.presymp(&psi)?.to_text(sys.ctx()) + "\n"))
        }
        Command::Concomitant { sys, op, psi, phi } => {
            let sys = load_system(&sys)?;
            let ctx = sys.ctx();
            let alg = OpAlgebra::for_system(&sys)?;
            let op = CDiffOp::parse(&op, ctx)?;
            let (psi, phi) = (parse_expr(&psi, ctx)?, parse_expr(&phi, ctx)?);
            Ok(Output::ok(
                alg.concomitant(&op, &psi, &phi)?.to_text(ctx) + "\n",
            ))
        }
        Command::Cosym {
            sys,
            bounds,
            weight,
            json,
        } => {
            let sys = load_system(&sys)?;
            let basis = solve_cosymmetries(&sys, &ansatz(&sys, &bounds, weight)?)?;
            if json {
                return Ok(Output::ok(pretty(&basis.to_json(sys.ctx()))));
            }
            let mut text = lines(
                &basis
                    .basis
                    .iter()
                    .map(|b| b.to_text(sys.ctx()))
                    .collect::<Vec<_>>(),
            );
            text.push_str(&stats_line(&basis.stats));
            Ok(Output::ok(text))
        }
        Command::Potential {
            sys,
            target,
            bounds,
            weight,
            json,
        } => {
            let sys = load_system(&sys)?;
            let target = CDiffOp::parse(&target, sys.ctx())?;
            let sol = solve_presymp_potential(&sys, &target, &ansatz(&sys, &bounds, weight)?)?;
            if json {
                return Ok(Output::ok(pretty(&sol.to_json(sys.ctx()))));
            }
            let mut text = match &sol.particular {
                None => "no solution\n".to_string(),
                Some(p) => {
                    let mut t = format!("{}\n", p.to_text(sys.ctx()));
                    for k in &sol.kernel.basis {
                        t.push_str(&format!("+ c*({})\n", k.to_text(sys.ctx())));
                    }
                    t
                }
            };
            text.push_str(&stats_line(&sol.kernel.stats));
            Ok(Output::ok(text))
        }
        Command::Divrep {
            sys,
            density,
            bounds,
            g1_weight,
            g2_weight,
            json,
        } => {
            let sys = load_system(&sys)?;
            let ctx = sys.ctx();
            let density = sys.reduce_onshell(&parse_expr(&density, ctx)?)?;
            let s1 = ansatz(&sys, &bounds, g1_weight)?;
            let s2 = ansatz(&sys, &bounds, g2_weight)?;
            let search = solve_divergence_repr(&sys, &density, &s1, &s2)?;
            if json {
                return Ok(Output::ok(pretty(&search.to_json(ctx))));
            }
            let mut text = match &search.found {
                None => "none\n".to_string(),
                Some(r) => format!("g1 = {}\ng2 = {}\n", r.g1.to_text(ctx), r.g2.to_text(ctx)),
            };
            text.push_str(&stats_line(&search.stats));
            Ok(Output::ok(text))
        }
        Command::Verify {
            suite,
            checks,
            out,
            json,
        } => {
            let filter = (!checks.is_empty()).then_some(checks.as_slice());
            let report = Lab::new().run_suite(&suite, filter)?;
            if let Some(path) = out {
                std::fs::write(&path, report.to_json() + "\n")
                    .map_err(|e| JetError::Context(format!("cannot write `{path}`: {e}")))?;
            }
            let text = if json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            };
            Ok(Output {
                code: if report.all_passed() { 0 } else { 1 },
                stdout: text,
                stderr: String::new(),
            })
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes") + "\n"
}

fn stats_line(s: &crate::solver::SolveStats) -> String {
    format!(
        "# unknowns {}, equations {}, rank {}, components {}{}\n",
        s.unknowns,
        s.equations,
        s.rank,
        s.components,
        if s.consistent { "" } else { ", inconsistent" }
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_dt() {
        let out = run(["eval", "--system", "pmkdv", "--op", "dt", "--expr", "u_x"]);
        assert_eq!(out, Output::ok("12*u_x^2*u_xx + u_xxxx\n".into()));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["eval", "--op", "bogus", "--expr", "u"]).code, 2);
        assert_eq!(run(["eval", "--op", "dx", "--expr", "u_x +"]).code, 2);
        assert_eq!(run(["eval", "--op", "dy", "--expr", "u_x"]).code, 2);
        assert_eq!(
            run(["eval", "--system", "nope", "--op", "dx", "--expr", "u"]).code,
            2
        );
        assert_eq!(run(["frobnicate"]).code, 2);
    }

    #[test]
    fn operator_commands() {
        assert_eq!(
            run(["adjoint", "--op", "u_x*Dx"]).stdout,
            "-u_xx - u_x*Dx\n"
        );
        assert_eq!(run(["presymp", "--cosym", "u_x"]).stdout, "2*Dx\n");
        assert_eq!(
            run(["linearize", "--expr", "4*u_x^3 + u_xxx"]).stdout,
            "12*u_x^2*Dx + Dx^3\n"
        );
        assert_eq!(run(["linearize", "--expr", "u_t"]).code, 2);
        assert_eq!(
            run(["concomitant", "--op", "Dx", "--psi", "u", "--phi", "u_x"]).stdout,
            "u*u_x\n"
        );
    }

    #[test]
    fn cosym_lists_u_xx() {
        let out = run([
            "cosym",
            "--system",
            "pmkdv",
            "--max-order",
            "2",
            "--u-deg",
            "3",
        ]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.lines().any(|l| l == "u_xx"), "{}", out.stdout);
    }
}
