//! Operator calculus in Dx: linearization, adjoint, composition,
//! presymplectic operators and Green's formula.
//!
//!     cargo run --example operators

use jetvar::calculus::EvolutionSystem;
use jetvar::jetcore::parse_expr;
use jetvar::operators::{CDiffOp, OpAlgebra};

fn main() -> jetvar::Result<()> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let alg = OpAlgebra::for_system(&sys)?;
    let p = |s: &str| parse_expr(s, ctx);

    let l_phi = alg.linearize(sys.rhs())?;
    println!("l_Phi          = {}", l_phi.to_text(ctx));
    println!("(l_Phi)*       = {}", alg.adjoint(&l_phi)?.to_text(ctx));

    let a = CDiffOp::parse("Dx", ctx)?;
    let b = CDiffOp::mult(p("u_x")?);
    println!("Dx o u_x       = {}", alg.compose(&a, &b)?.to_text(ctx));

    for s in ["1", "u_xx", "u_x"] {
        println!(
            "l_E*({s:<4})     = {}",
            alg.adjoint_linearization_apply(&sys, &p(s)?)?.to_text(ctx)
        );
    }

    let phi = p("-3*t*(4*u_x^3 + u_xxx) - x*u_x")?;
    let psi = alg.dx(&phi)?;
    println!("psi = Dx(phi)  = {}", psi.to_text(ctx));
    println!(
        "l_E*(psi)      = {}",
        alg.adjoint_linearization_apply(&sys, &psi)?.to_text(ctx)
    );
    println!("presymp(psi)   = {}", alg.presymp(&psi)?.to_text(ctx));
    println!("presymp(u_x)   = {}", alg.presymp(&p("u_x")?)?.to_text(ctx));

    let op = CDiffOp::parse("Dx^2", ctx)?;
    let b = alg.concomitant(&op, &p("u_x")?, &p("u^2")?)?;
    println!("Green witness  = {}", b.to_text(ctx));
    Ok(())
}
