//! Total derivatives on and off the equation, Euler operators, orders and
//! weights for potential mKdV.
//!
//!     cargo run --example total_derivatives

use jetvar::calculus::{euler, order_of, total_derivative, EvolutionSystem};
use jetvar::jetcore::parse_expr;

fn main() -> jetvar::Result<()> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let (t, x) = (sys.time(), sys.spatial_x()?);
    let p = |s: &str| parse_expr(s, ctx);

    println!("system: u_t = {}", sys.rhs().to_text(ctx));
    println!(
        "D_x(u_x^2)         = {}",
        total_derivative(&p("u_x^2")?, x, ctx)?.to_text(ctx)
    );
    println!(
        "reduce(u_tx)       = {}",
        sys.reduce_onshell(&p("u_tx")?)?.to_text(ctx)
    );
    println!(
        "Dbar_t(u_x)        = {}",
        sys.dbar_t(&p("u_x")?)?.to_text(ctx)
    );
    println!(
        "Dbar_t(u)          = {}",
        sys.dbar(&p("u")?, t)?.to_text(ctx)
    );

    let lambda = p("u_t*u_x/2 - u_x^4 + u_xx^2/2")?;
    println!("euler(lambda)      = {}", euler(&lambda, ctx)?.to_text(ctx));
    let restricted = sys.reduce_onshell(&lambda)?;
    println!("lambda on-shell    = {}", restricted.to_text(ctx));

    let w = sys.weights().expect("pmkdv is graded");
    for s in ["4*u_x^3 + u_xxx", "u_x + u_xx"] {
        let f = p(s)?;
        let weight = w
            .weight_of(&f)
            .map_or("none".to_string(), |k| k.to_string());
        println!("{s:<18} order {}, weight {weight}", order_of(&f));
    }
    println!("weight of lambda|  = {:?}", w.weight_of(&restricted));
    Ok(())
}
