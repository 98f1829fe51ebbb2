//! The density of the mKdV Lagrangian on the equation, a bounded search for
//! a divergence representation, and a conservation law of the
//! three-variable system.
//!
//!     cargo run --release --example conservation_laws

use jetvar::calculus::{EvolutionSystem, WeightSpec};
use jetvar::jetcore::parse_expr;
use jetvar::solver::{solve_divergence_repr, AnsatzSpec};

fn main() -> jetvar::Result<()> {
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let x = sys.spatial_x()?;
    let p = |s: &str| parse_expr(s, ctx);

    let density = sys.reduce_onshell(&p("u_t*u_x/2 - u_x^4 + u_xx^2/2")?)?;
    let reduced = &density - &sys.dbar(&p("u_x*u_xx/2")?, x)?;
    println!("lambda|                  = {}", density.to_text(ctx));
    println!("lambda| - Dx(u_x*u_xx/2) = {}", reduced.to_text(ctx));

    // a density that is trivially a divergence
    let spec = AnsatzSpec::new(2, 1);
    let r = solve_divergence_repr(&sys, &p("4*u_x^3")?, &spec, &spec)?;
    if let Some(r) = r.found {
        println!(
            "4*u_x^3 = Dt({}) - Dx({})",
            r.g2.to_text(ctx),
            r.g1.to_text(ctx)
        );
    }

    let w = WeightSpec::pmkdv(ctx);
    let base = AnsatzSpec::new(4, 4).t_degree(1).x_degree(1);
    let search = solve_divergence_repr(
        &sys,
        &density,
        &base.clone().graded(w.clone(), 3),
        &base.graded(w, 1),
    )?;
    println!(
        "lambda| = Dt(g2) - Dx(g1) within weight-graded ansatze: {} ({} unknowns, rank {})",
        if search.found.is_some() {
            "found"
        } else {
            "none"
        },
        search.stats.unknowns,
        search.stats.rank
    );

    let sys3 = EvolutionSystem::pmkdv_3d();
    let c3 = sys3.ctx();
    let part = |s: &str| -> jetvar::Result<_> { sys3.reduce_onshell(&parse_expr(s, c3)?) };
    let div = sys3.dbar_t(&part("-u_x*u_y/2")?)?
        + sys3.dbar(&part("u_t*u_y/2 + u_yy^2/2 - u_xx*u_xy")?, 1)?
        + sys3.dbar(&part("u_t*u_x/2 - u_x^4 + u_xx^2/2 - u_xy*u_yy")?, 2)?;
    println!(
        "u_t = {}: divergence of xi = {}",
        sys3.rhs().to_text(c3),
        div.to_text(c3)
    );
    Ok(())
}
