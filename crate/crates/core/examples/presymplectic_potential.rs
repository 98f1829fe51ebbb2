//! Search for a cosymmetry psi with l_psi - l_psi* = Dx. None exists among
//! polynomial cosymmetries of order <= 6; the search takes a few seconds in
//! release mode.
//!
//!     cargo run --release --example presymplectic_potential -- [max-order]

use std::time::Instant;

use jetvar::calculus::EvolutionSystem;
use jetvar::operators::CDiffOp;
use jetvar::solver::{solve_presymp_potential, AnsatzSpec};

fn main() -> jetvar::Result<()> {
    let k = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();

    // u_x has the right operator but is not a cosymmetry
    let small = solve_presymp_potential(
        &sys,
        &CDiffOp::dx_pow(1).add(&CDiffOp::dx_pow(1)),
        &AnsatzSpec::new(1, 1),
    )?;
    println!(
        "target 2Dx, order <= 1: {}",
        if small.is_empty() { "none" } else { "found" }
    );

    let spec = AnsatzSpec::new(k, 5).t_degree(2).x_degree(2);
    let start = Instant::now();
    let sol = solve_presymp_potential(&sys, &CDiffOp::dx_pow(1), &spec)?;
    let s = &sol.kernel.stats;
    println!(
        "target Dx, order <= {k}: {} ({} unknowns, {} equations, rank {}, {} components, {:.1?})",
        sol.particular
            .as_ref()
            .map_or("none".to_string(), |p| p.to_text(ctx)),
        s.unknowns,
        s.equations,
        s.rank,
        s.components,
        start.elapsed()
    );
    println!("cosymmetries with zero presymplectic operator:");
    for psi in &sol.kernel.basis {
        println!("  {}", psi.to_text(ctx));
    }
    Ok(())
}
