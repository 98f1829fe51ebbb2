//! Enumerate cosymmetries of potential mKdV in polynomial ansätze and check
//! that the scaling cosymmetry is among them.
//!
//!     cargo run --release --example cosymmetries -- [max-order]

use jetvar::calculus::EvolutionSystem;
use jetvar::jetcore::parse_expr;
use jetvar::solver::{solve_cosymmetries, AnsatzSpec};

fn main() -> jetvar::Result<()> {
    let k = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let sys = EvolutionSystem::pmkdv();
    let ctx = sys.ctx();
    let spec = AnsatzSpec::new(k, 3).t_degree(1).x_degree(1);
    let basis = solve_cosymmetries(&sys, &spec)?;
    println!("cosymmetries of order <= {k}, jet degree <= 3, t and x degree <= 1:");
    for psi in &basis.basis {
        println!("  {}", psi.to_text(ctx));
    }
    let s = &basis.stats;
    println!(
        "unknowns {}, equations {}, rank {}, components {}",
        s.unknowns, s.equations, s.rank, s.components
    );
    if k >= 4 {
        let scaling = parse_expr("-3*t*(12*u_x^2*u_xx + u_xxxx) - u_x - x*u_xx", ctx)?;
        println!(
            "contains the scaling cosymmetry: {}",
            basis.contains(&scaling)
        );
    }
    Ok(())
}
