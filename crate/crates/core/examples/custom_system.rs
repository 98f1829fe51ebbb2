//! Load an evolution system from a file and find its low-order
//! cosymmetries.
//!
//!     cargo run --example custom_system -- crates/core/systems/pkdv.sys

use jetvar::calculus::EvolutionSystem;
use jetvar::solver::{solve_cosymmetries, AnsatzSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/systems/pkdv.sys").to_string());
    let sys = EvolutionSystem::parse_file(&std::fs::read_to_string(&path)?)?;
    let ctx = sys.ctx();
    println!(
        "{}: {}_{} = {}",
        sys.name(),
        ctx.dep_name(),
        ctx.indep_name(sys.time()),
        sys.rhs().to_text(ctx)
    );
    let basis = solve_cosymmetries(&sys, &AnsatzSpec::new(3, 2))?;
    for psi in &basis.basis {
        println!("  cosymmetry {}", psi.to_text(ctx));
    }
    print!("{}", sys.to_file_string());
    Ok(())
}
