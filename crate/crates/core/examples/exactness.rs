//! Decide whether a function is a total x-derivative and recover a
//! preimage.
//!
//!     cargo run --example exactness

use jetvar::calculus::{exactness_x, Exactness};
use jetvar::jetcore::{parse_expr, JetContext};

fn main() -> jetvar::Result<()> {
    let ctx = JetContext::tx();
    let x = ctx.require_var("x")?;
    for s in [
        "u_x*u_xx",
        "u_x^2",
        "x*u_xx + u_x + 2*t",
        "u_x^4 + u_x*u_xxx/2 + u_xx^2/2",
    ] {
        let f = parse_expr(s, &ctx)?;
        match exactness_x(&f, x, &ctx)? {
            Exactness::Exact(g) => println!("{s:<32} = D_x({})", g.to_text(&ctx)),
            Exactness::NotExact(e) => println!("{s:<32} not exact, E_x = {}", e.to_text(&ctx)),
        }
    }
    Ok(())
}
