//! Parse, combine and print differential polynomials.
//!
//!     cargo run --example polynomials

use jetvar::jetcore::{parse_expr, JetContext};

fn main() -> jetvar::Result<()> {
    let ctx = JetContext::tx();

    // jets in suffix form (letters in any order) or bracket form
    let a = parse_expr("u_xt + u[1,1]", &ctx)?;
    println!("u_xt + u[1,1]        = {}", a.to_text(&ctx));

    let f = parse_expr("u_x + u_xx", &ctx)?;
    println!("(u_x + u_xx)^2       = {}", f.pow(2)?.to_text(&ctx));

    // canonical form does not depend on how the input was written
    let g = parse_expr("u_xx*u_x/2 - 1/2*u_x*u_xx + t^2*x", &ctx)?;
    println!("cancellation         = {}", g.to_text(&ctx));

    // printed text parses back to the same polynomial
    let lambda = parse_expr("u_t*u_x/2 - u_x^4 + u_xx^2/2", &ctx)?;
    let text = lambda.to_text(&ctx);
    assert_eq!(parse_expr(&text, &ctx)?, lambda);
    println!("Lagrangian           = {text}");

    for bad in ["u_x +", "u_q", "u^(1/2)", "u^-1"] {
        match parse_expr(bad, &ctx) {
            Ok(p) => println!("{bad:<20} parsed as {}", p.to_text(&ctx)),
            Err(e) => println!("{bad:<20} -> {e}"),
        }
    }
    Ok(())
}
