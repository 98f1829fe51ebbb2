//! Total derivatives, Euler operators, on-shell reduction for evolution
//! systems, exactness testing in one spatial variable, orders and weights.

mod exact;
mod system;
mod weight;

use std::fmt;

pub use exact::{euler_x, exactness_x, Exactness};
pub use system::EvolutionSystem;
pub use weight::WeightSpec;

use crate::error::Result;
use crate::jetcore::{DiffPoly, JetContext, MultiIndex, Var, VarId};

/// Free (off-shell) total derivative `D_v f = ∂_v f + Σ_α u_{α+v} ∂f/∂u_α`.
pub fn total_derivative(f: &DiffPoly, v: VarId, ctx: &JetContext) -> Result<DiffPoly> {
    let mut out = DiffPoly::zero();
    for (m, c) in f.terms() {
        for &(var, e) in m.factors() {
            let (_, rest) = m.divide_var(&var).expect("factor divides its monomial");
            let coeff = c * crate::jetcore::q(e as i64);
            match var {
                Var::Indep(w) if w == v => out.add_term(rest, coeff),
                Var::Indep(_) => {}
                Var::Jet(a) => {
                    let b = a.bump(v);
                    ctx.check_order(&b)?;
                    out.add_term(rest.times_var(Var::Jet(b)), coeff);
                }
            }
        }
    }
    Ok(out)
}

/// `D_α f` for a multi-index α, applying one total derivative per unit of α.
pub fn total_derivative_multi(
    f: &DiffPoly,
    alpha: &MultiIndex,
    ctx: &JetContext,
) -> Result<DiffPoly> {
    let mut g = f.clone();
    for (v, &n) in alpha.counts().iter().enumerate() {
        for _ in 0..n {
            if g.is_zero() {
                return Ok(g);
            }
            g = total_derivative(&g, v, ctx)?;
        }
    }
    Ok(g)
}

/// `D_v^n f`.
pub fn total_derivative_pow(f: &DiffPoly, v: VarId, n: u32, ctx: &JetContext) -> Result<DiffPoly> {
    total_derivative_multi(f, &MultiIndex::along(ctx.n_indep(), v, n), ctx)
}

/// Euler operator over all declared independent variables:
/// `E(f) = Σ_α (−1)^{|α|} D_α(∂f/∂u_α)`.
pub fn euler(f: &DiffPoly, ctx: &JetContext) -> Result<DiffPoly> {
    let mut out = DiffPoly::zero();
    for alpha in f.jets() {
        let partial = f.diff(&Var::Jet(alpha));
        let term = total_derivative_multi(&partial, &alpha, ctx)?;
        if alpha.order() % 2 == 0 {
            out += term;
        } else {
            out -= term;
        }
    }
    Ok(out)
}

/// Order of a function: the largest |α| of a jet it depends on, or −∞.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Order {
    NegInfinity,
    Finite(u32),
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(k) => Some(k),
            Order::NegInfinity => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::NegInfinity => f.write_str("-inf"),
            Order::Finite(k) => write!(f, "{k}"),
        }
    }
}

pub fn order_of(f: &DiffPoly) -> Order {
    f.jets()
        .iter()
        .map(|a| a.order())
        .max()
        .map_or(Order::NegInfinity, Order::Finite)
}
