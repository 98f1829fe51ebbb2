//! Jet coordinates, differential polynomials, and their text form.

mod context;
mod poly;
mod text;

pub use context::{JetContext, MultiIndex, Var, VarId, DEFAULT_MAX_ORDER, MAX_INDEP};
pub use poly::{q, q_frac, DiffPoly, Monomial, Q};
pub use text::{format_expr, parse_expr};

pub(crate) use text::{parse_with_dx, DX_MARKER};
