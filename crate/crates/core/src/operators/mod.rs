//! Total differential operators `Σ a_i D̄_x^i` in one spatial variable.

mod algebra;
mod op;

pub use algebra::{binomial, OpAlgebra};
pub use op::CDiffOp;

/// Deliberate defects that can be switched on to check that the identity
/// catalogue detects them.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Drop the `(−1)^i` sign in the formal adjoint.
    AdjointSignFlip,
}
