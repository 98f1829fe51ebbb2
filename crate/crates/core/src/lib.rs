//! Exact formal variational calculus on jet spaces of scalar evolution
//! equations.
//!
//! The crate is organised bottom-up:
//!
//! - [`jetcore`]: jet coordinates and sparse differential polynomials with
//!   exact rational coefficients, plus a parser and canonical printer.
//! - [`calculus`]: total derivatives, on-shell reduction for evolution
//!   systems, Euler operators, exactness in one spatial variable, orders and
//!   scaling weights.
//! - [`operators`]: total differential operators in `Dx`: composition,
//!   formal adjoints, linearizations, presymplectic operators and the
//!   Green-formula concomitant.
//! - [`solver`]: bounded polynomial ansätze solved by exact elimination
//!   (cosymmetries, presymplectic potentials, divergence representations).
//! - [`paperlab`]: the catalogue of scripted identity checks and its JSON
//!   report.
//! - [`cli`]: the `jetvar` command-line front end.

pub mod calculus;
pub mod cli;
pub mod error;
pub mod jetcore;
pub mod operators;
pub mod paperlab;
pub mod solver;

pub use error::{JetError, Result};
pub use jetcore::{DiffPoly, JetContext, MultiIndex, Var, VarId, Q};
