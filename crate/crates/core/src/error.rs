use thiserror::Error;

/// Errors raised by the kernel, the solver and the front ends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("jet order {order} exceeds the configured cap {cap}")]
    OrderCap { order: u32, cap: u32 },

    #[error("invalid exponent at position {pos}: {msg}")]
    BadExponent { pos: usize, msg: String },

    #[error("negative exponent {0}")]
    NegativeExponent(i64),

    #[error("expression is not on-shell: contains `{0}`")]
    NotOnShell(String),

    #[error("invalid context: {0}")]
    Context(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("identity check failed: {0}")]
    Verification(String),
}

pub type Result<T, E = JetError> = std::result::Result<T, E>;
