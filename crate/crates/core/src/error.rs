use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one CLI exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("input error: {0}")]
    Input(String),
    /// An exhaustive routine was asked to enumerate beyond its configured bound.
    #[error("capacity error: {what} needs {size} elements but the bound is {bound}")]
    Capacity {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    /// Profit classes are undefined when the approximation value is zero.
    #[error("degenerate alpha: every profit is zero")]
    DegenerateAlpha,
    /// A post-condition that should be unreachable failed.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::DegenerateAlpha => 2,
            Error::Capacity { .. } => 3,
            Error::Invariant(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
