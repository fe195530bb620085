use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one failure class of
/// the command-line exit-code contract.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A step map produced an element outside the ground set, or collided
    /// with an element already claimed by another cycle.
    #[error("closure violation: {0}")]
    Closure(String),

    #[error("orbit of length {length} does not divide the declared group order {order}")]
    Order { length: usize, order: usize },

    #[error("ground set of {size}+ elements exceeds the budget of {budget}")]
    Budget { size: usize, budget: usize },

    /// Exact arithmetic produced a remainder where none is mathematically
    /// possible. Always an implementation bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
