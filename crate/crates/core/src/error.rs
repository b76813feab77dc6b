use thiserror::Error;

/// Errors produced while normalizing constraints, solving, or running the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A constraint pattern has length zero. The empty string occurs in every
    /// string, so no subsequence (not even the empty one) could exclude it.
    #[error("EmptyConstraint: constraint pattern #{index} is empty")]
    EmptyConstraint { index: usize },

    /// The brute-force oracle refuses inputs whose enumerated side is too long.
    #[error("InstanceTooLarge: oracle enumerates 2^{len} subsequences, cap is 2^{cap}")]
    InstanceTooLarge { len: usize, cap: usize },

    /// An input sequence is too long for 32-bit DP values.
    #[error("InputTooLarge: sequence of length {len} exceeds the maximum of {max}")]
    InputTooLarge { len: usize, max: usize },

    /// The full DP cube would not fit in addressable memory.
    #[error("TableTooLarge: {n}x{m}x{s} table cannot be allocated")]
    TableTooLarge { n: usize, m: usize, s: usize },

    /// A generator or benchmark parameter is out of range.
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),

    /// Backtrace found no predecessor explaining a table entry.
    #[error("InconsistentTable: no predecessor explains f({i}, {j}, {k})")]
    InconsistentTable { i: usize, j: usize, k: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
