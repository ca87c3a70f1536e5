use thiserror::Error;

/// Errors raised by the samplers, transforms and numeric oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("size accumulator overflowed (limit {limit})")]
    SizeOverflow { limit: u64 },

    #[error("Boltzmann parameter must lie strictly inside (0, 1), got {0}")]
    InvalidParameter(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cell ({i}, {j}) is not in the index domain")]
    CellOutsideDomain { i: usize, j: usize },

    #[error("invalid index domain: {0}")]
    InvalidDomain(String),

    #[error("not a plane partition: {0}")]
    NotAPlanePartition(String),

    #[error("series truncation index exceeds cap {cap} at x = {x}")]
    TruncationCap { x: f64, cap: u64 },

    #[error("no tuning parameter for target size {n}: {reason}")]
    Untunable { n: u64, reason: &'static str },

    #[error(
        "gave up after {attempts} attempts (smallest size {min_seen}, largest size {max_seen})"
    )]
    AttemptsExhausted {
        attempts: u64,
        min_seen: u64,
        max_seen: u64,
    },

    #[error("enumeration size {n} exceeds cap {cap}")]
    EnumerationCap { n: u64, cap: u64 },

    #[error("sample outside the class set")]
    UnknownClass,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
