use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("spin count {0} out of range (1..={max})", max = crate::state::MAX_SPINS)]
    SpinCountOutOfRange(usize),

    #[error("spin index {index} out of range for a chain of {n_spins} spins")]
    SpinIndexOutOfRange { index: usize, n_spins: usize },

    #[error("state dimensions differ: {0} vs {1} spins")]
    SizeMismatch(usize, usize),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-physical density matrix: {0}")]
    NonPhysical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
