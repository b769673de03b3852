use thiserror::Error;

pub type Result<T> = std::result::Result<T, WalkError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalkError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The walk would leave the allocated site range.
    #[error("capacity exceeded: step {requested} needs sites up to |x| = {requested}, but capacity is {capacity}")]
    CapacityExceeded { requested: usize, capacity: usize },

    #[error("path enumeration refused: {steps} steps exceeds the limit of {limit}")]
    OracleTooLarge { steps: usize, limit: usize },
}

impl WalkError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        WalkError::InvalidArgument(msg.into())
    }
}
