use thiserror::Error;

use crate::divisor::PointLabel;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u32),

    #[error("genus {genus} exceeds the configured ceiling {ceiling}")]
    GenusAboveCeiling { genus: u32, ceiling: u32 },

    #[error("invalid partition request: {0}")]
    InvalidPartitionArgs(String),

    #[error("order {order} is out of range 0..={max} for genus {genus}")]
    OrderOutOfRange { genus: u32, order: u32, max: u32 },

    #[error("invalid exceptional class for genus {genus}: {reason}")]
    InvalidClass { genus: u32, reason: String },

    #[error("asymmetric incidence between {0} and {1}")]
    AsymmetricIncidence(PointLabel, PointLabel),

    #[error("vertex {0} is not part of this graph")]
    UnknownVertex(PointLabel),

    #[error("operation requires an exceptional graph")]
    NotExceptional,

    #[error("surface type violates the branch budget: total {total}, expected {expected}")]
    BranchBudget { total: u64, expected: u64 },

    #[error("malformed graph document: {0}")]
    Document(String),

    #[error("surface type for genus {genus} needs {expected} counts, got {actual}")]
    SurfaceTypeLength { genus: u32, expected: usize, actual: usize },
}
