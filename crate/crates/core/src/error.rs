use thiserror::Error;

use crate::metric::SpaceKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A point's coordinate variant does not belong to the space it was used with.
    #[error("point variant {point} does not match space {space:?}")]
    VariantMismatch { space: SpaceKind, point: &'static str },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A man strategy produced a move that leaves the domain or exceeds the jump bound.
    #[error("illegal man move at step {step}: {reason}")]
    IllegalMove { step: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::ContractViolation(msg.into())
}

pub(crate) fn unsupported(msg: impl Into<String>) -> Error {
    Error::Unsupported(msg.into())
}
