use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two devices closer than [`crate::geometry::MIN_DISTANCE`].
    #[error("devices are co-located: distance {distance} m is below the {min} m minimum")]
    CoLocatedDevices { distance: f64, min: f64 },

    #[error("invalid candidate set for {strategy}: {reason}")]
    InvalidCandidateSet { strategy: String, reason: String },

    #[error("cannot aggregate an empty list of records")]
    EmptyInput,

    #[error("invalid configuration field `{field}`: {reason}")]
    InvalidConfig { field: String, reason: String },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
}

impl Error {
    pub(crate) fn config(field: &str, reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field: field.to_string(),
            reason: reason.into(),
        }
    }
}
