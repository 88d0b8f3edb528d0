use thiserror::Error;

/// Errors raised by game construction and Sprague-Grundy evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("coordinate {value} does not fit in 32 bits")]
    CoordinateOverflow { value: u64 },

    #[error("invalid position for {ruleset}: {reason}")]
    InvalidPosition { ruleset: String, reason: String },

    #[error("search budget of {budget} positions exceeded")]
    BudgetExceeded { budget: usize },

    #[error("option relation is cyclic at {position}")]
    Cycle { position: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid shape function: {0}")]
    InvalidFunction(String),

    #[error("unsupported value {value}: {reason}")]
    Unsupported { value: u64, reason: String },
}

impl GameError {
    pub(crate) fn invalid(ruleset: impl Into<String>, reason: impl Into<String>) -> Self {
        GameError::InvalidPosition {
            ruleset: ruleset.into(),
            reason: reason.into(),
        }
    }

    /// True for failures caused by exhausting a resource bound rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, GameError::BudgetExceeded { .. } | GameError::Cycle { .. })
    }
}

pub type Result<T, E = GameError> = std::result::Result<T, E>;
