use quartic_lab::evaluate::EvalError;
use quartic_lab::holonomic::HolonomicError;

/// Exit code 1: a check or tolerance failed.
pub const EXIT_FAILURE: u8 = 1;
/// Exit code 2: bad input or out-of-domain parameters.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn failure(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: message.into(),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::NonConvergence { .. } | EvalError::Budget(_) => Self::failure(e.to_string()),
            _ => Self::usage(e.to_string()),
        }
    }
}

impl From<HolonomicError> for CliError {
    fn from(e: HolonomicError) -> Self {
        Self::usage(e.to_string())
    }
}
