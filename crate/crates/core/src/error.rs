use thiserror::Error;

pub type Result<T, E = CvpError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CvpError {
    /// Non-finite phasor components or otherwise malformed numeric input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Bad neutral configuration, sampling grid or analysis option.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Three-wire mode requires the line currents to sum to zero.
    #[error(
        "three-wire mode requires zero neutral current: |I_N| = {neutral_current:e} \
         exceeds {tolerance:e} x ||I|| = {limit:e}"
    )]
    KclViolation {
        neutral_current: f64,
        tolerance: f64,
        limit: f64,
    },

    /// Two independent computation routes disagree, or an identity that must
    /// hold in exact arithmetic failed beyond tolerance.
    #[error("computation integrity check failed: {0}")]
    Integrity(String),
}
