use thiserror::Error;

/// Everything that can go wrong while evaluating a response.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("on light cone: |c^2| = {c2:e} is below the cut-off")]
    OnLightCone { c2: f64 },

    #[error("pair threshold: c^2 = {c2} is too close to 1")]
    PairThreshold { c2: f64 },

    #[error("on subregion boundary: logarithm argument {argument:e} vanishes")]
    OnSubregionBoundary { argument: f64 },

    #[error("tolerance not reached: best value {value:e} with error estimate {error_estimate:e}")]
    ToleranceNotReached { value: f64, error_estimate: f64 },

    #[error("function returned a non-finite value at x = {x}")]
    NanIntegrand { x: f64 },

    #[error("interval [{lo}, {hi}] does not bracket a root")]
    NotBracketing { lo: f64, hi: f64 },

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
