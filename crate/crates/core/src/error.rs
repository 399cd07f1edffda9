use thiserror::Error;

/// Failures raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point lies outside the open unit ball (|z| = {norm})")]
    OutsideBall { norm: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("automorphism base point must be nonzero")]
    DegenerateAutomorphism,

    #[error("weight argument t = {0} lies outside (0, 1]")]
    WeightDomain(f64),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid boundary data: {0}")]
    InvalidBoundary(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("evaluation point within {tolerance:e} of the boundary atom at angle {angle}")]
    AtomSingularity { angle: f64, tolerance: f64 },

    #[error("non-finite integrand value at circle node {index}")]
    NonFiniteIntegrand { index: usize },

    #[error("|f| fell below {threshold:e} on the winding contour around {center:?} (radius {radius})")]
    ContourHitsZero { center: Vec<(f64, f64)>, radius: f64, threshold: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("at sample point k = {k}, direction {direction}, z = {coords:?}: {source}")]
    AtSamplePoint { k: u32, direction: usize, coords: Vec<(f64, f64)>, source: Box<Error> },
}

impl Error {
    /// The error beneath any sample-point context.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtSamplePoint { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
