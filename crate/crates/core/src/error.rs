use thiserror::Error;

use crate::splitc::SplitComplex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("speed {speed} is not below lightspeed {c}")]
    SpeedLimitExceeded { speed: f64, c: f64 },

    #[error("velocity composition {v} * {w} is indeterminate (opposite lightspeeds)")]
    IndeterminateComposition { v: f64, w: f64 },

    #[error("light rays have the same orientation; no unique intersection")]
    SameOrientation,

    #[error("worldline is not future timelike between s = {s0} and s = {s1} (interval {margin})")]
    NotTimelike { s0: f64, s1: f64, margin: f64 },

    #[error("parameter {s} lies outside the observer domain [{lo}, {hi}]")]
    DomainExceeded { s: f64, lo: f64, hi: f64 },

    #[error("event {event} has no radar coordinate for this observer")]
    NoRadarCoordinate { event: SplitComplex },

    #[error("observer is not differentiable (C0 kind)")]
    NotDifferentiable,

    #[error("conformal factor {value} at {at} is not positive")]
    DegenerateFactor { at: SplitComplex, value: f64 },

    #[error("evaluation failed at {at}: {source}")]
    EvaluationFailure {
        at: SplitComplex,
        #[source]
        source: Box<Error>,
    },

    #[error("non-finite value produced at {at}")]
    NonFinite { at: SplitComplex },

    #[error("antiholomorphic part vanishes identically; the map is a plain MW map")]
    DegenerateSplit,

    #[error("radar time is not strictly increasing at sample {index}")]
    NonMonotoneRadarTime { index: usize },

    #[error("adaptive quadrature on [{a}, {b}] did not converge within {max_evals} evaluations")]
    QuadratureFailure { a: f64, b: f64, max_evals: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn at(self, at: SplitComplex) -> Error {
        match self {
            e @ Error::EvaluationFailure { .. } => e,
            e => Error::EvaluationFailure {
                at,
                source: Box::new(e),
            },
        }
    }
}

impl Error {
    /// Innermost error beneath any [`Error::EvaluationFailure`] wrappers.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::EvaluationFailure { source, .. } => source.root_cause(),
            e => e,
        }
    }
}
