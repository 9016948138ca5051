//! Closed-loop simulation lab for delay-tolerant lateral path tracking.
//!
//! The crate wires a linear single-track path-tracking model, a communication
//! disturbance observer (CDOB) that turns an unknown loop time delay into an
//! estimated output disturbance, and a parameter-space PID controller into a
//! deterministic fixed-step simulator. Controller variants live behind the
//! [`strategy::TrackingStrategy`] trait and are selected by name at runtime.

pub mod cdob;
pub mod config;
pub mod controller;
pub mod path;
pub mod plot;
pub mod signals;
pub mod sim;
pub mod strategy;
pub mod vehicle;

use num_complex::Complex64;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vehicle speed must be positive, got {0}")]
    NonPositiveSpeed(f64),
    #[error("invalid preset geometry: {0}")]
    InvalidGeometry(String),
    #[error("need at least {need} waypoints, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("segment {segment} has {got} points but the degree-{degree} fit needs {need}")]
    TooFewPointsPerSegment {
        segment: usize,
        got: usize,
        need: usize,
        degree: usize,
    },
    #[error("constrained polynomial fit is rank-deficient")]
    SingularFit,
    #[error("degenerate tangent at lambda = {0}")]
    DegenerateTangent(f64),
    #[error("arc length {s} outside [0, {total}]")]
    OutOfRange { s: f64, total: f64 },
    #[error("transfer function is improper and cannot be discretized")]
    ImproperTf,
    #[error("plant is non-minimum phase; offending zeros: {0:?}")]
    NonMinimumPhase(Vec<Complex64>),
    #[error("Q order too low: Q*Gn^-1 would be improper (Q pole excess {q_excess}, plant relative degree {rel_degree})")]
    ImproperResult { q_excess: usize, rel_degree: usize },
    #[error("operation requires the modified CDOB mode")]
    WrongMode,
    #[error("admissible gain region is empty")]
    EmptyRegion,
    #[error("unknown strategy '{0}'; known: pid, pid-cdob-standard, pid-cdob-modified")]
    UnknownStrategy(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
