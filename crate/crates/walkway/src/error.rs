use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum WalkwayError {
    /// An input coordinate or parameter was NaN or infinite where a finite
    /// value is required.
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    /// Speeds must satisfy v > 1 (or be infinite); inverse speeds must lie in [0, 1).
    #[error("invalid speed: {0}")]
    InvalidSpeed(String),

    /// A two-point facility collapsed to a single point where two distinct
    /// endpoints are required (e.g. the bisector partition).
    #[error("degenerate walkway: endpoints coincide")]
    DegenerateWalkway,

    /// An operation that needs points received an empty set.
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    /// The u-shaped/red-blue variants need both colour classes populated.
    #[error("empty colour class: {0}")]
    EmptyColorClass(&'static str),

    /// k-elevator queries need at least one elevator.
    #[error("no elevators given")]
    NoElevators,

    /// The rotation-based approximation needs a finite speed; the angle count
    /// grows with v and is unbounded for infinite speed.
    #[error("unsupported speed: the rotation sweep requires finite v")]
    UnsupportedSpeed,

    /// A splitter handed back a part that violates its declared size bound,
    /// or made no progress.
    #[error("splitter contract violated: {0}")]
    SplitterContract(String),

    /// The implicit minimax solver exhausted its repair budget without all
    /// parts accepting the incumbent; usually a sign of an inconsistent
    /// decision oracle or a non-quasiconvex constraint family.

    /// Generic invalid-argument failure with context.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, WalkwayError>;
