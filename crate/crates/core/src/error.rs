use thiserror::Error;

/// Errors produced by the toolkit's domain operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix failed the density-matrix invariants (Hermiticity, unit
    /// trace, positive semidefiniteness).
    #[error("invalid qubit state: {0}")]
    InvalidState(String),

    /// A matrix expected to be Hermitian is not, beyond tolerance.
    #[error("matrix is not Hermitian within tolerance (max deviation {0:.3e})")]
    NotHermitian(f64),

    /// A parameter fell outside its valid range.
    #[error("{name} = {value} outside valid range [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// A map-eigenvalue triple does not correspond to a completely positive
    /// Pauli map (some Kraus weight is negative).
    #[error("eigenvalue triple is not completely positive: kappa = {0:?}")]
    NotCompletelyPositive([f64; 4]),

    /// The time-local generator is singular here: some map eigenvalue
    /// vanishes and the canonical rates are undefined.
    #[error("generator singular: a map eigenvalue vanishes at this point")]
    SingularPoint,

    /// The map is non-invertible at the requested start point, so no
    /// intermediate map exists there.
    #[error("map is non-invertible at s = {0}")]
    NonInvertibleAt(f64),

    /// The requested time coincides with the rate singularity t⁻.
    #[error("decay rate singular at t = {0}")]
    SingularAt(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
