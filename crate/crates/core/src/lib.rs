//! Numerical toolkit for non-Markovian Pauli dynamical maps.
//!
//! The crate builds parametric families of qubit Pauli channels, locates
//! the singularities of their time-local generators, tests CP- and
//! P-divisibility through intermediate-map Choi spectra and canonical rate
//! signs, computes negative-rate and semigroup-deviation non-Markovianity
//! measures, and classifies and measures the quasi-eternally non-Markovian
//! region of the depolarizing parameter space.
//!
//! Modules follow the pipeline: [`qalg`] (fixed-size complex linear
//! algebra) → [`channels`] (family registry: Kraus weights, map
//! eigenvalues, state action) → [`generator`] (canonical decay rates and
//! singularities) → [`divisibility`] (intermediate maps and witnesses) →
//! [`measures`] / [`qenm`] (quantification and classification).

pub mod channels;
pub mod divisibility;
mod error;
pub mod generator;
pub mod measures;
pub mod numeric;
pub mod qalg;
pub mod qenm;
pub mod tol;

pub use channels::{ChannelFamily, KrausWeights, PauliEigenvalues};
pub use divisibility::{ChoiSpectrum, DivisibilityReport, IntermediateRatios};
pub use error::{Error, Result};
pub use generator::{DecayRates, RateDomain, SignInterval, Singularity, SingularitySet};
pub use measures::{
    GammaStarMode, MeasureMethod, MeasureResult, RenormMode, SssConfig, SssRateDomain,
};
pub use qalg::{Choi4, Mat2, Mat4, QubitState};
pub use qenm::{QenmVerdict, VolumeEstimate};
pub use tol::Tolerances;
