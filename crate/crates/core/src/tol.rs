//! Centralized numerical tolerances.
//!
//! Every threshold used for validation, root merging, and witness decisions
//! lives here so that no operation carries its own ad-hoc magic number.

/// Tolerance bundle shared by all modules.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Generic equality comparisons between computed quantities.
    pub equality: f64,
    /// Allowed deviation from exact Hermiticity, element-wise.
    pub hermiticity: f64,
    /// Eigenvalues above `-psd` count as non-negative.
    pub psd: f64,
    /// A map eigenvalue below this magnitude is treated as zero
    /// (non-invertible map, singular generator).
    pub singular: f64,
    /// Roots closer than this are merged into one singularity with summed
    /// multiplicity.
    pub root_merge: f64,
    /// An intermediate Choi eigenvalue below `-choi_negative` certifies
    /// CP-indivisibility; values above it are treated as rounding.
    pub choi_negative: f64,
    /// Inset applied to singular endpoints before quadrature or endpoint
    /// rate evaluation.
    pub endpoint_inset: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            equality: 1e-10,
            hermiticity: 1e-12,
            psd: 1e-12,
            singular: 1e-12,
            root_merge: 1e-9,
            choi_negative: 1e-10,
            endpoint_inset: 1e-9,
        }
    }
}
