//! Classification of quasi-eternally non-Markovian (QENM) channels and
//! Monte-Carlo measurement of the QENM region of parameter space.
//!
//! A depolarizing-family channel is QENM when at least one canonical rate
//! is negative at the end of the parameter range, i.e. the channel stays
//! CP-indivisible from some finite p⁻ all the way to p = 3/4.

use crate::error::{Error, Result};
use crate::generator::depol_p_minus;
use serde::Serialize;

/// Outcome of the QENM test for one parameter triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QenmVerdict {
    pub is_qenm: bool,
    /// Which endpoint conditions γⱼ(3/4) < 0 hold, indexed by j = 1..3.
    pub satisfied_conditions: [bool; 3],
    /// Smallest generator singularity, when one exists.
    pub p_minus_min: Option<f64>,
}

fn check_unit(name: &'static str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value: v,
            lo: 0.0,
            hi: 1.0,
        })
    }
}

/// Endpoint-negativity conditions in terms of the anisotropy sums
/// x̄ = (m+n, l+n, l+m): the condition for γⱼ(3/4) < 0 is
/// (3/4)·x̄₁x̄₂x̄₃ < x̄ⱼx̄ₐ + x̄ⱼx̄ᵦ − x̄ₐx̄ᵦ with {a, b} the other two indices.
fn endpoint_conditions(x: [f64; 3]) -> [bool; 3] {
    let product = 0.75 * x[0] * x[1] * x[2];
    let mut out = [false; 3];
    for j in 0..3 {
        let (a, b) = ((j + 1) % 3, (j + 2) % 3);
        out[j] = product < x[j] * x[a] + x[j] * x[b] - x[a] * x[b];
    }
    out
}

/// QENM test for the anisotropic depolarizing channel with parameters
/// (l, m, n) ∈ [0, 1]³. The verdict is true when any endpoint condition
/// holds; the inequalities are strict, so the measure-zero boundary set is
/// classified as not QENM.
pub fn classify(l: f64, m: f64, n: f64) -> Result<QenmVerdict> {
    check_unit("l", l)?;
    check_unit("m", m)?;
    check_unit("n", n)?;
    let x = [m + n, l + n, l + m];
    let satisfied = endpoint_conditions(x);
    let p_minus_min = x
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| depol_p_minus(v))
        .fold(None, |acc: Option<f64>, v| {
            Some(acc.map_or(v, |a| a.min(v)))
        });
    Ok(QenmVerdict {
        is_qenm: satisfied.iter().any(|&c| c),
        satisfied_conditions: satisfied,
        p_minus_min,
    })
}

/// QENM test for the isotropic channel: true iff α ≤ 2/3, equivalently
/// p̃ ≥ 3/4, so the single negative rate never turns positive in range.
///
/// The boundary α = 2/3 is included as QENM (p̃ = 3/4 exactly), while the
/// strict inequalities of [`classify`] exclude the same measure-zero point.
pub fn classify_iso(alpha: f64) -> Result<QenmVerdict> {
    check_unit("alpha", alpha)?;
    if alpha <= 0.0 {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
            lo: f64::MIN_POSITIVE,
            hi: 1.0,
        });
    }
    let is_qenm = alpha <= 2.0 / 3.0;
    Ok(QenmVerdict {
        is_qenm,
        satisfied_conditions: [is_qenm; 3],
        p_minus_min: Some(depol_p_minus(2.0 * alpha)),
    })
}

/// A Monte-Carlo volume estimate with its sampling provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub samples: u64,
    pub seed: u64,
    pub estimate: f64,
    /// Binomial standard error √(p̂(1 − p̂)/n).
    pub standard_error: f64,
}

/// Counter-based uniform variate in [0, 1): SplitMix64 finalizer applied
/// to seed ⊕ counter-stream. Sample i draws from counters 3i..3i+2, so any
/// partition of the sample range produces identical streams, serial or
/// parallel.
fn unit_from_counter(seed: u64, counter: u64) -> f64 {
    let mut z = seed ^ counter.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64
}

/// Monte-Carlo estimate of the Euclidean volume of the QENM region in the
/// (l, m, n) ∈ [0, 1]³ parameter cube.
///
/// Deterministic for a given seed; the counter-based stream makes the
/// estimate independent of evaluation order.
pub fn qenm_volume(samples: u64, seed: u64) -> VolumeEstimate {
    let mut hits = 0u64;
    for i in 0..samples {
        let l = unit_from_counter(seed, 3 * i);
        let m = unit_from_counter(seed, 3 * i + 1);
        let n = unit_from_counter(seed, 3 * i + 2);
        let x = [m + n, l + n, l + m];
        if endpoint_conditions(x).iter().any(|&c| c) {
            hits += 1;
        }
    }
    let estimate = hits as f64 / samples as f64;
    VolumeEstimate {
        samples,
        seed,
        estimate,
        standard_error: (estimate * (1.0 - estimate) / samples as f64).sqrt(),
    }
}

/// Fraction of the QENM diagonal: samples l = m = n = α uniformly.
/// Converges to the isotropic QENM measure 2/3.
pub fn qenm_diagonal_fraction(samples: u64, seed: u64) -> VolumeEstimate {
    let mut hits = 0u64;
    for i in 0..samples {
        let alpha = unit_from_counter(seed, i);
        let x = [2.0 * alpha; 3];
        if endpoint_conditions(x).iter().any(|&c| c) {
            hits += 1;
        }
    }
    let estimate = hits as f64 / samples as f64;
    VolumeEstimate {
        samples,
        seed,
        estimate,
        standard_error: (estimate * (1.0 - estimate) / samples as f64).sqrt(),
    }
}

/// Fraction of a uniform midpoint α-grid over (0, 1] classified QENM.
/// Converges to 2/3 as the grid refines.
pub fn iso_qenm_measure(grid_points: usize) -> f64 {
    let alphas: Vec<f64> = (0..grid_points)
        .map(|k| (k as f64 + 0.5) / grid_points as f64)
        .collect();
    iso_qenm_measure_on(&alphas)
}

/// Fraction of an explicit α-grid classified QENM.
pub fn iso_qenm_measure_on(alphas: &[f64]) -> f64 {
    let hits = alphas
        .iter()
        .filter(|&&a| classify_iso(a).map(|v| v.is_qenm).unwrap_or(false))
        .count();
    hits as f64 / alphas.len() as f64
}
