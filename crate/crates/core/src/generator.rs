//! Canonical decay rates of the time-local generator, singularity location
//! and classification, sign profiles, and the isotropic zero-crossing
//! point p̃.

use crate::channels::{ChannelFamily, PauliEigenvalues, HADAMARD};
use crate::error::{Error, Result};
use crate::numeric::{bisect, scan_roots};
use crate::tol::Tolerances;
use serde::Serialize;

/// Which parameter the rates are measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RateDomain {
    /// Units of 1 / (native channel parameter p or t).
    Parametric,
    /// Units of 1 / physical time, after multiplying by ṗ(t).
    Physical,
}

/// The canonical rate triple (γ₁, γ₂, γ₃) of the master equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayRates {
    pub gamma: [f64; 3],
    pub domain: RateDomain,
}

impl DecayRates {
    pub fn min(&self) -> f64 {
        self.gamma.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Converts parametric rates to physical-time rates given ṗ.
    pub fn to_physical(&self, p_dot: f64) -> DecayRates {
        DecayRates {
            gamma: self.gamma.map(|g| g * p_dot),
            domain: RateDomain::Physical,
        }
    }
}

/// Canonical decay rates from map eigenvalues with derivatives:
/// γᵢ = (1/4) Σⱼ Hᵢⱼ ν̇ⱼ/νⱼ.
///
/// The result is invariant under a common rescaling of (ν, ν̇). Fails with
/// `SingularPoint` when some |νⱼ| < 1e-12.
pub fn decay_rates(ev: &PauliEigenvalues) -> Result<DecayRates> {
    let nu_dot = ev
        .nu_dot
        .expect("decay_rates requires eigenvalue derivatives");
    let tol = Tolerances::default();
    if ev.nu.iter().any(|v| v.abs() < tol.singular) {
        return Err(Error::SingularPoint);
    }
    let log_deriv = [
        nu_dot[0] / ev.nu[0],
        nu_dot[1] / ev.nu[1],
        nu_dot[2] / ev.nu[2],
    ];
    let mut gamma = [0.0; 3];
    for i in 1..4 {
        gamma[i - 1] = 0.25
            * (1..4)
                .map(|j| HADAMARD[i][j] * log_deriv[j - 1])
                .sum::<f64>();
    }
    Ok(DecayRates {
        gamma,
        domain: RateDomain::Parametric,
    })
}

/// Rates of a family at a point, as a convenience wrapper.
pub fn rates_at(family: &ChannelFamily, p: f64) -> Result<DecayRates> {
    decay_rates(&family.nu(p)?)
}

/// Rates on a grid. Singular points are marked with `None` rather than
/// interpolated. The grid must lie inside the family's valid range.
pub fn rates_grid(family: &ChannelFamily, grid: &[f64]) -> Result<Vec<(f64, Option<DecayRates>)>> {
    let mut out = Vec::with_capacity(grid.len());
    for &p in grid {
        let ev = family.nu(p)?;
        match decay_rates(&ev) {
            Ok(r) => out.push((p, Some(r))),
            Err(Error::SingularPoint) => out.push((p, None)),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// One generator singularity: a zero of the map eigenvalue ν_j.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Singularity {
    /// Pauli index 1..3 of the vanishing eigenvalue (smallest index when
    /// several coincide).
    pub j: usize,
    /// Location of the zero in the family's native parameter.
    pub p_minus: f64,
    /// The anisotropy sum x̄_j for depolarizing families, `None` otherwise.
    pub x: Option<f64>,
    /// Number of eigenvalue components vanishing here.
    pub multiplicity: u32,
}

/// All generator singularities of a family, ascending in p.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SingularitySet {
    pub entries: Vec<Singularity>,
}

impl SingularitySet {
    pub fn positions(&self) -> Vec<f64> {
        self.entries.iter().map(|s| s.p_minus).collect()
    }

    pub fn first(&self) -> Option<f64> {
        self.entries.first().map(|s| s.p_minus)
    }

    fn from_raw(mut raw: Vec<(usize, f64, Option<f64>)>, merge_tol: f64) -> Self {
        raw.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let mut entries: Vec<Singularity> = Vec::new();
        for (j, p, x) in raw {
            match entries.last_mut() {
                Some(last) if (p - last.p_minus).abs() <= merge_tol => {
                    last.multiplicity += 1;
                    if j < last.j {
                        last.j = j;
                        last.x = x;
                    }
                }
                _ => entries.push(Singularity {
                    j,
                    p_minus: p,
                    x,
                    multiplicity: 1,
                }),
            }
        }
        SingularitySet { entries }
    }
}

/// The smaller root p⁻ of ν(x̄, p) = 0 in the numerically stable form
/// p⁻ = 3 / (2 + 3x̄ + √(9x̄² − 6x̄ + 4)).
///
/// Monotone decreasing in x̄ with limits 3/4 (x̄ → 0) and 2/3 − √7/6
/// (x̄ → 2).
pub fn depol_p_minus(x: f64) -> f64 {
    3.0 / (2.0 + 3.0 * x + (9.0 * x * x - 6.0 * x + 4.0).sqrt())
}

/// The larger root p⁺ of ν(x̄, p) = 0; lies beyond 3/4 for all x̄ ∈ (0, 2].
pub fn depol_p_plus(x: f64) -> f64 {
    (2.0 + 3.0 * x + (9.0 * x * x - 6.0 * x + 4.0).sqrt()) / (6.0 * x)
}

/// Generator singularities of a family over its default window.
///
/// Depolarizing families use the closed form per eigenvalue component;
/// other families fall back to a bracketed bisection scan of each νⱼ
/// (step 1e-3, tolerance 1e-12). Unbounded time-parametrized families are
/// scanned over one period (cosine families) or [0, 4] (`ExpDephasing`).
/// A component with x̄ = 0 has its zero exactly at the endpoint 3/4 and is
/// not reported.
pub fn singularities(family: &ChannelFamily) -> SingularitySet {
    let tol = Tolerances::default();
    if let Some(xs) = family.anisotropy_sums() {
        let raw = xs
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > tol.singular)
            .map(|(idx, &x)| (idx + 1, depol_p_minus(x), Some(x)))
            .collect();
        return SingularitySet::from_raw(raw, tol.root_merge);
    }
    let (lo, hi) = family.param_range();
    let hi = if hi.is_finite() {
        hi
    } else {
        match family {
            ChannelFamily::CosDephasing { omega } | ChannelFamily::CosPauli { omega } => {
                2.0 * std::f64::consts::PI / omega
            }
            _ => 4.0,
        }
    };
    singularities_in(family, lo, hi)
}

/// Generic singularity search: bracketed bisection on each νⱼ over
/// [lo, hi], scan step 1e-3, bisection tolerance 1e-12. Endpoint roots are
/// excluded. Zeros where ν touches without a sign change (stationary
/// zeros, like the exponential-dephasing coherence at t = 1) are recovered
/// from sign changes of ν̇ at which |ν| vanishes.
pub fn singularities_in(family: &ChannelFamily, lo: f64, hi: f64) -> SingularitySet {
    let tol = Tolerances::default();
    let step = 1e-3 * (hi - lo).max(1.0);
    let mut raw: Vec<(usize, f64, Option<f64>)> = Vec::new();
    for j in 1..=3 {
        let f = |p: f64| family.nu(p).map(|ev| ev.nu[j - 1]).unwrap_or(f64::NAN);
        let fdot = |p: f64| {
            family
                .nu(p)
                .ok()
                .and_then(|ev| ev.nu_dot.map(|d| d[j - 1]))
                .unwrap_or(f64::NAN)
        };
        let x = family.anisotropy_sums().map(|xs| xs[j - 1]);
        let mut roots = scan_roots(f, lo, hi, step, 1e-12);
        for stationary in scan_roots(fdot, lo, hi, step, 1e-12) {
            if f(stationary).abs() <= tol.root_merge
                && roots.iter().all(|r| (r - stationary).abs() > tol.root_merge)
            {
                roots.push(stationary);
            }
        }
        for root in roots {
            if root > lo + tol.root_merge && root < hi - tol.root_merge {
                raw.push((j, root, x));
            }
        }
    }
    SingularitySet::from_raw(raw, tol.root_merge)
}

/// The point p̃ = (1 + 3α)/(6α) where the isotropic rate's numerator
/// vanishes. Requires α > 0.
pub fn p_tilde(alpha: f64) -> Result<f64> {
    if alpha <= 0.0 {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
            lo: f64::MIN_POSITIVE,
            hi: f64::INFINITY,
        });
    }
    Ok((1.0 + 3.0 * alpha) / (6.0 * alpha))
}

/// A maximal interval on which one rate component keeps a constant sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignInterval {
    pub lo: f64,
    pub hi: f64,
    /// +1 or -1.
    pub sign: i8,
}

/// Partitions the family's valid range (minus singular points) into maximal
/// constant-sign intervals of γⱼ.
///
/// Sign changes away from singularities (smooth zeros of the rate) are
/// located by bisection; consecutive intervals separated by a singularity
/// have opposite signs.
pub fn sign_profile(family: &ChannelFamily, j: usize, grid_step: f64) -> Result<Vec<SignInterval>> {
    assert!((1..=3).contains(&j), "rate index must be 1..3");
    if grid_step > 1e-3 {
        return Err(Error::OutOfRange {
            name: "grid_step",
            value: grid_step,
            lo: 0.0,
            hi: 1e-3,
        });
    }
    let (lo, hi) = family.param_range();
    let hi = if hi.is_finite() { hi } else { 4.0 };
    let inset = Tolerances::default().endpoint_inset;

    let mut cuts = vec![lo];
    cuts.extend(singularities_in(family, lo, hi).positions());
    cuts.push(hi);

    let rate = |p: f64| -> Option<f64> { rates_at(family, p).ok().map(|r| r.gamma[j - 1]) };

    let mut out: Vec<SignInterval> = Vec::new();
    for w in cuts.windows(2) {
        let (seg_lo, seg_hi) = (w[0] + inset, w[1] - inset);
        if seg_hi <= seg_lo {
            continue;
        }
        // interior smooth zeros of the rate within this segment
        let mut boundaries = vec![seg_lo];
        let f = |p: f64| rate(p).unwrap_or(f64::NAN);
        boundaries.extend(scan_roots(f, seg_lo, seg_hi, grid_step, 1e-12));
        boundaries.push(seg_hi);
        for piece in boundaries.windows(2) {
            if piece[1] - piece[0] < 2.0 * inset {
                continue;
            }
            let mid = 0.5 * (piece[0] + piece[1]);
            if let Some(g) = rate(mid) {
                let sign = if g >= 0.0 { 1 } else { -1 };
                match out.last_mut() {
                    Some(last) if last.sign == sign && (piece[0] - last.hi).abs() < 1e-6 => {
                        last.hi = piece[1];
                    }
                    _ => out.push(SignInterval {
                        lo: piece[0],
                        hi: piece[1],
                        sign,
                    }),
                }
            }
        }
    }
    Ok(out)
}

/// Refines the location of a smooth rate zero near `guess` (used by the
/// measures module for integration bounds).
pub fn refine_rate_zero(family: &ChannelFamily, j: usize, lo: f64, hi: f64) -> Option<f64> {
    let f = |p: f64| {
        rates_at(family, p)
            .map(|r| r.gamma[j - 1])
            .unwrap_or(f64::NAN)
    };
    let (flo, fhi) = (f(lo), f(hi));
    if !flo.is_finite() || !fhi.is_finite() || flo * fhi > 0.0 {
        return None;
    }
    Some(bisect(f, lo, hi, 1e-13))
}
