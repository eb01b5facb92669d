//! Intermediate-map construction, Choi-spectrum CP witnesses, rate-based
//! divisibility conditions, and trace-distance scans.

use crate::channels::ChannelFamily;
use crate::error::{Error, Result};
use crate::generator::DecayRates;
use crate::qalg::{trace_distance, QubitState};
use crate::tol::Tolerances;
use serde::Serialize;

/// Eigenvalue ratios rⱼ = νⱼ(p)/νⱼ(s) of the intermediate map E(p, s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntermediateRatios {
    pub r: [f64; 3],
    pub s: f64,
    pub p: f64,
}

/// Spectrum of the intermediate map's Choi matrix, descending.
/// The sum is always 2; all entries non-negative iff the intermediate map
/// is completely positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChoiSpectrum {
    pub lambda: [f64; 4],
}

impl ChoiSpectrum {
    pub fn min(&self) -> f64 {
        self.lambda[3]
    }

    pub fn is_cp(&self) -> bool {
        self.lambda[3] >= -Tolerances::default().choi_negative
    }
}

/// Ratios of the intermediate map from s to p (p ≥ s).
///
/// Fails with `NonInvertibleAt(s)` when some νⱼ(s) vanishes: the map has no
/// inverse there and the intermediate map does not exist.
pub fn intermediate_ratios(family: &ChannelFamily, s: f64, p: f64) -> Result<IntermediateRatios> {
    if p < s {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            lo: s,
            hi: family.param_range().1,
        });
    }
    let tol = Tolerances::default();
    let at_s = family.nu(s)?.nu;
    if at_s.iter().any(|v| v.abs() < tol.singular) {
        return Err(Error::NonInvertibleAt(s));
    }
    let at_p = family.nu(p)?.nu;
    Ok(IntermediateRatios {
        r: [at_p[0] / at_s[0], at_p[1] / at_s[1], at_p[2] / at_s[2]],
        s,
        p,
    })
}

/// Choi spectrum of the intermediate map with eigenvalue triple r:
/// the four values (1/2)(1 ± r₁ ± r₂ ± r₃) with an even number of minus
/// signs, sorted descending.
pub fn intermediate_choi_spectrum(ratios: &IntermediateRatios) -> ChoiSpectrum {
    let [r1, r2, r3] = ratios.r;
    let mut lambda = [
        0.5 * (1.0 - r1 - r2 + r3),
        0.5 * (1.0 - r1 + r2 - r3),
        0.5 * (1.0 + r1 - r2 - r3),
        0.5 * (1.0 + r1 + r2 + r3),
    ];
    lambda.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ChoiSpectrum { lambda }
}

/// Minimum intermediate-Choi eigenvalue over a p grid for fixed s.
/// A value below −1e-10 certifies CP-indivisibility of the interval (s, p).
pub fn cp_witness_scan(
    family: &ChannelFamily,
    s: f64,
    p_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(p_grid.len());
    for &p in p_grid {
        let ratios = intermediate_ratios(family, s, p)?;
        out.push((p, intermediate_choi_spectrum(&ratios).min()));
    }
    Ok(out)
}

/// Necessary condition for positive P-divisibility: all pairwise rate sums
/// non-negative (tolerance −1e-12).
pub fn p_div_condition(rates: &DecayRates) -> bool {
    let [g1, g2, g3] = rates.gamma;
    g1 + g2 >= -1e-12 && g2 + g3 >= -1e-12 && g3 + g1 >= -1e-12
}

/// Rate-sign condition for CP-divisibility: all rates non-negative
/// (tolerance −1e-12).
///
/// For channels with generator singularities this is sufficient but not
/// necessary, so reports should treat the Choi witness as authoritative.
pub fn cp_rate_condition(rates: &DecayRates) -> bool {
    rates.gamma.iter().all(|&g| g >= -1e-12)
}

/// Combined divisibility verdict for the interval (s, p).
///
/// The Choi witness is authoritative: for channels with generator
/// singularities the rate-sign condition is sufficient but not necessary
/// for CP-divisibility, which `rate_condition_sufficient_only` records.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivisibilityReport {
    /// Smallest intermediate-Choi eigenvalue found on the interval.
    pub min_choi_eigenvalue: f64,
    /// Choi-witness verdict: no eigenvalue below −1e-10 anywhere.
    pub cp_divisible: bool,
    /// All three rates non-negative throughout the sampled interval.
    pub cp_rate_condition: bool,
    /// All pairwise rate sums non-negative throughout.
    pub p_div_condition: bool,
    /// True when the channel has singularities, in which case a failed
    /// rate condition does not by itself rule out CP-divisibility.
    pub rate_condition_sufficient_only: bool,
}

/// Scans the interval (s, p) with the given step and combines the Choi
/// witness with the rate-sign conditions. Singular sample points are
/// skipped for the rate conditions (the witness is continuous through
/// them).
pub fn divisibility_report(
    family: &ChannelFamily,
    s: f64,
    p: f64,
    step: f64,
) -> Result<DivisibilityReport> {
    let tol = Tolerances::default();
    let has_singularities = !crate::generator::singularities(family).entries.is_empty();
    let mut min_eig = f64::INFINITY;
    let mut cp_rates = true;
    let mut p_div = true;
    let n = ((p - s) / step).ceil().max(1.0) as usize;
    for k in 0..=n {
        let q = (s + k as f64 * step).min(p);
        let ratios = intermediate_ratios(family, s, q)?;
        min_eig = min_eig.min(intermediate_choi_spectrum(&ratios).min());
        if let Ok(rates) = crate::generator::rates_at(family, q) {
            cp_rates &= cp_rate_condition(&rates);
            p_div &= p_div_condition(&rates);
        }
    }
    Ok(DivisibilityReport {
        min_choi_eigenvalue: min_eig,
        cp_divisible: min_eig >= -tol.choi_negative,
        cp_rate_condition: cp_rates,
        p_div_condition: p_div,
        rate_condition_sufficient_only: has_singularities,
    })
}

/// Trace distance between the two evolved states over a grid.
/// Continuous through singular points.
pub fn td_scan(
    family: &ChannelFamily,
    a: &QubitState,
    b: &QubitState,
    grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(grid.len());
    for &p in grid {
        let ea = family.act(p, a)?;
        let eb = family.act(p, b)?;
        out.push((p, trace_distance(&ea, &eb)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{depol_nu, ChannelFamily};
    use crate::generator::{depol_p_minus, depol_p_plus, rates_at, RateDomain};
    use crate::qalg::choi_from_map_eigenvalues;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn ratios_are_unity_at_equal_times() {
        let fam = ChannelFamily::AnisoDepol { l: 0.2, m: 0.4, n: 0.6 };
        let r = intermediate_ratios(&fam, 0.3, 0.3).unwrap();
        for v in r.r {
            assert_close(v, 1.0, 1e-14);
        }
    }

    #[test]
    fn ratios_vanish_at_isotropic_singularity() {
        let alpha = 0.55;
        let fam = ChannelFamily::IsoDepol { alpha };
        let pm = depol_p_minus(2.0 * alpha);
        let r = intermediate_ratios(&fam, 0.2, pm).unwrap();
        for v in r.r {
            assert!(v.abs() < 1e-9, "ratio at the singularity was {v}");
        }
    }

    #[test]
    fn start_at_singularity_is_an_error() {
        let alpha = 0.55;
        let fam = ChannelFamily::IsoDepol { alpha };
        let pm = depol_p_minus(2.0 * alpha);
        assert!(matches!(
            intermediate_ratios(&fam, pm, 0.7),
            Err(Error::NonInvertibleAt(_))
        ));
    }

    #[test]
    fn ratios_match_root_bracket_expression() {
        // for depolarizing families rⱼ = (p⁻ − p)(p⁺ − p) / ((p⁻ − s)(p⁺ − s))
        let fam = ChannelFamily::AnisoDepol { l: 0.15, m: 0.55, n: 0.35 };
        let xs = fam.anisotropy_sums().unwrap();
        let (s, p) = (0.12, 0.31);
        let r = intermediate_ratios(&fam, s, p).unwrap();
        for j in 0..3 {
            let (pm, pp) = (depol_p_minus(xs[j]), depol_p_plus(xs[j]));
            let bracket = ((pm - p) * (pp - p)) / ((pm - s) * (pp - s));
            assert_close(r.r[j], bracket, 1e-12);
        }
    }

    #[test]
    fn spectrum_trivial_cases() {
        let id = IntermediateRatios { r: [1.0; 3], s: 0.1, p: 0.1 };
        assert_eq!(intermediate_choi_spectrum(&id).lambda, [2.0, 0.0, 0.0, 0.0]);
        let depol = IntermediateRatios { r: [0.0; 3], s: 0.1, p: 0.3 };
        assert_eq!(intermediate_choi_spectrum(&depol).lambda, [0.5; 4]);
    }

    #[test]
    fn spectrum_sums_to_two() {
        let r = IntermediateRatios { r: [0.93, -0.21, 0.48], s: 0.1, p: 0.5 };
        let spec = intermediate_choi_spectrum(&r);
        assert_close(spec.lambda.iter().sum::<f64>(), 2.0, 1e-14);
    }

    #[test]
    fn spectrum_matches_explicit_choi_assembly() {
        // the intermediate map is itself a Pauli map with eigenvalues r;
        // its explicitly assembled Choi matrix must have the same spectrum
        let fam = ChannelFamily::AnisoDepol { l: 0.2, m: 0.4, n: 0.6 };
        for (s, p) in [(0.05, 0.2), (0.2, 0.38), (0.37, 0.39), (0.45, 0.6)] {
            let ratios = intermediate_ratios(&fam, s, p).unwrap();
            let spec = intermediate_choi_spectrum(&ratios);
            let explicit = choi_from_map_eigenvalues(ratios.r).eigenvalues();
            for j in 0..4 {
                assert_close(spec.lambda[j], explicit[j], 1e-10);
            }
        }
    }

    #[test]
    fn negative_eigenvalue_before_first_singularity() {
        // s just below p⁻_min = 0.392…: the witness dips negative
        let fam = ChannelFamily::AnisoDepol { l: 0.2, m: 0.4, n: 0.6 };
        let ratios = intermediate_ratios(&fam, 0.37, 0.39).unwrap();
        let spec = intermediate_choi_spectrum(&ratios);
        assert!(spec.min() < -1e-3, "expected a clear negative eigenvalue");
        assert!(!spec.is_cp());
        // frozen from the explicit 4×4 oracle: λ_min ≈ −0.2482
        assert_close(spec.min(), -0.248_23, 2e-4);
    }

    #[test]
    fn markovian_intermediate_maps_stay_cp() {
        let fam = ChannelFamily::AnisoDepol { l: 0.0, m: 0.0, n: 0.0 };
        let grid: Vec<f64> = (1..=50).map(|k| 0.2 + 0.01 * k as f64).collect();
        for (_, min) in cp_witness_scan(&fam, 0.2, &grid).unwrap() {
            assert!(min >= -1e-12);
        }
    }

    #[test]
    fn early_isotropic_interval_is_cp() {
        let fam = ChannelFamily::IsoDepol { alpha: 0.5 };
        let r = intermediate_ratios(&fam, 0.01, 0.02).unwrap();
        assert!(intermediate_choi_spectrum(&r).min() >= 0.0);
    }

    #[test]
    fn ratio_composition_property() {
        let fam = ChannelFamily::AnisoDepol { l: 0.3, m: 0.5, n: 0.7 };
        let (u, s, p) = (0.05, 0.15, 0.3);
        let a = intermediate_ratios(&fam, u, s).unwrap();
        let b = intermediate_ratios(&fam, s, p).unwrap();
        let c = intermediate_ratios(&fam, u, p).unwrap();
        for j in 0..3 {
            assert_close(a.r[j] * b.r[j], c.r[j], 1e-12);
        }
    }

    #[test]
    fn rate_condition_examples() {
        let rates = |g: [f64; 3]| DecayRates {
            gamma: g,
            domain: RateDomain::Parametric,
        };
        assert!(p_div_condition(&rates([1.0, 1.0, -0.5])));
        assert!(!p_div_condition(&rates([1.0, -2.0, 0.5])));
        assert!(p_div_condition(&rates([0.0, 0.0, 0.0])));
        assert!(cp_rate_condition(&rates([1.0, 1.0, 1.0])));
        assert!(!cp_rate_condition(&rates([1.0, 1.0, -0.1])));
    }

    #[test]
    fn cp_rate_condition_fails_after_singularity() {
        let alpha = 0.5;
        let fam = ChannelFamily::IsoDepol { alpha };
        let pm = depol_p_minus(2.0 * alpha);
        let r = rates_at(&fam, pm + 0.01).unwrap();
        assert!(!cp_rate_condition(&r));
    }

    #[test]
    fn report_carries_both_verdicts() {
        // Markovian interval: everything divisible, no singularity caveat
        let markov = ChannelFamily::AnisoDepol { l: 0.0, m: 0.0, n: 0.0 };
        let rep = divisibility_report(&markov, 0.1, 0.5, 1e-3).unwrap();
        assert!(rep.cp_divisible && rep.cp_rate_condition && rep.p_div_condition);
        assert!(!rep.rate_condition_sufficient_only);

        // isotropic interval straddling the singularity: witness says NCP,
        // rates go negative, and the caveat flag is set
        let iso = ChannelFamily::IsoDepol { alpha: 0.5 };
        let pm = depol_p_minus(1.0);
        let rep = divisibility_report(&iso, 0.2, pm + 0.1, 1e-3).unwrap();
        assert!(!rep.cp_divisible);
        assert!(rep.min_choi_eigenvalue < -1e-6);
        assert!(!rep.cp_rate_condition);
        assert!(rep.rate_condition_sufficient_only);

        // early interval before the singularity stays CP
        let rep = divisibility_report(&iso, 0.01, 0.05, 1e-3).unwrap();
        assert!(rep.cp_divisible);
        assert!(rep.cp_rate_condition);
    }

    #[test]
    fn td_collapse_and_revival() {
        let alpha = 0.5;
        let fam = ChannelFamily::IsoDepol { alpha };
        let pm = depol_p_minus(2.0 * alpha);
        let (a, b) = (QubitState::basis0(), QubitState::basis1());
        let rows = td_scan(&fam, &a, &b, &[pm, pm + 0.05]).unwrap();
        assert!(rows[0].1 < 1e-10, "TD at the singularity was {}", rows[0].1);
        assert!(rows[1].1 > 1e-3, "no revival: TD = {}", rows[1].1);
    }

    #[test]
    fn td_monotone_for_markovian_depolarizing() {
        let fam = ChannelFamily::IsoDepol { alpha: 0.0 };
        let grid: Vec<f64> = (0..=75).map(|k| 0.01 * k as f64).collect();
        let rows = td_scan(&fam, &QubitState::basis0(), &QubitState::basis1(), &grid).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].1 <= w[0].1 + 1e-12);
        }
    }

    #[test]
    fn td_continuous_through_the_singularity() {
        let alpha = 0.7;
        let fam = ChannelFamily::IsoDepol { alpha };
        let pm = depol_p_minus(2.0 * alpha);
        let delta = 1e-6;
        let rows = td_scan(
            &fam,
            &QubitState::basis0(),
            &QubitState::basis1(),
            &[pm - delta, pm + delta],
        )
        .unwrap();
        assert!((rows[0].1 - rows[1].1).abs() < 1e-5);
        // and the TD value itself is tiny here: all nu vanish at p⁻
        assert!(rows[0].1 < 1e-5);
        let _ = depol_nu(2.0 * alpha, pm); // root by construction
    }
}
