//! Cross-module integration properties: the Hadamard pipeline, intermediate
//! maps against explicit Choi assembly, trace-distance continuity, and
//! quadrature stability.

use pauli_nm::channels::{nu_from_kappa, ChannelFamily};
use pauli_nm::divisibility::{intermediate_choi_spectrum, intermediate_ratios, td_scan};
use pauli_nm::generator::{depol_p_minus, rates_at, singularities, singularities_in};
use pauli_nm::measures::{renorm_rate, RenormMode};
use pauli_nm::numeric::adaptive_simpson;
use pauli_nm::qalg::{choi_from_map_eigenvalues, trace_distance, QubitState};
use proptest::prelude::*;

proptest! {
    // closed-form singularities match bracketed bisection for arbitrary
    // parameter triples
    #[test]
    fn closed_form_matches_bisection(
        l in 0.01f64..1.0, m in 0.01f64..1.0, n in 0.01f64..1.0
    ) {
        let fam = ChannelFamily::AnisoDepol { l, m, n };
        let closed: Vec<f64> = singularities(&fam)
            .entries
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.p_minus, s.multiplicity as usize))
            .collect();
        let scanned: Vec<f64> = singularities_in(&fam, 0.0, 0.75)
            .entries
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.p_minus, s.multiplicity as usize))
            .collect();
        prop_assert_eq!(closed.len(), scanned.len());
        for (a, b) in closed.iter().zip(scanned) {
            prop_assert!((a - b).abs() < 1e-10, "{} vs {}", a, b);
        }
    }

    // the intermediate map is a Pauli map with eigenvalues r; its spectrum
    // from the sign-pattern formula matches the Jacobi eigensolve of the
    // explicitly assembled Choi matrix
    #[test]
    fn intermediate_spectrum_matches_choi_assembly(
        l in 0.0f64..1.0, m in 0.0f64..1.0, n in 0.0f64..1.0,
        s_frac in 0.05f64..0.9, p_frac in 0.05f64..0.95,
    ) {
        let fam = ChannelFamily::AnisoDepol { l, m, n };
        let s = 0.74 * s_frac;
        let p = s + (0.74 - s) * p_frac;
        // stay clear of every singularity at s: near-vanishing nu(s) blows
        // the ratios up and turns the absolute comparison meaningless
        let clear = singularities(&fam)
            .positions()
            .iter()
            .all(|q| (s - q).abs() > 1e-3);
        prop_assume!(clear);
        let Ok(ratios) = intermediate_ratios(&fam, s, p) else {
            return Ok(());
        };
        let spec = intermediate_choi_spectrum(&ratios);
        let explicit = choi_from_map_eigenvalues(ratios.r).eigenvalues();
        for j in 0..4 {
            prop_assert!((spec.lambda[j] - explicit[j]).abs() < 1e-10);
        }
        prop_assert!((spec.lambda.iter().sum::<f64>() - 2.0).abs() < 1e-10);
    }

    // evolving through the singular point keeps trace distance continuous
    #[test]
    fn trace_distance_continuous_at_singularity(alpha in 0.05f64..1.0) {
        let fam = ChannelFamily::IsoDepol { alpha };
        let pm = depol_p_minus(2.0 * alpha);
        let delta = 1e-6;
        let a = QubitState::from_bloch([0.6, 0.0, 0.4]).unwrap();
        let b = QubitState::from_bloch([-0.2, 0.5, -0.3]).unwrap();
        let rows = td_scan(&fam, &a, &b, &[pm - delta, pm + delta]).unwrap();
        prop_assert!((rows[0].1 - rows[1].1).abs() < 1e-5);
    }

    // Bloch-vector contraction: the evolved trace distance equals the
    // initial one scaled through the map eigenvalues
    #[test]
    fn td_equals_scaled_bloch_distance(
        alpha in 0.0f64..1.0, p_frac in 0.0f64..1.0,
        ax in -0.5f64..0.5, az in -0.5f64..0.5,
        bx in -0.5f64..0.5, bz in -0.5f64..0.5,
    ) {
        let fam = ChannelFamily::IsoDepol { alpha };
        let p = 0.75 * p_frac;
        let a = QubitState::from_bloch([ax, 0.0, az]).unwrap();
        let b = QubitState::from_bloch([bx, 0.0, bz]).unwrap();
        let td = trace_distance(&fam.act(p, &a).unwrap(), &fam.act(p, &b).unwrap());
        let nu = fam.nu(p).unwrap().nu;
        let dx = nu[0] * (ax - bx);
        let dz = nu[2] * (az - bz);
        let expected = 0.5 * (dx * dx + dz * dz).sqrt();
        prop_assert!((td - expected).abs() < 1e-10);
    }

    // nu computed from the closed form agrees with the Hadamard transform
    // of the Kraus weights for every family member
    #[test]
    fn closed_form_nu_matches_hadamard_pipeline(
        l in 0.0f64..1.0, m in 0.0f64..1.0, n in 0.0f64..1.0, p_frac in 0.0f64..1.0
    ) {
        let fam = ChannelFamily::AnisoDepol { l, m, n };
        let p = 0.75 * p_frac;
        let direct = fam.nu(p).unwrap().nu;
        let via_kappa = nu_from_kappa(&fam.kappa(p).unwrap()).nu;
        for j in 0..3 {
            prop_assert!((direct[j] - via_kappa[j]).abs() < 1e-12);
        }
    }
}

/// Independent Choi assembly for a Bloch-scaling map: expand each basis
/// matrix |i⟩⟨j| in the Pauli basis, scale the components by r, and stack
/// the images into the 4×4 Choi matrix. No Hadamard shortcut involved.
fn choi_by_basis_action(r: [f64; 3]) -> pauli_nm::Mat4 {
    use num_complex::Complex64 as C64;
    use pauli_nm::qalg::{pauli, Mat2, Mat4};
    let sigma: Vec<Mat2> = (0..4).map(pauli).collect();
    let mut chi = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let mut basis = Mat2::zeros();
            basis.0[i][j] = C64::new(1.0, 0.0);
            // Pauli components a_k = tr(sigma_k X)/2
            let mut mapped = Mat2::zeros();
            for (k, s) in sigma.iter().enumerate() {
                let a_k = 0.5 * s.mul(&basis).trace();
                let scale = if k == 0 { 1.0 } else { r[k - 1] };
                for row in 0..2 {
                    for col in 0..2 {
                        mapped.0[row][col] += a_k * scale * s.0[row][col];
                    }
                }
            }
            for row in 0..2 {
                for col in 0..2 {
                    chi.0[2 * row + i][2 * col + j] += mapped.0[row][col];
                }
            }
        }
    }
    chi
}

#[test]
fn intermediate_choi_matches_basis_action_assembly() {
    // checks both a CP interval and the NCP interval before the first
    // singularity; the basis-action route never needs valid Kraus weights
    let fam = ChannelFamily::AnisoDepol { l: 0.2, m: 0.4, n: 0.6 };
    for (s, p) in [(0.05, 0.2), (0.37, 0.39), (0.3, 0.6)] {
        let ratios = intermediate_ratios(&fam, s, p).unwrap();
        let spec = intermediate_choi_spectrum(&ratios);
        let explicit = choi_by_basis_action(ratios.r)
            .hermitian_eigenvalues()
            .unwrap();
        for j in 0..4 {
            assert!(
                (spec.lambda[j] - explicit[j]).abs() < 1e-10,
                "({s}, {p}): {:?} vs {:?}",
                spec.lambda,
                explicit
            );
        }
    }
}

#[test]
fn qenm_volume_agrees_with_grid_integration() {
    // deterministic second opinion: midpoint-rule integration of the QENM
    // indicator over a 140^3 grid, compared against the seeded Monte-Carlo
    // estimate at a few-sigma level plus a grid-bias allowance
    let n = 140usize;
    let mut hits = 0u64;
    for a in 0..n {
        let l = (a as f64 + 0.5) / n as f64;
        for b in 0..n {
            let m = (b as f64 + 0.5) / n as f64;
            for c in 0..n {
                let nn = (c as f64 + 0.5) / n as f64;
                if pauli_nm::qenm::classify(l, m, nn).unwrap().is_qenm {
                    hits += 1;
                }
            }
        }
    }
    let grid_estimate = hits as f64 / (n * n * n) as f64;
    let mc = pauli_nm::qenm::qenm_volume(1_000_000, 42);
    assert!(
        (grid_estimate - mc.estimate).abs() < 4.0 * mc.standard_error + 2e-3,
        "grid {} vs monte-carlo {}",
        grid_estimate,
        mc.estimate
    );
    assert!((0.950..=0.960).contains(&grid_estimate));
}

#[test]
fn sss_fixed_deviation_stable_under_panel_doubling() {
    // replicate the fixed-mode semigroup deviation integral with the public
    // pieces and check quadrature stability when the panel count doubles
    let fam = ChannelFamily::IsoDepol { alpha: 0.6 };
    let pm = depol_p_minus(1.2);
    let gstar = renorm_rate(0.25, RenormMode::Signed);
    let f = |p: f64| {
        let g = rates_at(&fam, p).unwrap().gamma[0] * (0.75 - p);
        (renorm_rate(g, RenormMode::Signed) - gstar).abs()
    };
    let eps = 1e-9;
    let integrate = |panels: usize| {
        let (a, _) = adaptive_simpson(&f, eps, pm - eps, 1e-11, panels);
        let (b, _) = adaptive_simpson(&f, pm + eps, 0.75 - eps, 1e-11, panels);
        a + b
    };
    let coarse = integrate(64);
    let fine = integrate(128);
    assert!(
        (coarse - fine).abs() < 1e-8,
        "quadrature drift: {coarse} vs {fine}"
    );
}

#[test]
fn appendix_family_pipeline_consistency() {
    // the `AppendixDephasing` closed-form physical-time rate matches the
    // Hadamard-pipeline rate composed with its parametrization
    let (alpha, c) = (0.6, 1.3);
    let fam = ChannelFamily::AppendixDephasing { alpha, c };
    for k in 1..40 {
        let t = 0.1 * k as f64;
        let p = pauli_nm::channels::dephasing_p_of_t(t, c);
        if p >= 0.5 {
            break;
        }
        let Ok(parametric) = rates_at(&fam, p) else {
            continue;
        };
        let p_dot = 0.5 * c * (-c * t).exp();
        let physical = parametric.gamma[2] * p_dot;
        match pauli_nm::channels::appendix_rate_t(alpha, c, t) {
            Ok(closed_form) => {
                assert!(
                    (closed_form - physical).abs() < 1e-10 * closed_form.abs().max(1.0),
                    "mismatch at t = {t}: {closed_form} vs {physical}"
                );
            }
            Err(_) => continue,
        }
    }
}
