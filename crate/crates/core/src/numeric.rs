//! Scalar numerics shared across modules: bracketed bisection, adaptive
//! Simpson quadrature, golden-section minimization, and the weighted median.

/// Bisection on a bracketing interval [lo, hi] with f(lo)·f(hi) ≤ 0.
///
/// Returns the midpoint of the final interval once its width falls below
/// `tol`. The function is assumed continuous on the bracket.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    let fhi = f(hi);
    debug_assert!(flo * fhi <= 0.0, "bisect called without a sign change");
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    0.5 * (lo + hi)
}

/// Scans [lo, hi] with the given step, bisecting every bracket where f
/// changes sign. Roots are refined to `tol` and returned in ascending order.
pub fn scan_roots<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, step: f64, tol: f64) -> Vec<f64> {
    let mut roots = Vec::new();
    if hi <= lo {
        return roots;
    }
    let n = ((hi - lo) / step).ceil() as usize;
    let mut prev_x = lo;
    let mut prev_f = f(lo);
    for k in 1..=n {
        let x = (lo + k as f64 * step).min(hi);
        let fx = f(x);
        if prev_f == 0.0 {
            roots.push(prev_x);
        } else if prev_f * fx < 0.0 {
            roots.push(bisect(&f, prev_x, x, tol));
        }
        prev_x = x;
        prev_f = fx;
        if x >= hi {
            break;
        }
    }
    if prev_f == 0.0 {
        roots.push(prev_x);
    }
    roots
}

/// Adaptive Simpson integration of f over [a, b].
///
/// The interval is first split into `initial_panels` equal panels, each of
/// which is refined recursively until the local Richardson error estimate
/// falls below its share of `tol`. Returns the integral value and the
/// number of integrand evaluations.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    initial_panels: usize,
) -> (f64, usize) {
    if b <= a {
        return (0.0, 0);
    }
    let panels = initial_panels.max(1);
    let mut total = 0.0;
    let mut evals = 0usize;
    let h = (b - a) / panels as f64;
    for k in 0..panels {
        let lo = a + k as f64 * h;
        let hi = if k + 1 == panels { b } else { lo + h };
        let flo = f(lo);
        let fmid = f(0.5 * (lo + hi));
        let fhi = f(hi);
        evals += 3;
        let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        let (v, e) = simpson_refine(
            f,
            lo,
            hi,
            flo,
            fmid,
            fhi,
            whole,
            tol / panels as f64,
            50,
        );
        total += v;
        evals += e;
    }
    (total, evals)
}

#[allow(clippy::too_many_arguments)]
fn simpson_refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> (f64, usize) {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return (left + right + delta / 15.0, 2);
    }
    let (lv, le) = simpson_refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1);
    let (rv, re) = simpson_refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    (lv + rv, le + re + 2)
}

/// Golden-section minimization of a convex function on [lo, hi].
///
/// Returns the abscissa of the minimum to within `tol`.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Weighted median of `values`: the smallest value v such that the weight
/// of {vᵢ ≤ v} reaches half the total. Exact minimizer of
/// Σ wᵢ·|vᵢ − g| over g.
///
/// Panics if the slices have different lengths or the total weight is not
/// positive.
pub fn weighted_median(values: &[f64], weights: &[f64]) -> f64 {
    assert_eq!(values.len(), weights.len());
    assert!(!values.is_empty());
    let total: f64 = weights.iter().sum();
    assert!(total > 0.0);
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
    let mut acc = 0.0;
    for &i in &order {
        acc += weights[i];
        if acc >= 0.5 * total {
            return values[i];
        }
    }
    values[*order.last().unwrap()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-13);
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn scan_roots_finds_all_cos_zeros() {
        let roots = scan_roots(|x| x.cos(), 0.0, 10.0, 1e-3, 1e-12);
        let expected: Vec<f64> = (0..3)
            .map(|k| std::f64::consts::FRAC_PI_2 + k as f64 * std::f64::consts::PI)
            .collect();
        assert_eq!(roots.len(), expected.len());
        for (r, e) in roots.iter().zip(expected) {
            assert!((r - e).abs() < 1e-11);
        }
    }

    #[test]
    fn simpson_integrates_polynomial_exactly() {
        // ∫₀¹ x³ dx = 1/4; Simpson is exact for cubics
        let (v, _) = adaptive_simpson(&|x: f64| x * x * x, 0.0, 1.0, 1e-12, 4);
        assert!((v - 0.25).abs() < 1e-14);
    }

    #[test]
    fn simpson_handles_kinks() {
        // ∫₀¹ |x − 1/3| dx = (1/3)²/2 + (2/3)²/2 = 5/18
        let (v, _) = adaptive_simpson(&|x: f64| (x - 1.0 / 3.0).abs(), 0.0, 1.0, 1e-11, 8);
        assert!((v - 5.0 / 18.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn simpson_value_stable_under_panel_doubling() {
        let f = |x: f64| (1.0 / (x + 0.01)).tanh();
        let (v1, _) = adaptive_simpson(&f, 0.0, 1.0, 1e-11, 16);
        let (v2, _) = adaptive_simpson(&f, 0.0, 1.0, 1e-11, 32);
        assert!((v1 - v2).abs() < 1e-9);
    }

    #[test]
    fn golden_min_quadratic() {
        let x = golden_min(|x| (x - 0.37).powi(2), -1.0, 2.0, 1e-10);
        assert!((x - 0.37).abs() < 1e-8);
    }

    #[test]
    fn golden_min_v_shape() {
        let x = golden_min(|x| (x + 0.25).abs(), -1.0, 1.0, 1e-10);
        assert!((x + 0.25).abs() < 1e-9);
    }

    #[test]
    fn weighted_median_small_cases() {
        assert_eq!(weighted_median(&[3.0, 1.0, 2.0], &[1.0, 1.0, 1.0]), 2.0);
        // heavy weight drags the median
        assert_eq!(weighted_median(&[1.0, 2.0, 3.0], &[10.0, 1.0, 1.0]), 1.0);
    }

    #[test]
    fn weighted_median_minimizes_l1() {
        let values = [0.3, -1.2, 0.8, 2.4, -0.5, 0.0, 1.1];
        let weights = [0.2, 1.0, 0.7, 0.1, 0.4, 0.9, 0.3];
        let med = weighted_median(&values, &weights);
        let cost = |g: f64| -> f64 {
            values
                .iter()
                .zip(weights)
                .map(|(v, w)| w * (v - g).abs())
                .sum()
        };
        let best = cost(med);
        for k in 0..200 {
            let g = -2.0 + 5.0 * k as f64 / 199.0;
            assert!(best <= cost(g) + 1e-12, "median beaten at g = {g}");
        }
    }
}
