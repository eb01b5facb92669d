//! Minimal complex linear algebra for 2×2 and 4×4 Hermitian matrices.
//!
//! Provides qubit density matrices, trace distance and trace norm, Choi
//! matrix assembly for Pauli maps, and a cyclic-Jacobi eigensolver for 4×4
//! Hermitian matrices. Everything is fixed-size and dependency-free beyond
//! complex scalars.

use crate::error::{Error, Result};
use crate::tol::Tolerances;
use num_complex::Complex64;

pub type C64 = Complex64;

const ZERO: C64 = Complex64::new(0.0, 0.0);
const ONE: C64 = Complex64::new(1.0, 0.0);

/// A 2×2 complex matrix in row-major form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

/// A 4×4 complex matrix in row-major form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[C64; 4]; 4]);

impl Mat2 {
    pub fn zeros() -> Self {
        Mat2([[ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        m.0[0][0] = ONE;
        m.0[1][1] = ONE;
        m
    }

    pub fn from_real(r: [[f64; 2]; 2]) -> Self {
        let mut m = Self::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = C64::new(r[i][j], 0.0);
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[i][j] - other.0[i][j];
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = ZERO;
                for k in 0..2 {
                    acc += self.0[i][k] * other.0[k][j];
                }
                m.0[i][j] = acc;
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn max_hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                dev = dev.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        dev
    }

    /// Eigenvalues of a Hermitian 2×2 matrix, descending.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let b = self.0[0][1].norm();
        let mid = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        [mid + rad, mid - rad]
    }

    /// Sum of singular values. Equals the sum of |eigenvalues| for
    /// Hermitian input.
    pub fn trace_norm(&self) -> f64 {
        // singular values are the square roots of the eigenvalues of A†A
        let gram = self.adjoint().mul(self);
        let ev = gram.hermitian_eigenvalues();
        ev.iter().map(|&x| x.max(0.0).sqrt()).sum()
    }
}

impl Mat4 {
    pub fn zeros() -> Self {
        Mat4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_diag(d: [f64; 4]) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            m.0[i][i] = C64::new(d[i], 0.0);
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = ZERO;
                for k in 0..4 {
                    acc += self.0[i][k] * other.0[k][j];
                }
                m.0[i][j] = acc;
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn max_hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                dev = dev.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        dev
    }

    fn off_diagonal_norm_sq(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    s += self.0[i][j].norm_sqr();
                }
            }
        }
        s
    }

    /// Eigenvalues of a Hermitian 4×4 matrix by cyclic Jacobi, descending.
    ///
    /// Fails with `NotHermitian` if the input deviates from Hermiticity by
    /// more than 1e-10.
    pub fn hermitian_eigenvalues(&self) -> Result<[f64; 4]> {
        let dev = self.max_hermiticity_deviation();
        if dev > 1e-10 {
            return Err(Error::NotHermitian(dev));
        }
        Ok(jacobi_eigenvalues(self))
    }

    /// Sum of singular values via the eigenvalues of A†A.
    pub fn trace_norm(&self) -> f64 {
        let gram = self.adjoint().mul(self);
        let ev = jacobi_eigenvalues(&gram);
        ev.iter().map(|&x| x.max(0.0).sqrt()).sum()
    }
}

/// Cyclic Jacobi for a (numerically) Hermitian 4×4 matrix.
///
/// Each rotation is a unitary built from the phase of the pivot entry and
/// the classical real rotation angle; the off-diagonal Frobenius norm
/// decreases strictly until it falls below 1e-14 of the matrix scale.
fn jacobi_eigenvalues(m: &Mat4) -> [f64; 4] {
    // symmetrize to kill rounding-level deviations before iterating
    let mut a = Mat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            a.0[i][j] = 0.5 * (m.0[i][j] + m.0[j][i].conj());
        }
    }

    let scale: f64 = (0..4)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .map(|(i, j)| a.0[i][j].norm())
        .fold(0.0, f64::max)
        .max(1.0);
    let target = (1e-14 * scale) * (1e-14 * scale);

    for _sweep in 0..60 {
        if a.off_diagonal_norm_sq() <= target {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a.0[p][q];
                let h = apq.norm();
                if h <= 1e-300 {
                    continue;
                }
                let phase = apq / h;
                let app = a.0[p][p].re;
                let aqq = a.0[q][q].re;
                let tau = (aqq - app) / (2.0 * h);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // U = identity except the (p,q) block [[c, s], [-s·φ*, c·φ*]]
                let mut u = Mat4::identity();
                u.0[p][p] = C64::new(c, 0.0);
                u.0[p][q] = C64::new(s, 0.0);
                u.0[q][p] = -s * phase.conj();
                u.0[q][q] = c * phase.conj();
                a = u.adjoint().mul(&a).mul(&u);
            }
        }
    }

    let mut ev = [a.0[0][0].re, a.0[1][1].re, a.0[2][2].re, a.0[3][3].re];
    ev.sort_by(|x, y| y.partial_cmp(x).unwrap());
    ev
}

/// Eigenvalues of a 4×4 Hermitian matrix, descending. Sum equals the trace.
pub fn hermitian_eigenvalues(m: &Mat4) -> Result<[f64; 4]> {
    m.hermitian_eigenvalues()
}

/// Trace norm ‖A‖₁ = Tr√(A†A) of a 2×2 matrix.
pub fn trace_norm2(m: &Mat2) -> f64 {
    m.trace_norm()
}

/// Trace norm ‖A‖₁ = Tr√(A†A) of a 4×4 matrix.
pub fn trace_norm4(m: &Mat4) -> f64 {
    m.trace_norm()
}

/// A validated qubit density matrix: Hermitian, unit trace, positive
/// semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    m: Mat2,
}

impl QubitState {
    /// Validates and wraps a 2×2 matrix as a density matrix.
    pub fn from_matrix(m: Mat2) -> Result<Self> {
        Self::from_matrix_with(m, &Tolerances::default())
    }

    pub fn from_matrix_with(m: Mat2, tol: &Tolerances) -> Result<Self> {
        let dev = m.max_hermiticity_deviation();
        if dev > tol.hermiticity {
            return Err(Error::InvalidState(format!(
                "hermiticity deviation {dev:.3e}"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > tol.hermiticity || tr.im.abs() > tol.hermiticity {
            return Err(Error::InvalidState(format!("trace = {tr}")));
        }
        let ev = m.hermitian_eigenvalues();
        if ev[1] < -tol.psd {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {:.3e}",
                ev[1]
            )));
        }
        Ok(QubitState { m })
    }

    /// Builds the state (I + r·σ)/2 from a Bloch vector with |r| ≤ 1.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if norm > 1.0 + 1e-12 {
            return Err(Error::InvalidState(format!("Bloch norm {norm} > 1")));
        }
        let mut m = Mat2::zeros();
        m.0[0][0] = C64::new(0.5 * (1.0 + r[2]), 0.0);
        m.0[1][1] = C64::new(0.5 * (1.0 - r[2]), 0.0);
        m.0[0][1] = C64::new(0.5 * r[0], -0.5 * r[1]);
        m.0[1][0] = C64::new(0.5 * r[0], 0.5 * r[1]);
        Ok(QubitState { m })
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    /// Bloch vector r with ρ = (I + r·σ)/2.
    pub fn bloch(&self) -> [f64; 3] {
        let m = &self.m;
        [
            2.0 * m.0[0][1].re,
            -2.0 * m.0[0][1].im,
            m.0[0][0].re - m.0[1][1].re,
        ]
    }

    /// |0⟩⟨0|
    pub fn basis0() -> Self {
        QubitState {
            m: Mat2::from_real([[1.0, 0.0], [0.0, 0.0]]),
        }
    }

    /// |1⟩⟨1|
    pub fn basis1() -> Self {
        QubitState {
            m: Mat2::from_real([[0.0, 0.0], [0.0, 1.0]]),
        }
    }

    /// I/2
    pub fn maximally_mixed() -> Self {
        QubitState {
            m: Mat2::from_real([[0.5, 0.0], [0.0, 0.5]]),
        }
    }
}

/// Trace distance (1/2)‖a − b‖₁ between two qubit states. Lies in [0, 1].
pub fn trace_distance(a: &QubitState, b: &QubitState) -> f64 {
    0.5 * a.m.sub(&b.m).trace_norm()
}

/// A validated Choi matrix of a trace-preserving qubit map, built on the
/// unnormalized Bell projector (trace 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Choi4 {
    m: Mat4,
}

impl Choi4 {
    pub fn from_matrix(m: Mat4) -> Result<Self> {
        let tol = Tolerances::default();
        let dev = m.max_hermiticity_deviation();
        if dev > tol.hermiticity {
            return Err(Error::NotHermitian(dev));
        }
        let tr = m.trace();
        if (tr.re - 2.0).abs() > tol.equality || tr.im.abs() > tol.equality {
            return Err(Error::InvalidState(format!("Choi trace = {tr}, want 2")));
        }
        Ok(Choi4 { m })
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.m
    }

    /// Spectrum, descending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        // Hermitian by construction
        jacobi_eigenvalues(&self.m)
    }
}

/// Choi matrix of the Pauli map with eigenvalue triple ν = (ν₁, ν₂, ν₃).
///
/// The weights κ = (1/4)·H·(1, ν₁, ν₂, ν₃) may be negative for a non-CP
/// triple; the matrix is Hermitian with trace 2 either way, and its spectrum
/// is {2κ₀, 2κ₁, 2κ₂, 2κ₃}.
pub fn choi_from_map_eigenvalues(nu: [f64; 3]) -> Choi4 {
    let k0 = 0.25 * (1.0 + nu[0] + nu[1] + nu[2]);
    let k1 = 0.25 * (1.0 + nu[0] - nu[1] - nu[2]);
    let k2 = 0.25 * (1.0 - nu[0] + nu[1] - nu[2]);
    let k3 = 0.25 * (1.0 - nu[0] - nu[1] + nu[2]);

    let mut m = Mat4::zeros();
    m.0[0][0] = C64::new(k0 + k3, 0.0);
    m.0[3][3] = C64::new(k0 + k3, 0.0);
    m.0[0][3] = C64::new(k0 - k3, 0.0);
    m.0[3][0] = C64::new(k0 - k3, 0.0);
    m.0[1][1] = C64::new(k1 + k2, 0.0);
    m.0[2][2] = C64::new(k1 + k2, 0.0);
    m.0[1][2] = C64::new(k1 - k2, 0.0);
    m.0[2][1] = C64::new(k1 - k2, 0.0);
    Choi4 { m }
}

/// The four Pauli matrices σ₀ = I, σ₁, σ₂, σ₃.
pub fn pauli(j: usize) -> Mat2 {
    let mut m = Mat2::zeros();
    match j {
        0 => {
            m.0[0][0] = ONE;
            m.0[1][1] = ONE;
        }
        1 => {
            m.0[0][1] = ONE;
            m.0[1][0] = ONE;
        }
        2 => {
            m.0[0][1] = C64::new(0.0, -1.0);
            m.0[1][0] = C64::new(0.0, 1.0);
        }
        3 => {
            m.0[0][0] = ONE;
            m.0[1][1] = -ONE;
        }
        _ => panic!("Pauli index {j} out of range"),
    }
    m
}
