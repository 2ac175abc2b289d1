// SPDX-License-Identifier: Apache-2.0

//! Small dense complex matrices for two-qubit work.
//!
//! Everything here is sized for 2×2, 3×3 and 4×4 problems. Arithmetic
//! (`+`, `-`, `*`, adjoint, trace) is generic over shape; the eigensolver,
//! Kronecker product and partial operations check their input sizes.
//!
//! Basis convention for one qubit: index 0 is the excited state |e⟩ and
//! index 1 the ground state |g⟩, so σ_z = diag(1, −1). Two-qubit indices
//! follow |e⟩|e⟩, |e⟩|g⟩, |g⟩|e⟩, |g⟩|g⟩ with atom A as the high-order
//! factor.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = Complex64::new(0.0, 0.0);
pub const ONE: C64 = Complex64::new(1.0, 0.0);
pub const I: C64 = Complex64::new(0.0, 1.0);

/// Default tolerance for the Hermiticity pre-check.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Maximum number of cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Off-diagonal Frobenius norm, relative to the matrix norm, at which Jacobi stops.
pub const JACOBI_THRESHOLD: f64 = 1e-13;

/// Which qubit of the pair an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::SizeMismatch {
                expected: "entries.len() == rows * cols",
                rows,
                cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Square matrix with real diagonal `d`.
    pub fn from_diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    /// Square real matrix from rows.
    pub fn from_real<const N: usize>(rows: [[f64; N]; N]) -> Self {
        Self::from_fn(N, N, |i, j| C64::new(rows[i][j], 0.0))
    }

    /// Rank-one projector |ψ⟩⟨ψ| (no normalization applied).
    pub fn outer(psi: &[C64]) -> Self {
        let n = psi.len();
        Self::from_fn(n, n, |i, j| psi[i] * psi[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, k: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * k).collect(),
        }
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.scale(C64::new(k, 0.0))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `m - m†`.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// (m + m†)/2.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    /// Conjugation `u · self · u†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Single-qubit operators in the (|e⟩, |g⟩) basis.
pub mod pauli {
    use super::{ComplexMatrix, C64, I, ONE, ZERO};

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_vec(2, 2, vec![ZERO, ONE, ONE, ZERO]).unwrap()
    }

    pub fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::from_vec(2, 2, vec![ZERO, -I, I, ZERO]).unwrap()
    }

    pub fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::from_diag(&[1.0, -1.0])
    }

    /// σ_k for k = 1, 2, 3.
    pub fn sigma(k: usize) -> ComplexMatrix {
        match k {
            1 => sigma_x(),
            2 => sigma_y(),
            3 => sigma_z(),
            _ => panic!("Pauli index must be 1, 2 or 3, got {k}"),
        }
    }

    /// Raising operator |e⟩⟨g|.
    pub fn sigma_plus() -> ComplexMatrix {
        ComplexMatrix::from_vec(2, 2, vec![ZERO, ONE, ZERO, ZERO]).unwrap()
    }

    /// Lowering operator |g⟩⟨e|.
    pub fn sigma_minus() -> ComplexMatrix {
        ComplexMatrix::from_vec(2, 2, vec![ZERO, ZERO, ONE, ZERO]).unwrap()
    }

    /// Projector onto the ground state.
    pub fn ground_projector() -> ComplexMatrix {
        ComplexMatrix::from_diag(&[0.0, 1.0])
    }

    /// (I + n·σ)/2 for a real 3-vector `n`.
    pub fn bloch_projector(n: [f64; 3], sign: f64) -> ComplexMatrix {
        let h = 0.5 * sign;
        ComplexMatrix::from_vec(
            2,
            2,
            vec![
                C64::new(0.5 + h * n[2], 0.0),
                C64::new(h * n[0], -h * n[1]),
                C64::new(h * n[0], h * n[1]),
                C64::new(0.5 - h * n[2], 0.0),
            ],
        )
        .unwrap()
    }
}

fn require_shape(m: &ComplexMatrix, n: usize, expected: &'static str) -> Result<()> {
    if m.rows != n || m.cols != n {
        return Err(Error::SizeMismatch {
            expected,
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(())
}

/// Kronecker product of two 2×2 matrices, `a` acting on the high-order factor.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_shape(a, 2, "2x2")?;
    require_shape(b, 2, "2x2")?;
    Ok(ComplexMatrix::from_fn(4, 4, |i, j| {
        a[(i / 2, j / 2)] * b[(i % 2, j % 2)]
    }))
}

/// Trace over `subsystem` of a 4×4 matrix; returns the 2×2 reduced matrix of the other qubit.
pub fn partial_trace(m: &ComplexMatrix, subsystem: Subsystem) -> Result<ComplexMatrix> {
    require_shape(m, 4, "4x4")?;
    Ok(match subsystem {
        Subsystem::A => ComplexMatrix::from_fn(2, 2, |i, j| m[(i, j)] + m[(2 + i, 2 + j)]),
        Subsystem::B => {
            ComplexMatrix::from_fn(2, 2, |i, j| m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)])
        }
    })
}

/// Transpose on the named factor of a 4×4 matrix.
pub fn partial_transpose(m: &ComplexMatrix, subsystem: Subsystem) -> Result<ComplexMatrix> {
    require_shape(m, 4, "4x4")?;
    Ok(ComplexMatrix::from_fn(4, 4, |i, j| {
        let (ia, ib, ja, jb) = (i / 2, i % 2, j / 2, j % 2);
        match subsystem {
            Subsystem::A => m[(2 * ja + ib, 2 * ia + jb)],
            Subsystem::B => m[(2 * ia + jb, 2 * ja + ib)],
        }
    }))
}

/// Eigenvalues of a Hermitian 2×2, 3×3 or 4×4 matrix, in ascending order.
///
/// The input is Hermiticity-checked against `tol`, symmetrized, and then
/// diagonalized by cyclic complex Jacobi rotations.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    if !m.is_square() || !(2..=4).contains(&m.rows) {
        return Err(Error::SizeMismatch {
            expected: "square 2x2, 3x3 or 4x4",
            rows: m.rows,
            cols: m.cols,
        });
    }
    let deviation = m.hermitian_deviation();
    if !(deviation <= tol) {
        return Err(Error::NonHermitianInput { deviation });
    }
    let mut vals = jacobi_hermitian(m.hermitian_part())?;
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi_hermitian(mut a: ComplexMatrix) -> Result<Vec<f64>> {
    let n = a.rows;
    let scale = a.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = JACOBI_THRESHOLD * scale;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
    }
    Ok((0..n).map(|i| a[(i, i)].re).collect())
}

/// One Jacobi rotation A ← G† A G annihilating the (p, q) entry.
///
/// G is the real rotation of the phase-stripped 2×2 block, composed with the
/// diagonal phase that makes a_pq real.
fn rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let h = a[(p, q)];
    let habs = h.norm();
    if habs == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    if habs <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = h / habs;
    let theta = (aqq - app) / (2.0 * habs);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G columns: col p = (c e_p − s·conj(phase) e_q), col q = (s e_p + c·conj(phase) e_q).
    let gpp = C64::new(c, 0.0);
    let gpq = C64::new(s, 0.0);
    let gqp = -phase.conj() * s;
    let gqq = phase.conj() * c;

    let n = a.rows;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * gpp + akq * gqp;
        a[(k, q)] = akp * gpq + akq * gqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
        a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

/// Trace norm tr|m| of a Hermitian matrix.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m, HERMITIAN_TOL)?
        .iter()
        .map(|x| x.abs())
        .sum())
}

/// Squared Hilbert–Schmidt norm tr(m m†).
pub fn hs_norm_sq(m: &ComplexMatrix) -> f64 {
    m.data.iter().map(|z| z.norm_sqr()).sum()
}

/// Largest eigenvalue of a real symmetric 3×3 matrix.
pub fn symmetric3_max_eigenvalue(m: &[[f64; 3]; 3]) -> Result<f64> {
    let cm = ComplexMatrix::from_real(*m);
    let vals = hermitian_eigenvalues(&cm, HERMITIAN_TOL)?;
    Ok(vals[2])
}

#[cfg(test)]
mod tests {
    use super::pauli::*;
    use super::*;

    fn bell_phi_plus() -> ComplexMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::outer(&[C64::new(h, 0.0), ZERO, ZERO, C64::new(h, 0.0)])
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn identity_spectrum() {
        let v = hermitian_eigenvalues(&ComplexMatrix::identity(4), HERMITIAN_TOL).unwrap();
        assert_close(&v, &[1.0; 4], 1e-15);
    }

    #[test]
    fn sigma_x_spectrum() {
        let v = hermitian_eigenvalues(&sigma_x(), HERMITIAN_TOL).unwrap();
        assert_close(&v, &[-1.0, 1.0], 1e-15);
        let v = hermitian_eigenvalues(&sigma_y(), HERMITIAN_TOL).unwrap();
        assert_close(&v, &[-1.0, 1.0], 1e-15);
    }

    #[test]
    fn rejects_non_hermitian_and_bad_sizes() {
        let m = sigma_plus();
        assert!(matches!(
            hermitian_eigenvalues(&m, HERMITIAN_TOL),
            Err(Error::NonHermitianInput { .. })
        ));
        assert!(matches!(
            hermitian_eigenvalues(&ComplexMatrix::identity(5), HERMITIAN_TOL),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(matches!(
            kron(&ComplexMatrix::identity(3), &sigma_x()),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(partial_trace(&ComplexMatrix::identity(2), Subsystem::A).is_err());
        assert!(partial_transpose(&ComplexMatrix::identity(3), Subsystem::B).is_err());
    }

    #[test]
    fn small_asymmetry_is_symmetrized() {
        let mut m = sigma_x();
        m[(0, 1)] += C64::new(1e-12, 0.0);
        let v = hermitian_eigenvalues(&m, HERMITIAN_TOL).unwrap();
        assert_close(&v, &[-1.0, 1.0], 1e-11);
    }

    #[test]
    fn trace_norm_examples() {
        assert_eq!(trace_norm(&ComplexMatrix::zeros(4, 4)).unwrap(), 0.0);
        let d = ComplexMatrix::from_diag(&[0.5, -0.5, 0.0, 0.0]);
        assert!((trace_norm(&d).unwrap() - 1.0).abs() < 1e-15);
        let pt = partial_transpose(&bell_phi_plus(), Subsystem::B).unwrap();
        assert!((trace_norm(&pt).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn hs_norm_examples() {
        assert_eq!(hs_norm_sq(&ComplexMatrix::identity(4)), 4.0);
        let mut m = ComplexMatrix::zeros(3, 3);
        m[(1, 2)] = C64::new(0.0, 3.0);
        assert_eq!(hs_norm_sq(&m), 9.0);
    }

    #[test]
    fn kron_ordering() {
        let ii = kron(&identity(), &identity()).unwrap();
        assert_eq!(ii, ComplexMatrix::identity(4));
        let zi = kron(&sigma_z(), &identity()).unwrap();
        assert_eq!(zi, ComplexMatrix::from_diag(&[1.0, 1.0, -1.0, -1.0]));
        let iz = kron(&identity(), &sigma_z()).unwrap();
        assert_eq!(iz, ComplexMatrix::from_diag(&[1.0, -1.0, 1.0, -1.0]));
    }

    #[test]
    fn sigma_x_sigma_x_on_x_state() {
        // Expanding tr(ρ σx⊗σx) symbolically for an X-state leaves ρ14+ρ41+ρ23+ρ32.
        let (r14, r23) = (0.11, 0.07);
        let mut rho = ComplexMatrix::from_diag(&[0.3, 0.2, 0.25, 0.25]);
        rho[(0, 3)] = C64::new(r14, 0.0);
        rho[(3, 0)] = C64::new(r14, 0.0);
        rho[(1, 2)] = C64::new(r23, 0.0);
        rho[(2, 1)] = C64::new(r23, 0.0);
        let xx = kron(&sigma_x(), &sigma_x()).unwrap();
        let t11 = (&rho * &xx).trace().re;
        assert!((t11 - 2.0 * (r23 + r14)).abs() < 1e-15);
    }

    #[test]
    fn partial_trace_examples() {
        let p = ComplexMatrix::from_real([[0.7, 0.2], [0.2, 0.3]]);
        let q = ComplexMatrix::from_fn(2, 2, |i, j| {
            C64::new((i + 2 * j) as f64, i as f64 - j as f64)
        });
        let pq = kron(&p, &q).unwrap();
        let tr_b = partial_trace(&pq, Subsystem::B).unwrap();
        assert!(tr_b.max_abs_diff(&p.scale(q.trace())) < 1e-15);
        let tr_a = partial_trace(&pq, Subsystem::A).unwrap();
        assert!(tr_a.max_abs_diff(&q.scale(p.trace())) < 1e-15);

        // Index-summation oracle: tr_A keeps ρ_B[i][j] = Σ_a ρ[(a,i),(a,j)].
        let m = ComplexMatrix::from_fn(4, 4, |i, j| C64::new((i * 4 + j) as f64, (j as f64) - 1.0));
        let tr_a = partial_trace(&m, Subsystem::A).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expect: C64 = (0..2).map(|a| m[(2 * a + i, 2 * a + j)]).sum();
                assert_eq!(tr_a[(i, j)], expect);
            }
        }
        assert_eq!(tr_a.trace(), m.trace());
    }

    #[test]
    fn partial_transpose_examples() {
        let d = ComplexMatrix::from_diag(&[0.1, 0.2, 0.3, 0.4]);
        assert_eq!(partial_transpose(&d, Subsystem::A).unwrap(), d);
        let bell = bell_phi_plus();
        let v =
            hermitian_eigenvalues(&partial_transpose(&bell, Subsystem::B).unwrap(), 1e-10).unwrap();
        assert_close(&v, &[-0.5, 0.5, 0.5, 0.5], 1e-14);
        // Transposing both factors is the full transpose.
        let m = ComplexMatrix::from_fn(4, 4, |i, j| C64::new(i as f64, j as f64 * 0.5));
        let both =
            partial_transpose(&partial_transpose(&m, Subsystem::A).unwrap(), Subsystem::B).unwrap();
        assert_eq!(both, m.transpose());
    }
}
