// SPDX-License-Identifier: Apache-2.0

//! Two-qubit states: validated density matrices, the real non-negative
//! X-state parameterization, Bloch decomposition, seeded random sampling,
//! and the plain-text state file format.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{self, kron, pauli, ComplexMatrix, C64};

/// Tolerance used by [`DensityMatrix::validate`].
pub const STATE_TOL: f64 = 1e-10;
/// Default tolerance for [`to_x_state`].
pub const X_SHAPE_TOL: f64 = 1e-10;
const X_PARAM_SLACK: f64 = 1e-12;

/// A validated 4×4 two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates with the default tolerance of 1e-10.
    pub fn validate(m: ComplexMatrix) -> Result<Self> {
        Self::validate_with_tol(m, STATE_TOL)
    }

    /// Checks Hermiticity, unit trace and positivity, each against `tol`,
    /// and returns the symmetrized matrix.
    pub fn validate_with_tol(m: ComplexMatrix, tol: f64) -> Result<Self> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::SizeMismatch {
                expected: "4x4",
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let deviation = m.hermitian_deviation();
        if !(deviation <= tol) {
            return Err(Error::NotHermitian { deviation });
        }
        let m = m.hermitian_part();
        let trace = m.trace().re;
        if !((trace - 1.0).abs() <= tol) {
            return Err(Error::TraceNotOne { trace });
        }
        let eig = linalg::hermitian_eigenvalues(&m, tol)?;
        if !(eig[0] >= -tol) {
            return Err(Error::NotPositive {
                min_eigenvalue: eig[0],
            });
        }
        Ok(Self { m })
    }

    /// Wraps a matrix the caller already knows to be a state.
    pub(crate) fn from_trusted(m: ComplexMatrix) -> Self {
        debug_assert!(m.rows() == 4 && m.cols() == 4);
        Self { m }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.m
    }

    pub fn maximally_mixed() -> Self {
        Self::from_trusted(ComplexMatrix::identity(4).scale_real(0.25))
    }

    /// Product state `a ⊗ b` of two single-qubit density matrices.
    pub fn product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Self> {
        Self::validate(kron(a, b)?)
    }

    /// (|ee⟩ + |gg⟩)/√2.
    pub fn bell_phi_plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = C64::new(0.0, 0.0);
        Self::from_trusted(ComplexMatrix::outer(&[
            C64::new(h, 0.0),
            z,
            z,
            C64::new(h, 0.0),
        ]))
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.m, STATE_TOL).expect("validated state is Hermitian")
    }

    /// Trace distance ½‖ρ − σ‖₁.
    pub fn trace_distance(&self, other: &Self) -> f64 {
        0.5 * linalg::trace_norm(&(&self.m - &other.m)).expect("difference of states is Hermitian")
    }
}

/// Real non-negative X-shaped state: populations on the diagonal, coherences ρ₁₄ and ρ₂₃.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    pub r11: f64,
    pub r22: f64,
    pub r33: f64,
    pub r44: f64,
    pub r14: f64,
    pub r23: f64,
}

impl XState {
    pub fn new(r11: f64, r22: f64, r33: f64, r44: f64, r14: f64, r23: f64) -> Result<Self> {
        let x = Self {
            r11,
            r22,
            r33,
            r44,
            r14,
            r23,
        };
        x.check()?;
        Ok(x)
    }

    fn check(&self) -> Result<()> {
        let fields = [
            ("r11", self.r11),
            ("r22", self.r22),
            ("r33", self.r33),
            ("r44", self.r44),
            ("r14", self.r14),
            ("r23", self.r23),
        ];
        for (name, v) in fields {
            if !(v >= 0.0) {
                return Err(Error::InvalidXState {
                    reason: format!("{name} = {v} must be non-negative"),
                });
            }
        }
        let sum = self.r11 + self.r22 + self.r33 + self.r44;
        if (sum - 1.0).abs() > X_PARAM_SLACK {
            return Err(Error::InvalidXState {
                reason: format!("populations sum to {sum}"),
            });
        }
        if self.r14 * self.r14 > self.r11 * self.r44 + X_PARAM_SLACK {
            return Err(Error::InvalidXState {
                reason: format!(
                    "r14² = {} exceeds r11·r44 = {}",
                    self.r14 * self.r14,
                    self.r11 * self.r44
                ),
            });
        }
        if self.r23 * self.r23 > self.r22 * self.r33 + X_PARAM_SLACK {
            return Err(Error::InvalidXState {
                reason: format!(
                    "r23² = {} exceeds r22·r33 = {}",
                    self.r23 * self.r23,
                    self.r22 * self.r33
                ),
            });
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::from_diag(&[self.r11, self.r22, self.r33, self.r44]);
        m[(0, 3)] = C64::new(self.r14, 0.0);
        m[(3, 0)] = C64::new(self.r14, 0.0);
        m[(1, 2)] = C64::new(self.r23, 0.0);
        m[(2, 1)] = C64::new(self.r23, 0.0);
        m
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_trusted(self.to_matrix())
    }
}

/// Shorthand for [`XState::to_density`].
pub fn from_x_state(x: &XState) -> DensityMatrix {
    x.to_density()
}

const X_SUPPORT: [(usize, usize); 8] = [
    (0, 0),
    (1, 1),
    (2, 2),
    (3, 3),
    (0, 3),
    (3, 0),
    (1, 2),
    (2, 1),
];

/// Reads the X-state parameters off a density matrix.
///
/// Every non-X entry must have modulus ≤ `tol`; the coherences ρ₁₄ and ρ₂₃
/// must be real (|Im| ≤ `tol`) and non-negative (Re ≥ −`tol`).
pub fn to_x_state(rho: &DensityMatrix, tol: f64) -> Result<XState> {
    let m = rho.matrix();
    let mut offending = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if X_SUPPORT.contains(&(i, j)) {
                continue;
            }
            let v = m[(i, j)].norm();
            if v > tol {
                offending.push((i + 1, j + 1, v));
            }
        }
    }
    for (i, j) in [(0, 3), (1, 2)] {
        let z = m[(i, j)];
        if z.im.abs() > tol || z.re < -tol {
            offending.push((i + 1, j + 1, z.norm()));
        }
    }
    if !offending.is_empty() {
        return Err(Error::NotXShaped { entries: offending });
    }
    let d = |i: usize| m[(i, i)].re;
    Ok(XState {
        r11: d(0),
        r22: d(1),
        r33: d(2),
        r44: d(3),
        r14: m[(0, 3)].re.max(0.0),
        r23: m[(1, 2)].re.max(0.0),
    })
}

/// Local Bloch vectors and correlation matrix of a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDecomposition {
    /// x_k = tr(ρ σ_k ⊗ I)
    pub x_vec: [f64; 3],
    /// y_k = tr(ρ I ⊗ σ_k)
    pub y_vec: [f64; 3],
    /// T_jk = tr(ρ σ_j ⊗ σ_k)
    pub corr: [[f64; 3]; 3],
}

impl BlochDecomposition {
    /// ¼(I⊗I + Σ x_k σ_k⊗I + Σ y_k I⊗σ_k + Σ T_jk σ_j⊗σ_k)
    pub fn reconstruct(&self) -> ComplexMatrix {
        let id = pauli::identity();
        let mut m = ComplexMatrix::identity(4);
        for k in 0..3 {
            let s = pauli::sigma(k + 1);
            m = &m + &kron(&s, &id).unwrap().scale_real(self.x_vec[k]);
            m = &m + &kron(&id, &s).unwrap().scale_real(self.y_vec[k]);
            for l in 0..3 {
                let t = kron(&s, &pauli::sigma(l + 1)).unwrap();
                m = &m + &t.scale_real(self.corr[k][l]);
            }
        }
        m.scale_real(0.25)
    }
}

pub fn bloch(rho: &DensityMatrix) -> BlochDecomposition {
    let id = pauli::identity();
    let m = rho.matrix();
    let expect = |op: &ComplexMatrix| (m * op).trace().re;
    let mut x_vec = [0.0; 3];
    let mut y_vec = [0.0; 3];
    let mut corr = [[0.0; 3]; 3];
    for k in 0..3 {
        let s = pauli::sigma(k + 1);
        x_vec[k] = expect(&kron(&s, &id).unwrap());
        y_vec[k] = expect(&kron(&id, &s).unwrap());
        for (l, c) in corr[k].iter_mut().enumerate() {
            *c = expect(&kron(&s, &pauli::sigma(l + 1)).unwrap());
        }
    }
    BlochDecomposition { x_vec, y_vec, corr }
}

/// Families available to [`sample_random_state`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomFamily {
    /// G·G†/tr(G·G†) with complex Gaussian G.
    FullRank,
    /// Maximally mixed marginals, diagonal correlation matrix.
    BellDiagonal,
    /// Real non-negative X-state.
    XShaped,
}

/// Deterministic random state for the given seed and family.
pub fn sample_random_state(seed: u64, family: RandomFamily) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match family {
        RandomFamily::FullRank => sample_full_rank(&mut rng),
        RandomFamily::BellDiagonal => sample_bell_diagonal(&mut rng),
        RandomFamily::XShaped => sample_x_state(&mut rng).to_density(),
    }
}

fn sample_full_rank(rng: &mut ChaCha8Rng) -> DensityMatrix {
    loop {
        let g = ComplexMatrix::from_fn(4, 4, |_, _| {
            C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let gg = &g * &g.adjoint();
        let tr = gg.trace().re;
        let rho = gg.scale_real(1.0 / tr).hermitian_part();
        // Rank deficiency has probability zero; resample if rounding says otherwise.
        if let Ok(r) = DensityMatrix::validate(rho) {
            if r.eigenvalues()[0] > 0.0 {
                return r;
            }
        }
    }
}

/// Bell-diagonal state ¼(I + Σ c_k σ_k⊗σ_k) with its four Bell-basis weights.
pub fn bell_diagonal(c: [f64; 3]) -> ComplexMatrix {
    let [c1, c2, c3] = c;
    let mut m = ComplexMatrix::from_diag(&[
        0.25 * (1.0 + c3),
        0.25 * (1.0 - c3),
        0.25 * (1.0 - c3),
        0.25 * (1.0 + c3),
    ]);
    let a = C64::new(0.25 * (c1 - c2), 0.0);
    let b = C64::new(0.25 * (c1 + c2), 0.0);
    m[(0, 3)] = a;
    m[(3, 0)] = a;
    m[(1, 2)] = b;
    m[(2, 1)] = b;
    m
}

fn sample_bell_diagonal(rng: &mut ChaCha8Rng) -> DensityMatrix {
    loop {
        let c = [
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
        ];
        if let Ok(r) = DensityMatrix::validate(bell_diagonal(c)) {
            return r;
        }
    }
}

fn sample_x_state(rng: &mut ChaCha8Rng) -> XState {
    // Uniform point on the probability simplex via sorted uniforms.
    let mut cuts = [
        rng.random::<f64>(),
        rng.random::<f64>(),
        rng.random::<f64>(),
    ];
    cuts.sort_by(f64::total_cmp);
    let r11 = cuts[0];
    let r22 = cuts[1] - cuts[0];
    let r33 = cuts[2] - cuts[1];
    let r44 = 1.0 - cuts[2];
    let r14 = rng.random::<f64>() * (r11 * r44).sqrt();
    let r23 = rng.random::<f64>() * (r22 * r33).sqrt();
    XState {
        r11,
        r22,
        r33,
        r44,
        r14,
        r23,
    }
}

/// Parses the 16-line `re,im` state format. `#` starts a comment; blank lines are skipped.
pub fn parse_state_file(text: &str) -> Result<ComplexMatrix> {
    let mut entries = Vec::with_capacity(16);
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let (re, im) = line.split_once(',').ok_or_else(|| Error::Parse {
            line: lineno,
            message: format!("expected `re,im`, got `{line}`"),
        })?;
        let parse = |s: &str| {
            s.trim().parse::<f64>().map_err(|e| Error::Parse {
                line: lineno,
                message: format!("bad number `{}`: {e}", s.trim()),
            })
        };
        let z = C64::new(parse(re)?, parse(im)?);
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Parse {
                line: lineno,
                message: "non-finite entry".into(),
            });
        }
        entries.push(z);
        if entries.len() > 16 {
            return Err(Error::Parse {
                line: lineno,
                message: "more than 16 entries".into(),
            });
        }
    }
    if entries.len() != 16 {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: format!("expected 16 entries, found {}", entries.len()),
        });
    }
    ComplexMatrix::from_vec(4, 4, entries)
}

/// Writes a 4×4 matrix in the state file format with 17 significant digits.
pub fn write_state_file(m: &ComplexMatrix, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    for z in m.entries() {
        let _ = writeln!(out, "{:.16e},{:.16e}", z.re, z.im);
    }
    out
}
