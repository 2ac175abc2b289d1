// SPDX-License-Identifier: Apache-2.0

//! Correlation measures of two-qubit states.
//!
//! * `D₂`: geometric discord with the squared Hilbert–Schmidt distance,
//!   normalized by d/(d−1) = 2, via the closed form ½(|x|² + ‖T‖² − k_max).
//! * `D₁`: trace-distance discord. Closed form for real non-negative
//!   X-states; the degenerate branch (x = 0, |α₁| = |α₂| = |α₃| ≠ 0) is
//!   resolved by direct minimization.
//! * `N`: negativity ‖ρ^{T_B}‖₁ − 1.
//!
//! Both discords are minimized over von Neumann measurements on qubit A,
//! which are fully described by one Bloch axis `n` (projectors (I ± n·σ)/2).
//! [`d1_oracle`] and [`d2_oracle`] carry out that minimization numerically
//! and are independent of the closed forms.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, hs_norm_sq, kron, pauli, trace_norm, ComplexMatrix, Subsystem, C64};
use crate::qstate::{bloch, to_x_state, DensityMatrix, XState, X_SHAPE_TOL};

/// Below this, α-coefficients and x are treated as zero or equal.
pub const DEGENERACY_TOL: f64 = 1e-10;
/// Below this, the denominator of the X-state D₁ formula is treated as singular.
pub const DENOMINATOR_TOL: f64 = 1e-12;

/// Unit Bloch vector of a projective measurement on qubit A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementAxis {
    n: [f64; 3],
}

impl MeasurementAxis {
    /// Normalizes `v`; fails for the zero vector.
    pub fn new(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::ParamOutOfRange {
                name: "axis",
                value: norm,
                bound: "measurement axis must be a finite non-zero vector".into(),
            });
        }
        Ok(Self {
            n: [v[0] / norm, v[1] / norm, v[2] / norm],
        })
    }

    pub fn from_angles(polar: f64, azimuth: f64) -> Self {
        Self {
            n: [
                polar.sin() * azimuth.cos(),
                polar.sin() * azimuth.sin(),
                polar.cos(),
            ],
        }
    }

    pub fn x() -> Self {
        Self { n: [1.0, 0.0, 0.0] }
    }

    pub fn z() -> Self {
        Self { n: [0.0, 0.0, 1.0] }
    }

    pub fn vector(&self) -> [f64; 3] {
        self.n
    }

    /// n and −n describe the same measurement; pick the representative
    /// whose first non-zero component is positive.
    fn canonical(self) -> Self {
        let first = self.n.iter().copied().find(|c| *c != 0.0).unwrap_or(1.0);
        if first < 0.0 {
            Self {
                n: [-self.n[0], -self.n[1], -self.n[2]],
            }
        } else {
            self
        }
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        for k in 0..3 {
            match self.n[k].total_cmp(&other.n[k]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// (n·σ) ⊗ I
    fn observable(&self) -> ComplexMatrix {
        let [x, y, z] = self.n;
        let ns = ComplexMatrix::from_vec(
            2,
            2,
            vec![
                C64::new(z, 0.0),
                C64::new(x, -y),
                C64::new(x, y),
                C64::new(-z, 0.0),
            ],
        )
        .unwrap();
        kron(&ns, &pauli::identity()).unwrap()
    }
}

/// Σ_± (P_± ⊗ I) ρ (P_± ⊗ I) with P_± = (I ± n·σ)/2.
pub fn measure_map(rho: &DensityMatrix, axis: &MeasurementAxis) -> DensityMatrix {
    DensityMatrix::from_trusted(measure_matrix(rho.matrix(), axis))
}

fn measure_matrix(m: &ComplexMatrix, axis: &MeasurementAxis) -> ComplexMatrix {
    // Σ_± P_± ρ P_± = ½(ρ + (n·σ) ρ (n·σ)) on the measured factor.
    let o = axis.observable();
    let flipped = &(&o * m) * &o;
    (m + &flipped).scale_real(0.5)
}

/// Geometric discord D₂ from the Bloch decomposition.
pub fn d2_closed(rho: &DensityMatrix) -> f64 {
    let b = bloch(rho);
    let x = b.x_vec;
    let t = b.corr;
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = x[i] * x[j] + (0..3).map(|k| t[i][k] * t[j][k]).sum::<f64>();
        }
    }
    let x_sq: f64 = x.iter().map(|v| v * v).sum();
    let t_sq: f64 = t.iter().flatten().map(|v| v * v).sum();
    let k_max = linalg::symmetric3_max_eigenvalue(&m).expect("x xᵀ + T Tᵀ is symmetric");
    (0.5 * (x_sq + t_sq - k_max)).max(0.0)
}

/// Coefficients of the X-state trace-distance discord formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XCoefficients {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub x: f64,
    pub a: f64,
    pub b: f64,
}

impl XCoefficients {
    pub fn new(a1: f64, a2: f64, a3: f64, x: f64) -> Self {
        Self {
            a1,
            a2,
            a3,
            x,
            a: (a3 * a3).max(a2 * a2 + x * x),
            b: (a3 * a3).min(a1 * a1),
        }
    }

    pub fn from_x_state(s: &XState) -> Self {
        Self::new(
            2.0 * (s.r23 + s.r14),
            2.0 * (s.r23 - s.r14),
            1.0 - 2.0 * (s.r22 + s.r33),
            2.0 * (s.r11 + s.r22) - 1.0,
        )
    }

    fn is_zero(&self) -> bool {
        [self.a1, self.a2, self.a3, self.x]
            .iter()
            .all(|v| v.abs() <= DEGENERACY_TOL)
    }

    /// x = 0 and |α₁| = |α₂| = |α₃|, where the closed form is 0/0.
    pub fn is_degenerate(&self) -> bool {
        let (m1, m2, m3) = (self.a1.abs(), self.a2.abs(), self.a3.abs());
        self.x.abs() <= DEGENERACY_TOL
            && (m1 - m2).abs() <= DEGENERACY_TOL
            && (m2 - m3).abs() <= DEGENERACY_TOL
    }

    /// sqrt((a α₁² − b α₂²) / (a − b + α₁² − α₂²)), or `None` on the singular branch.
    ///
    /// All-zero coefficients mean T = 0 and x = 0, i.e. a product state
    /// I/2 ⊗ ρ_B, whose discord is exactly 0.
    pub fn d1(&self) -> Option<f64> {
        if self.is_zero() {
            return Some(0.0);
        }
        if self.is_degenerate() {
            return None;
        }
        // The formula is homogeneous of degree one; normalise so the
        // singularity test is relative.
        let m = [self.a1, self.a2, self.a3, self.x]
            .iter()
            .fold(0.0f64, |acc, v| acc.max(v.abs()));
        let n = Self::new(self.a1 / m, self.a2 / m, self.a3 / m, self.x / m);
        let (a1s, a2s) = (n.a1 * n.a1, n.a2 * n.a2);
        let denom = n.a - n.b + a1s - a2s;
        if denom.abs() < DENOMINATOR_TOL {
            return None;
        }
        let num = n.a * a1s - n.b * a2s;
        Some(m * (num / denom).max(0.0).sqrt())
    }
}

/// Which route produced a D₁ value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum D1Method {
    ClosedX,
    Oracle,
}

impl fmt::Display for D1Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            D1Method::ClosedX => "closed-x",
            D1Method::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct D1Value {
    pub value: f64,
    pub method: D1Method,
}

/// D₁ of a real non-negative X-state; on the singular branch the oracle
/// runs with `oracle` settings.
pub fn d1_closed_x_with(x: &XState, oracle: &OracleConfig) -> D1Value {
    match XCoefficients::from_x_state(x).d1() {
        Some(value) => D1Value {
            value,
            method: D1Method::ClosedX,
        },
        None => D1Value {
            value: d1_oracle(&x.to_density(), oracle).value,
            method: D1Method::Oracle,
        },
    }
}

pub fn d1_closed_x(x: &XState) -> D1Value {
    d1_closed_x_with(x, &OracleConfig::default())
}

/// D₁ of any state: closed form when the state is real non-negative X-shaped, oracle otherwise.
pub fn d1(rho: &DensityMatrix, oracle: &OracleConfig) -> D1Value {
    match to_x_state(rho, X_SHAPE_TOL) {
        Ok(x) => d1_closed_x_with(&x, oracle),
        Err(_) => D1Value {
            value: d1_oracle(rho, oracle).value,
            method: D1Method::Oracle,
        },
    }
}

/// N(ρ) = ‖ρ^{T_B}‖₁ − 1.
pub fn negativity(rho: &DensityMatrix) -> f64 {
    let pt = linalg::partial_transpose(rho.matrix(), Subsystem::B).expect("state is 4x4");
    let norm = trace_norm(&pt).expect("partial transpose of a state is Hermitian");
    (norm - 1.0).max(0.0)
}

/// Search settings for the brute-force discord minimizers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Number of Fibonacci-lattice axes on the hemisphere.
    pub grid: usize,
    /// Nelder–Mead iteration budget per refinement start.
    pub refine_iters: usize,
    /// Simplex size, in tangent-plane coordinates, at which refinement stops.
    pub shrink_tol: f64,
    /// Number of best distinct lattice points used as refinement starts.
    pub starts: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            grid: 2000,
            refine_iters: 200,
            shrink_tol: 1e-10,
            starts: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    pub axis: MeasurementAxis,
}

/// min over n of 2‖ρ − Π_n(ρ)‖₂².
pub fn d2_oracle(rho: &DensityMatrix, cfg: &OracleConfig) -> OracleResult {
    let m = rho.matrix();
    minimize_over_axes(cfg, |axis| {
        2.0 * hs_norm_sq(&(m - &measure_matrix(m, axis)))
    })
}

/// min over n of ‖ρ − Π_n(ρ)‖₁.
pub fn d1_oracle(rho: &DensityMatrix, cfg: &OracleConfig) -> OracleResult {
    let m = rho.matrix();
    minimize_over_axes(cfg, |axis| {
        trace_norm(&(m - &measure_matrix(m, axis))).expect("ρ − Π(ρ) is Hermitian")
    })
}

/// Fibonacci lattice of `n` points on the upper hemisphere z > 0.
pub fn hemisphere_lattice(n: usize) -> Vec<MeasurementAxis> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            MeasurementAxis {
                n: [r * phi.cos(), r * phi.sin(), z],
            }
            .canonical()
        })
        .collect()
}

fn better(a: &OracleResult, b: &OracleResult) -> bool {
    match a.value.total_cmp(&b.value) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => a.axis.lex_cmp(&b.axis) == Ordering::Less,
    }
}

fn minimize_over_axes<F>(cfg: &OracleConfig, cost: F) -> OracleResult
where
    F: Fn(&MeasurementAxis) -> f64 + Sync,
{
    let lattice = hemisphere_lattice(cfg.grid.max(1));
    let mut scored: Vec<OracleResult> = lattice
        .par_iter()
        .map(|axis| OracleResult {
            value: cost(axis),
            axis: *axis,
        })
        .collect();
    scored.sort_by(|a, b| a.value.total_cmp(&b.value).then(a.axis.lex_cmp(&b.axis)));

    let mut best = scored[0];
    let spacing = (2.0 * std::f64::consts::PI / lattice.len() as f64).sqrt();

    // Refinement starts: best lattice points that are not near a previous start.
    let mut starts: Vec<MeasurementAxis> = Vec::new();
    for cand in &scored {
        if starts.len() >= cfg.starts.max(1) {
            break;
        }
        let far = starts.iter().all(|s| {
            let d: f64 = (0..3).map(|k| s.n[k] * cand.axis.n[k]).sum();
            d.abs() < (3.0 * spacing).cos()
        });
        if far {
            starts.push(cand.axis);
        }
    }
    for start in starts {
        let refined = nelder_mead_on_sphere(start, spacing, cfg, &cost);
        if better(&refined, &best) {
            best = refined;
        }
    }
    best.axis = best.axis.canonical();
    best
}

/// Nelder–Mead in the tangent plane at `center`, mapping (u, v) ↦ normalize(center + u e₁ + v e₂).
fn nelder_mead_on_sphere<F>(
    center: MeasurementAxis,
    step: f64,
    cfg: &OracleConfig,
    cost: &F,
) -> OracleResult
where
    F: Fn(&MeasurementAxis) -> f64,
{
    let c = center.n;
    let helper = if c[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let e1 = normalize(cross(c, helper));
    let e2 = cross(c, e1);
    let to_axis = |p: [f64; 2]| MeasurementAxis {
        n: normalize([
            c[0] + p[0] * e1[0] + p[1] * e2[0],
            c[1] + p[0] * e1[1] + p[1] * e2[1],
            c[2] + p[0] * e1[2] + p[1] * e2[2],
        ]),
    };
    let eval = |p: [f64; 2]| cost(&to_axis(p));

    let mut simplex = [[0.0, 0.0], [step, 0.0], [0.0, step]];
    let mut values = simplex.map(eval);

    for _ in 0..cfg.refine_iters {
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = order.map(|i| simplex[i]);
        values = order.map(|i| values[i]);

        let size = (1..3)
            .map(|i| (simplex[i][0] - simplex[0][0]).hypot(simplex[i][1] - simplex[0][1]))
            .fold(0.0, f64::max);
        if size < cfg.shrink_tol {
            break;
        }

        let centroid = [
            0.5 * (simplex[0][0] + simplex[1][0]),
            0.5 * (simplex[0][1] + simplex[1][1]),
        ];
        let along = |t: f64| {
            [
                centroid[0] + t * (simplex[2][0] - centroid[0]),
                centroid[1] + t * (simplex[2][1] - centroid[1]),
            ]
        };
        let reflected = along(-1.0);
        let fr = eval(reflected);
        if fr < values[0] {
            let expanded = along(-2.0);
            let fe = eval(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
        } else if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
        } else {
            let (contracted, fc) = if fr < values[2] {
                let p = along(-0.5);
                (p, eval(p))
            } else {
                let p = along(0.5);
                (p, eval(p))
            };
            if fc < values[2].min(fr) {
                simplex[2] = contracted;
                values[2] = fc;
            } else {
                for i in 1..3 {
                    simplex[i] = [
                        0.5 * (simplex[0][0] + simplex[i][0]),
                        0.5 * (simplex[0][1] + simplex[i][1]),
                    ];
                    values[i] = eval(simplex[i]);
                }
            }
        }
    }
    let best = (0..3)
        .min_by(|&i, &j| values[i].total_cmp(&values[j]))
        .unwrap();
    OracleResult {
        value: values[best],
        axis: to_axis(simplex[best]).canonical(),
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}
