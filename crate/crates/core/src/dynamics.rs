// SPDX-License-Identifier: Apache-2.0

//! Spontaneous emission of two independent two-level atoms at zero temperature.
//!
//! The generator is the sum of one dissipator per atom,
//! L_k ρ = (γ₀/2)(2 σ₋ᵏ ρ σ₊ᵏ − σ₊ᵏσ₋ᵏ ρ − ρ σ₊ᵏσ₋ᵏ), with no Hamiltonian part.
//! Its one-sided semigroups are amplitude-damping channels with decay
//! probability p = 1 − e^{−γ₀t}; [`apply_channel`] uses that Kraus form on
//! arbitrary input states, and [`integrate`] is an RK4 solver of the master
//! equation kept as an independent check.
//!
//! For X-shaped input under emission of atom A the populations become
//! (e ρ₁₁, e ρ₂₂, (1−e)ρ₁₁ + ρ₃₃, (1−e)ρ₂₂ + ρ₄₄) with e = e^{−γ₀t}, and both
//! coherences pick up √e. Under emission of atom B they become
//! (e ρ₁₁, (1−e)ρ₁₁ + ρ₂₂, e ρ₃₃, (1−e)ρ₃₃ + ρ₄₄).

use crate::error::{Error, Result};
use crate::linalg::{kron, partial_trace, pauli, ComplexMatrix, Subsystem, C64};
use crate::qstate::DensityMatrix;

/// Which atoms emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
    Both,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::A => "A",
            Side::B => "B",
            Side::Both => "both",
        }
    }
}

impl From<Subsystem> for Side {
    fn from(s: Subsystem) -> Self {
        match s {
            Subsystem::A => Side::A,
            Subsystem::B => Side::B,
        }
    }
}

/// Emission of `side` at rate `gamma0` for time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionChannel {
    side: Side,
    gamma0: f64,
    t: f64,
}

impl EmissionChannel {
    pub fn new(side: Side, gamma0: f64, t: f64) -> Result<Self> {
        if !(gamma0 > 0.0) || !gamma0.is_finite() {
            return Err(Error::ParamOutOfRange {
                name: "gamma0",
                value: gamma0,
                bound: "must be finite and > 0".into(),
            });
        }
        if !(t >= 0.0) {
            return Err(Error::InvalidTime { t });
        }
        Ok(Self { side, gamma0, t })
    }

    /// Channel in units where γ₀ = 1, so `gt` is the dimensionless time γ₀t.
    pub fn scaled(side: Side, gt: f64) -> Result<Self> {
        Self::new(side, 1.0, gt)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// e^{−γ₀t}
    pub fn survival(&self) -> f64 {
        (-self.gamma0 * self.t).exp()
    }
}

/// Amplitude-damping Kraus pair for survival probability `e`.
fn damping_kraus(e: f64) -> [ComplexMatrix; 2] {
    let k0 = ComplexMatrix::from_diag(&[e.sqrt(), 1.0]);
    let mut k1 = ComplexMatrix::zeros(2, 2);
    k1[(1, 0)] = C64::new((1.0 - e).max(0.0).sqrt(), 0.0);
    [k0, k1]
}

fn apply_one_sided(m: &ComplexMatrix, side: Subsystem, e: f64) -> ComplexMatrix {
    let id = pauli::identity();
    let mut out = ComplexMatrix::zeros(4, 4);
    for k in damping_kraus(e) {
        let op = match side {
            Subsystem::A => kron(&k, &id).unwrap(),
            Subsystem::B => kron(&id, &k).unwrap(),
        };
        out = &out + &m.conjugate_by(&op);
    }
    out.hermitian_part()
}

/// Evolves `rho` through the emission channel.
pub fn apply_channel(rho: &DensityMatrix, ch: &EmissionChannel) -> DensityMatrix {
    let e = ch.survival();
    let m = rho.matrix();
    let out = match ch.side {
        Side::A => apply_one_sided(m, Subsystem::A, e),
        Side::B => apply_one_sided(m, Subsystem::B, e),
        Side::Both => apply_one_sided(&apply_one_sided(m, Subsystem::A, e), Subsystem::B, e),
    };
    DensityMatrix::from_trusted(out)
}

fn dissipator(m: &ComplexMatrix, side: Subsystem, gamma0: f64) -> ComplexMatrix {
    let id = pauli::identity();
    let (lower, raise) = match side {
        Subsystem::A => (
            kron(&pauli::sigma_minus(), &id).unwrap(),
            kron(&pauli::sigma_plus(), &id).unwrap(),
        ),
        Subsystem::B => (
            kron(&id, &pauli::sigma_minus()).unwrap(),
            kron(&id, &pauli::sigma_plus()).unwrap(),
        ),
    };
    let number = &raise * &lower;
    let jump = &(&lower * m) * &raise;
    let anti = &(&number * m) + &(m * &number);
    (&jump.scale_real(2.0) - &anti).scale_real(0.5 * gamma0)
}

fn rhs_matrix(m: &ComplexMatrix, side: Side, gamma0: f64) -> ComplexMatrix {
    match side {
        Side::A => dissipator(m, Subsystem::A, gamma0),
        Side::B => dissipator(m, Subsystem::B, gamma0),
        Side::Both => &dissipator(m, Subsystem::A, gamma0) + &dissipator(m, Subsystem::B, gamma0),
    }
}

/// dρ/dt for emission of `side`.
pub fn lindblad_rhs(rho: &DensityMatrix, side: Side, gamma0: f64) -> ComplexMatrix {
    rhs_matrix(rho.matrix(), side, gamma0)
}

/// Positivity/trace tolerance applied to the integrator's final state.
pub const INTEGRATOR_STATE_TOL: f64 = 1e-8;

/// Fixed-step classical RK4 integration of the master equation from 0 to `t_final`.
///
/// The step actually used is `t_final / ceil(t_final / dt)` so the last step
/// lands exactly on `t_final`.
pub fn integrate(
    rho0: &DensityMatrix,
    side: Side,
    gamma0: f64,
    t_final: f64,
    dt: f64,
) -> Result<DensityMatrix> {
    if !(gamma0 > 0.0) {
        return Err(Error::ParamOutOfRange {
            name: "gamma0",
            value: gamma0,
            bound: "must be > 0".into(),
        });
    }
    if !(t_final >= 0.0) {
        return Err(Error::InvalidTime { t: t_final });
    }
    if !(dt > 0.0) {
        return Err(Error::ParamOutOfRange {
            name: "dt",
            value: dt,
            bound: "must be > 0".into(),
        });
    }
    let limit = 0.1 / gamma0;
    if dt > limit {
        return Err(Error::StepTooLarge { dt, limit });
    }
    let steps = (t_final / dt).ceil() as usize;
    let mut m = rho0.matrix().clone();
    if steps > 0 {
        let h = t_final / steps as f64;
        let f = |x: &ComplexMatrix| rhs_matrix(x, side, gamma0);
        for _ in 0..steps {
            let k1 = f(&m);
            let k2 = f(&(&m + &k1.scale_real(0.5 * h)));
            let k3 = f(&(&m + &k2.scale_real(0.5 * h)));
            let k4 = f(&(&m + &k3.scale_real(h)));
            let incr = &(&k1 + &k4) + &(&k2 + &k3).scale_real(2.0);
            m = (&m + &incr.scale_real(h / 6.0)).hermitian_part();
        }
    }
    DensityMatrix::validate_with_tol(m, INTEGRATOR_STATE_TOL)
}

/// Integrator with the default step 1e-3/γ₀.
pub fn integrate_default(
    rho0: &DensityMatrix,
    side: Side,
    gamma0: f64,
    t_final: f64,
) -> Result<DensityMatrix> {
    integrate(rho0, side, gamma0, t_final, 1e-3 / gamma0)
}

/// Long-time limit of one-sided emission: P_g ⊗ tr_A ρ for A, tr_B ρ ⊗ P_g for B.
pub fn asymptotic_state(rho: &DensityMatrix, side: Subsystem) -> DensityMatrix {
    let pg = pauli::ground_projector();
    let m = rho.matrix();
    let out = match side {
        Subsystem::A => kron(&pg, &partial_trace(m, Subsystem::A).unwrap()).unwrap(),
        Subsystem::B => kron(&partial_trace(m, Subsystem::B).unwrap(), &pg).unwrap(),
    };
    DensityMatrix::from_trusted(out.hermitian_part())
}
