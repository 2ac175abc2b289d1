// SPDX-License-Identifier: Apache-2.0

//! Named state families and closed-form discord dynamics under one-sided emission.
//!
//! Three families are covered:
//!
//! * `ρ_θ`: populations (½cos²θ, 0, ½, ½sin²θ), coherence ρ₁₄ = ¼ sin 2θ.
//! * `ρ_c(w, s)`: classically correlated, populations (w, ½−w, w, ½−w), ρ₁₄ = ρ₂₃ = s.
//! * `ρ_d(w, s)`: discordant, populations (w, w, ½−w, ½−w), ρ₁₄ = ρ₂₃ = s.
//!
//! with 0 < w < ½ and 0 < s ≤ s_max(w) = √(w/2 − w²).
//!
//! All times in this module are the dimensionless product γ₀t.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::dynamics::{apply_channel, EmissionChannel, Side};
use crate::error::{Error, Result};
use crate::linalg::Subsystem;
use crate::measures::{d1_oracle, OracleConfig, XCoefficients};
use crate::qstate::{DensityMatrix, XState};

/// A curve is said to increase when it exceeds its starting value by more than this.
pub const INCREASE_EPS: f64 = 1e-9;
/// Time horizon γ₀t for the increase predicate.
pub const INCREASE_HORIZON: f64 = 10.0;
/// Scan step for the D₁ increase predicate.
pub const D1_SCAN_STEP: f64 = 1e-4;
const S_MAX_SLACK: f64 = 1e-12;

/// √(w/2 − w²), the largest coherence admissible for ρ_c(w, ·) and ρ_d(w, ·).
pub fn s_max(w: f64) -> f64 {
    (0.5 * w - w * w).max(0.0).sqrt()
}

/// The critical w for Hilbert–Schmidt discord growth, (2 − √2)/8.
pub fn w_c() -> f64 {
    (2.0 - 2f64.sqrt()) / 8.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyParams {
    Theta { theta: f64 },
    Classical { w: f64, s: f64 },
    Discordant { w: f64, s: f64 },
}

fn check_ws(w: f64, s: f64) -> Result<()> {
    if !(w > 0.0 && w < 0.5) {
        return Err(Error::ParamOutOfRange {
            name: "w",
            value: w,
            bound: "0 < w < 1/2".into(),
        });
    }
    let smax = s_max(w);
    if !(s > 0.0 && s <= smax + S_MAX_SLACK) {
        return Err(Error::ParamOutOfRange {
            name: "s",
            value: s,
            bound: format!("0 < s <= s_max(w) = {smax}"),
        });
    }
    Ok(())
}

impl FamilyParams {
    pub fn theta(theta: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&theta) {
            return Err(Error::ParamOutOfRange {
                name: "theta",
                value: theta,
                bound: "0 <= theta <= pi/2".into(),
            });
        }
        Ok(Self::Theta { theta })
    }

    pub fn classical(w: f64, s: f64) -> Result<Self> {
        check_ws(w, s)?;
        Ok(Self::Classical {
            w,
            s: s.min(s_max(w)),
        })
    }

    pub fn discordant(w: f64, s: f64) -> Result<Self> {
        check_ws(w, s)?;
        Ok(Self::Discordant {
            w,
            s: s.min(s_max(w)),
        })
    }

    /// Re-checks the invariants; useful for values built directly from the enum.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Theta { theta } => Self::theta(theta).map(|_| ()),
            Self::Classical { w, s } | Self::Discordant { w, s } => check_ws(w, s),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Theta { .. } => "theta",
            Self::Classical { .. } => "classical",
            Self::Discordant { .. } => "discordant",
        }
    }

    pub fn x_state(&self) -> XState {
        match *self {
            Self::Theta { theta } => {
                let (s, c) = theta.sin_cos();
                XState {
                    r11: 0.5 * c * c,
                    r22: 0.0,
                    r33: 0.5,
                    r44: 0.5 * s * s,
                    r14: 0.25 * (2.0 * theta).sin().max(0.0),
                    r23: 0.0,
                }
            }
            Self::Classical { w, s } => XState {
                r11: w,
                r22: 0.5 - w,
                r33: w,
                r44: 0.5 - w,
                r14: s,
                r23: s,
            },
            Self::Discordant { w, s } => XState {
                r11: w,
                r22: w,
                r33: 0.5 - w,
                r44: 0.5 - w,
                r14: s,
                r23: s,
            },
        }
    }
}

pub fn make_state(p: &FamilyParams) -> Result<DensityMatrix> {
    p.validate()?;
    Ok(p.x_state().to_density())
}

/// Closed-form evolution of a real non-negative X-state under one-sided emission.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XEvolution {
    x0: XState,
}

impl XEvolution {
    pub fn new(x0: XState) -> Self {
        Self { x0 }
    }

    pub fn initial(&self) -> &XState {
        &self.x0
    }

    /// α₁(t), α₂(t), α₃(t), x(t) of the evolved state.
    pub fn coefficients(&self, side: Subsystem, gt: f64) -> XCoefficients {
        let r = &self.x0;
        let e = (-gt).exp();
        let h = (-0.5 * gt).exp();
        let a1 = 2.0 * (r.r14 + r.r23) * h;
        let a2 = 2.0 * (r.r23 - r.r14) * h;
        match side {
            Subsystem::A => XCoefficients::new(
                a1,
                a2,
                2.0 * (r.r11 - r.r22) * e - 2.0 * (r.r11 + r.r33) + 1.0,
                2.0 * (r.r11 + r.r22) * e - 1.0,
            ),
            Subsystem::B => XCoefficients::new(
                a1,
                a2,
                2.0 * (r.r11 - r.r33) * e - 2.0 * (r.r11 + r.r22) + 1.0,
                2.0 * (r.r11 + r.r22) - 1.0,
            ),
        }
    }

    /// The three candidates whose minimum is D₂ of the evolved state:
    /// ½(α₁² + α₂²), ½(α₂² + x² + α₃²), ½(α₁² + x² + α₃²).
    pub fn d2_terms(&self, side: Subsystem, gt: f64) -> [f64; 3] {
        let c = self.coefficients(side, gt);
        let (s1, s2, s3x) = (c.a1 * c.a1, c.a2 * c.a2, c.a3 * c.a3 + c.x * c.x);
        [0.5 * (s1 + s2), 0.5 * (s2 + s3x), 0.5 * (s1 + s3x)]
    }

    pub fn d2(&self, side: Subsystem, gt: f64) -> f64 {
        let [f1, f2, f3] = self.d2_terms(side, gt);
        f1.min(f2).min(f3).max(0.0)
    }

    /// Closed-form D₁; `None` where the formula is singular.
    pub fn d1_closed(&self, side: Subsystem, gt: f64) -> Option<f64> {
        self.coefficients(side, gt).d1()
    }

    /// D₁ with the oracle covering singular points.
    pub fn d1(&self, side: Subsystem, gt: f64, oracle: &OracleConfig) -> f64 {
        self.d1_closed(side, gt).unwrap_or_else(|| {
            let ch = EmissionChannel::scaled(side.into(), gt).expect("gt >= 0");
            d1_oracle(&apply_channel(&self.x0.to_density(), &ch), oracle).value
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    D1,
    D2,
}

/// Sampled curve γ₀t ↦ value.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub family: FamilyParams,
    pub side: Side,
    pub measure: Measure,
    pub points: Vec<(f64, f64)>,
}

impl TimeSeries {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }
}

/// `n` evenly spaced times on [0, t_max].
pub fn uniform_times(t_max: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "need at least two points");
    (0..n).map(|k| t_max * k as f64 / (n - 1) as f64).collect()
}

fn check_times(times: &[f64]) -> Result<()> {
    let mut prev = 0.0;
    for &t in times {
        if !(t >= 0.0) {
            return Err(Error::InvalidTime { t });
        }
        if t < prev {
            return Err(Error::ParamOutOfRange {
                name: "times",
                value: t,
                bound: format!("times must be ascending (previous {prev})"),
            });
        }
        prev = t;
    }
    Ok(())
}

/// Closed-form D₁ or D₂ of the family state evolved under emission of one atom.
pub fn timeseries(
    p: &FamilyParams,
    side: Subsystem,
    measure: Measure,
    times: &[f64],
) -> Result<TimeSeries> {
    p.validate()?;
    check_times(times)?;
    let evo = XEvolution::new(p.x_state());
    let oracle = OracleConfig::default();
    let points = times
        .iter()
        .map(|&t| {
            let v = match measure {
                Measure::D1 => evo.d1(side, t, &oracle),
                Measure::D2 => evo.d2(side, t),
            };
            (t, v)
        })
        .collect();
    Ok(TimeSeries {
        family: *p,
        side: side.into(),
        measure,
        points,
    })
}

pub fn d1_timeseries_a(p: &FamilyParams, times: &[f64]) -> Result<TimeSeries> {
    timeseries(p, Subsystem::A, Measure::D1, times)
}

pub fn d2_timeseries_a(p: &FamilyParams, times: &[f64]) -> Result<TimeSeries> {
    timeseries(p, Subsystem::A, Measure::D2, times)
}

pub fn d1_timeseries_b(p: &FamilyParams, times: &[f64]) -> Result<TimeSeries> {
    timeseries(p, Subsystem::B, Measure::D1, times)
}

pub fn d2_timeseries_b(p: &FamilyParams, times: &[f64]) -> Result<TimeSeries> {
    timeseries(p, Subsystem::B, Measure::D2, times)
}

/// Family-specific closed forms, simplified from the general X-state expressions.
pub mod special {
    /// g(t) = 2(cosh γ₀t − 1)
    pub fn g(gt: f64) -> f64 {
        2.0 * (gt.cosh() - 1.0)
    }

    /// D₁ of ρ_c(w, s) under emission of A: 4s(1 − e^{−γ₀t}) / G(t).
    pub fn classical_d1_a(w: f64, s: f64, gt: f64) -> f64 {
        if gt == 0.0 {
            return 0.0;
        }
        let g = g(gt);
        let s16 = 16.0 * s * s;
        let big_g = (s16 + g - s16.min(g * (1.0 - 4.0 * w).powi(2))).sqrt();
        4.0 * s * (1.0 - (-gt).exp()) / big_g
    }

    /// (f₁, f₂, f₃) for ρ_c(w, s) under emission of A.
    pub fn classical_d2_terms_a(w: f64, s: f64, gt: f64) -> [f64; 3] {
        let e = (-gt).exp();
        let f1 = 8.0 * s * s * e;
        let f2 = (1.0 - 4.0 * w + 8.0 * w * w) * (1.0 - e).powi(2);
        [f1, f2, f2 + f1]
    }

    /// D₁ of ρ_d(w, s) under emission of A.
    pub fn discordant_d1_a(w: f64, s: f64, gt: f64) -> f64 {
        let e = (-gt).exp();
        let u = 1.0 - 4.0 * w * e;
        4.0 * s * u.abs() / (16.0 * s * s + u * u / e).sqrt()
    }

    /// D₁ of ρ_d(w, s) at t = 0: 4s|1 − 4w| / √(16s² + (1 − 4w)²).
    pub fn discordant_d1_initial(w: f64, s: f64) -> f64 {
        let u = 1.0 - 4.0 * w;
        4.0 * s * u.abs() / (16.0 * s * s + u * u).sqrt()
    }

    /// D₂ of ρ_d(w, s) at t = 0: min(8s², 2(2w − ½)²).
    pub fn discordant_d2_initial(w: f64, s: f64) -> f64 {
        (8.0 * s * s).min(2.0 * (2.0 * w - 0.5).powi(2))
    }

    /// (f₁, f₂, f₃) for ρ_d(w, s) under emission of A.
    pub fn discordant_d2_terms_a(w: f64, s: f64, gt: f64) -> [f64; 3] {
        let e = (-gt).exp();
        let f1 = 8.0 * s * s * e;
        let f2 = 0.5 - 4.0 * w * e + 8.0 * w * w * e * e;
        [f1, f2, f2 + f1]
    }

    /// c = 1 − 8w + 16w²
    pub fn discordant_c(w: f64) -> f64 {
        1.0 - 8.0 * w + 16.0 * w * w
    }

    /// (f̃₁, f̃₂, f̃₃) for ρ_d(w, s) under emission of B.
    pub fn discordant_d2_terms_b(w: f64, s: f64, gt: f64) -> [f64; 3] {
        let e = (-gt).exp();
        let c = discordant_c(w);
        let f1 = 8.0 * s * s * e;
        let f2 = c - c * e + 0.5 * c * e * e;
        [f1, f2, f2 + f1]
    }

    /// 8s² > ½ − 4w + 8w²: D₂ of ρ_d(w, s) starts on the f₂ branch.
    pub fn creation_condition(w: f64, s: f64) -> bool {
        8.0 * s * s > 0.5 - 4.0 * w + 8.0 * w * w
    }
}

/// Growth classification of a discordant initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub w: f64,
    pub s: f64,
    pub d2_increases_under_a: bool,
    pub d1_increases_under_a: bool,
    pub d2_increases_under_b: bool,
    /// γ₀t at which D₁ under emission of A vanishes; present iff w > ¼.
    pub t_zero: Option<f64>,
}

/// Whether `f` exceeds `f(0)` by more than [`INCREASE_EPS`] on the grid step, 2·step, … ≤ horizon.
pub fn increases_on_scan(f: impl Fn(f64) -> f64, step: f64, horizon: f64) -> bool {
    let v0 = f(0.0);
    let n = (horizon / step).round() as usize;
    (1..=n).any(|k| f(k as f64 * step) > v0 + INCREASE_EPS)
}

/// Where D₂ of ρ_d(w, s) under emission of A peaks after t = 0, if it switches from f₂ to f₁.
///
/// With e = e^{−γ₀t}, the crossing f₂ = f₁ solves 8w²e² − (4w + 8s²)e + ½ = 0;
/// the relevant root is the smaller one, below 1 whenever the creation condition holds.
fn d2_crossing_a(w: f64, s: f64) -> Option<(f64, f64)> {
    if !special::creation_condition(w, s) {
        return None;
    }
    let p = 4.0 * w + 8.0 * s * s;
    let disc = (p * p - 16.0 * w * w).max(0.0);
    let e = 1.0 / (p + disc.sqrt());
    Some((-e.ln(), 8.0 * s * s * e))
}

/// Same for emission of B, where f̃₂ = c(1 − e + ½e²) meets f̃₁ = 8s²e.
fn d2_crossing_b(w: f64, s: f64) -> Option<(f64, f64)> {
    let c = special::discordant_c(w);
    if !(c > 0.0) || !(8.0 * s * s > 0.5 * c) {
        return None;
    }
    let p = c + 8.0 * s * s;
    let disc = (p * p - 2.0 * c * c).max(0.0);
    let e = 2.0 * c / (p + disc.sqrt());
    Some((-e.ln(), 8.0 * s * s * e))
}

fn crossing_increases(crossing: Option<(f64, f64)>, initial: f64) -> bool {
    matches!(crossing, Some((t, v)) if t <= INCREASE_HORIZON && v > initial + INCREASE_EPS)
}

pub fn regime(p: &FamilyParams) -> Result<RegimeReport> {
    let (w, s) = match *p {
        FamilyParams::Discordant { w, s } => (w, s),
        _ => {
            return Err(Error::ParamOutOfRange {
                name: "family",
                value: f64::NAN,
                bound: "regime analysis needs the discordant family".into(),
            })
        }
    };
    p.validate()?;

    // D₂ under A starts at min(f₁(0), f₂(0)); it can only rise while it follows f₂,
    // and its value at the f₂→f₁ switch is the highest it reaches afterwards.
    let d2_initial = special::discordant_d2_initial(w, s);
    let d2_increases_under_a = crossing_increases(d2_crossing_a(w, s), d2_initial);
    let d2_increases_under_b = crossing_increases(d2_crossing_b(w, s), d2_initial);

    let evo = XEvolution::new(p.x_state());
    let oracle = OracleConfig::default();
    let d1_increases_under_a = increases_on_scan(
        |t| evo.d1(Subsystem::A, t, &oracle),
        D1_SCAN_STEP,
        INCREASE_HORIZON,
    );

    Ok(RegimeReport {
        w,
        s,
        d2_increases_under_a,
        d1_increases_under_a,
        d2_increases_under_b,
        t_zero: (w > 0.25).then(|| (4.0 * w).ln()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalKind {
    D2,
    D1,
}

/// 8 s_max(w)² − (½ − 4w + 8w²); zero at the D₂ critical point.
pub fn d2_critical_residual(w: f64) -> f64 {
    8.0 * s_max(w).powi(2) - (0.5 - 4.0 * w + 8.0 * w * w)
}

/// Does D₁ of ρ_d(w, s_max(w)) rise above its initial value under emission of A?
pub fn d1_grows_at_smax(w: f64) -> bool {
    let evo = XEvolution::new(FamilyParams::Discordant { w, s: s_max(w) }.x_state());
    let oracle = OracleConfig::default();
    increases_on_scan(
        |t| evo.d1(Subsystem::A, t, &oracle),
        D1_SCAN_STEP,
        INCREASE_HORIZON,
    )
}

/// Critical w separating decaying from growing discord for pairs (w, s_max(w)).
pub fn find_critical_w(kind: CriticalKind, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::ParamOutOfRange {
            name: "tol",
            value: tol,
            bound: "must be > 0".into(),
        });
    }
    match kind {
        CriticalKind::D2 => {
            let w = w_c();
            let residual = d2_critical_residual(w);
            if residual.abs() > tol {
                return Err(Error::ParamOutOfRange {
                    name: "w_c residual",
                    value: residual,
                    bound: format!("|residual| <= {tol}"),
                });
            }
            Ok(w)
        }
        CriticalKind::D1 => {
            let (mut lo, mut hi) = (w_c() - 0.01, 0.25);
            if d1_grows_at_smax(lo) || !d1_grows_at_smax(hi) {
                return Err(Error::NoSignChange { lo, hi });
            }
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                if d1_grows_at_smax(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Ok(0.5 * (lo + hi))
        }
    }
}

/// Peak over (0, horizon] of D₁ under emission of A for ρ_c(w, s), by scan.
pub fn classical_peak_d1(w: f64, s: f64, step: f64, horizon: f64) -> (f64, f64) {
    let evo = XEvolution::new(FamilyParams::Classical { w, s }.x_state());
    let oracle = OracleConfig::default();
    let n = (horizon / step).round() as usize;
    (0..=n)
        .map(|k| {
            let t = k as f64 * step;
            (t, evo.d1(Subsystem::A, t, &oracle))
        })
        .fold((0.0, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        })
}

/// One point of the (w, s) production grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductionPoint {
    pub w: f64,
    pub s: f64,
    pub peak_time: f64,
    pub peak: f64,
}

/// Peak D₁ production over an `n × n` grid of classical states:
/// w = (i + ½)/(2n), s = s_max(w)·(j + 1)/n.
pub fn production_grid(n: usize, step: f64, horizon: f64) -> Vec<ProductionPoint> {
    (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let w = (i as f64 + 0.5) / (2.0 * n as f64);
            let s = s_max(w) * (j as f64 + 1.0) / n as f64;
            let (peak_time, peak) = classical_peak_d1(w, s, step, horizon);
            ProductionPoint {
                w,
                s,
                peak_time,
                peak,
            }
        })
        .collect()
}
