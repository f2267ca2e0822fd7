//! Four-state Riemann fluxes at cell corners (the multidimensional part of
//! GM-K-CUSP-X).
//!
//! Four constant states LU, LD, RU, RD meet at a grid node. Their interaction
//! is modelled by four waves bounding a rectangle `[S_L, S_R] x [S_D, S_U]`.
//! The convective flux is upwinded with wave-averaged convection velocities;
//! the pressure flux is the four-state HLL flux with its dissipation rewritten
//! in pressure variables and a transverse coupling term built from the
//! pressure fluxes of the other direction.

use crate::euler::{pressure_flux, Axis, FluxVector, GasModel, PrimitiveState};
use crate::midpoint::is_stationary;

/// The four quadrant states around a node: left/right of the node along x,
/// up/down along y.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerStates {
    pub lu: PrimitiveState,
    pub ld: PrimitiveState,
    pub ru: PrimitiveState,
    pub rd: PrimitiveState,
}

impl CornerStates {
    pub fn uniform(s: PrimitiveState) -> Self {
        Self {
            lu: s,
            ld: s,
            ru: s,
            rd: s,
        }
    }

    /// Mirror across the diagonal `x = y`: LU and RD trade places, LD and RU
    /// stay, velocity components are exchanged.
    pub fn transposed(&self) -> Self {
        Self {
            lu: self.rd.transposed(),
            ld: self.ld.transposed(),
            ru: self.ru.transposed(),
            rd: self.lu.transposed(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.lu.is_valid() && self.ld.is_valid() && self.ru.is_valid() && self.rd.is_valid()
    }

    /// Mean of the four sound speeds.
    pub fn mean_sound_speed(&self, gas: GasModel) -> f64 {
        0.25 * (self.lu.sound_speed(gas)
            + self.ru.sound_speed(gas)
            + self.ld.sound_speed(gas)
            + self.rd.sound_speed(gas))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpeeds2D {
    pub s_l: f64,
    pub s_r: f64,
    pub s_d: f64,
    pub s_u: f64,
    /// Corner-average sound speed.
    pub a_bar: f64,
}

impl WaveSpeeds2D {
    pub fn transposed(&self) -> Self {
        Self {
            s_l: self.s_d,
            s_r: self.s_u,
            s_d: self.s_l,
            s_u: self.s_r,
            a_bar: self.a_bar,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Subsonic,
    /// Every signal along the axis runs in the positive direction.
    SupersonicPlus,
    /// Every signal along the axis runs in the negative direction.
    SupersonicMinus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerVelocities {
    pub u_bar: f64,
    pub v_bar: f64,
    pub regime_x: Regime,
    pub regime_y: Regime,
}

/// Roe-averaged state between two primitive states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoeAverage {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    /// Specific total enthalpy.
    pub enthalpy: f64,
    pub sound_speed: f64,
}

impl RoeAverage {
    #[inline]
    fn velocity(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.u,
            Axis::Y => self.v,
        }
    }
}

pub fn roe_average(left: PrimitiveState, right: PrimitiveState, gas: GasModel) -> RoeAverage {
    let wl = left.rho.sqrt();
    let wr = right.rho.sqrt();
    let inv = 1.0 / (wl + wr);
    let u = (wl * left.u + wr * right.u) * inv;
    let v = (wl * left.v + wr * right.v) * inv;
    let enthalpy = (wl * left.total_enthalpy(gas) + wr * right.total_enthalpy(gas)) * inv;
    let a2 = (gas.gamma() - 1.0) * (enthalpy - 0.5 * (u * u + v * v));
    RoeAverage {
        rho: wl * wr,
        u,
        v,
        enthalpy,
        sound_speed: a2.max(0.0).sqrt(),
    }
}

#[inline]
fn slow_speed(s: PrimitiveState, gas: GasModel, axis: Axis) -> f64 {
    s.normal_velocity(axis) - s.sound_speed(gas)
}

#[inline]
fn fast_speed(s: PrimitiveState, gas: GasModel, axis: Axis) -> f64 {
    s.normal_velocity(axis) + s.sound_speed(gas)
}

#[inline]
fn roe_slow(a: PrimitiveState, b: PrimitiveState, gas: GasModel, axis: Axis) -> f64 {
    let r = roe_average(a, b, gas);
    r.velocity(axis) - r.sound_speed
}

#[inline]
fn roe_fast(a: PrimitiveState, b: PrimitiveState, gas: GasModel, axis: Axis) -> f64 {
    let r = roe_average(a, b, gas);
    r.velocity(axis) + r.sound_speed
}

/// Bounding signal speeds from single-state and Roe-averaged eigenvalues,
/// with zero included so supersonic corners are fully one sided. No
/// degenerate-flow overrides are applied.
pub fn bounding_wave_speeds(states: &CornerStates, gas: GasModel) -> WaveSpeeds2D {
    let CornerStates { lu, ld, ru, rd } = *states;
    let (x, y) = (Axis::X, Axis::Y);
    let s_r = 0.0_f64
        .max(fast_speed(ru, gas, x))
        .max(fast_speed(rd, gas, x))
        .max(roe_fast(lu, ru, gas, x))
        .max(roe_fast(ld, rd, gas, x));
    let s_l = 0.0_f64
        .min(slow_speed(lu, gas, x))
        .min(slow_speed(ld, gas, x))
        .min(roe_slow(lu, ru, gas, x))
        .min(roe_slow(ld, rd, gas, x));
    let s_u = 0.0_f64
        .max(fast_speed(ru, gas, y))
        .max(fast_speed(lu, gas, y))
        .max(roe_fast(rd, ru, gas, y))
        .max(roe_fast(ld, lu, gas, y));
    let s_d = 0.0_f64
        .min(slow_speed(rd, gas, y))
        .min(slow_speed(ld, gas, y))
        .min(roe_slow(rd, ru, gas, y))
        .min(roe_slow(ld, lu, gas, y));
    WaveSpeeds2D {
        s_l,
        s_r,
        s_d,
        s_u,
        a_bar: states.mean_sound_speed(gas),
    }
}

/// Signal speeds of the four-state problem, including the overrides for a
/// vanishing convection velocity: a zero `u_bar` resets the x speeds to
/// `-+a_bar`, a zero `v_bar` the y speeds.
///
/// The convection velocities depend on the speeds, so they are first
/// evaluated with the bounding speeds to decide the overrides.
pub fn corner_wave_speeds(states: &CornerStates, gas: GasModel) -> WaveSpeeds2D {
    let mut speeds = bounding_wave_speeds(states, gas);
    let provisional = corner_convection_velocities(states, &speeds);
    let a = speeds.a_bar;
    if is_stationary(provisional.u_bar, a) {
        speeds.s_l = -a;
        speeds.s_r = a;
    }
    if is_stationary(provisional.v_bar, a) {
        speeds.s_d = -a;
        speeds.s_u = a;
    }
    speeds
}

/// `(hi * s_hi - lo * s_lo) / (s_hi - s_lo)`, arranged so that equal inputs
/// come back bitwise unchanged.
#[inline]
fn weighted(hi: FluxVector, lo: FluxVector, s_hi: f64, s_lo: f64) -> FluxVector {
    hi + (hi - lo) * (s_lo / (s_hi - s_lo))
}

#[inline]
fn weighted_scalar(hi: f64, lo: f64, s_hi: f64, s_lo: f64) -> f64 {
    hi + (hi - lo) * (s_lo / (s_hi - s_lo))
}

#[inline]
fn regime(s_low: f64, s_high: f64) -> Regime {
    if s_low == 0.0 {
        Regime::SupersonicPlus
    } else if s_high == 0.0 {
        Regime::SupersonicMinus
    } else {
        Regime::Subsonic
    }
}

/// Wave-speed averaged convection velocities at the corner.
pub fn corner_convection_velocities(states: &CornerStates, speeds: &WaveSpeeds2D) -> CornerVelocities {
    let CornerStates { lu, ld, ru, rd } = *states;
    let WaveSpeeds2D { s_l, s_r, s_d, s_u, .. } = *speeds;
    let regime_x = regime(s_l, s_r);
    let u_bar = match regime_x {
        Regime::Subsonic => 0.5 * (weighted_scalar(lu.u, ld.u, s_u, s_d) + weighted_scalar(ru.u, rd.u, s_u, s_d)),
        Regime::SupersonicPlus => weighted_scalar(lu.u, ld.u, s_u, s_d),
        Regime::SupersonicMinus => weighted_scalar(ru.u, rd.u, s_u, s_d),
    };

    let regime_y = regime(s_d, s_u);
    let v_bar = match regime_y {
        Regime::Subsonic => 0.5 * (weighted_scalar(ru.v, lu.v, s_r, s_l) + weighted_scalar(rd.v, ld.v, s_r, s_l)),
        Regime::SupersonicPlus => weighted_scalar(rd.v, ld.v, s_r, s_l),
        Regime::SupersonicMinus => weighted_scalar(ru.v, lu.v, s_r, s_l),
    };

    CornerVelocities {
        u_bar,
        v_bar,
        regime_x,
        regime_y,
    }
}

/// Upwinded convective corner flux, `F1*` for x and `G1*` for y.
pub fn corner_convective_flux(
    states: &CornerStates,
    speeds: &WaveSpeeds2D,
    vels: &CornerVelocities,
    axis: Axis,
) -> FluxVector {
    let WaveSpeeds2D { s_l, s_r, s_d, s_u, .. } = *speeds;
    match axis {
        Axis::X => {
            let u_bar = vels.u_bar;
            if u_bar == 0.0 {
                return FluxVector::ZERO;
            }
            let (k1, k2) = if u_bar > 0.0 {
                (states.lu, states.ld)
            } else {
                (states.ru, states.rd)
            };
            weighted(k1.convected(), k2.convected(), s_u, s_d) * u_bar
        }
        Axis::Y => {
            let v_bar = vels.v_bar;
            if v_bar == 0.0 {
                return FluxVector::ZERO;
            }
            let (k1, k2) = if v_bar > 0.0 {
                (states.rd, states.ld)
            } else {
                (states.ru, states.lu)
            };
            weighted(k1.convected(), k2.convected(), s_r, s_l) * v_bar
        }
    }
}

/// `[p, p u, p v, e*]` with `e* = a_bar^2 p / (gamma - 1) + p q^2 / 2`: the
/// pressure-based replacement of the conserved vector in the dissipation.
#[inline]
fn pressure_variables(s: PrimitiveState, a_bar2: f64, gas: GasModel) -> FluxVector {
    FluxVector([
        s.p,
        s.p * s.u,
        s.p * s.v,
        a_bar2 * s.p / (gas.gamma() - 1.0) + 0.5 * s.p * s.q2(),
    ])
}

/// Transverse coupling term of the corner pressure flux: along x it is built
/// from the y pressure fluxes of the four states and vice versa.
pub fn corner_pressure_cross_term(
    states: &CornerStates,
    speeds: &WaveSpeeds2D,
    gas: GasModel,
    axis: Axis,
) -> FluxVector {
    let CornerStates { lu, ld, ru, rd } = *states;
    let WaveSpeeds2D { s_l, s_r, s_d, s_u, .. } = *speeds;
    let area = (s_r - s_l) * (s_u - s_d);
    let (other, coef) = match axis {
        Axis::X => (Axis::Y, s_r * s_l),
        Axis::Y => (Axis::X, s_u * s_d),
    };
    let f = |s| pressure_flux(s, gas, other);
    (f(ru) - f(lu) + f(ld) - f(rd)) * (-2.0 * coef / area)
}

/// Four-state pressure flux at the corner, `F2*` for x and `G2*` for y.
pub fn corner_pressure_flux(states: &CornerStates, speeds: &WaveSpeeds2D, gas: GasModel, axis: Axis) -> FluxVector {
    let CornerStates { lu, ld, ru, rd } = *states;
    let WaveSpeeds2D {
        s_l,
        s_r,
        s_d,
        s_u,
        a_bar,
    } = *speeds;
    let width = s_r - s_l;
    let height = s_u - s_d;
    let a2 = a_bar * a_bar;
    let w = |s| pressure_variables(s, a2, gas);
    let cross = corner_pressure_cross_term(states, speeds, gas, axis);

    match axis {
        Axis::X => {
            let f = |s| pressure_flux(s, gas, Axis::X);
            let left = weighted(f(lu), f(ld), s_u, s_d);
            let right = weighted(f(ru), f(rd), s_u, s_d);
            let jump = (w(lu) - w(ru)) * s_u - (w(ld) - w(rd)) * s_d;
            let dissipation =
                (left - right) * ((s_r + s_l) / (2.0 * width)) - jump * (s_r * s_l / (width * height * a2));
            (left + right) * 0.5 + dissipation + cross
        }
        Axis::Y => {
            let g = |s| pressure_flux(s, gas, Axis::Y);
            let down = weighted(g(rd), g(ld), s_r, s_l);
            let up = weighted(g(ru), g(lu), s_r, s_l);
            let jump = (w(rd) - w(ru)) * s_r - (w(ld) - w(lu)) * s_l;
            let dissipation = (down - up) * ((s_u + s_d) / (2.0 * height)) - jump * (s_u * s_d / (width * height * a2));
            (down + up) * 0.5 + dissipation + cross
        }
    }
}

/// Total corner fluxes `(F*, G*)`.
pub fn corner_flux(states: &CornerStates, gas: GasModel) -> (FluxVector, FluxVector) {
    let speeds = corner_wave_speeds(states, gas);
    let vels = corner_convection_velocities(states, &speeds);
    let f =
        corner_convective_flux(states, &speeds, &vels, Axis::X) + corner_pressure_flux(states, &speeds, gas, Axis::X);
    let g =
        corner_convective_flux(states, &speeds, &vels, Axis::Y) + corner_pressure_flux(states, &speeds, gas, Axis::Y);
    (f, g)
}
