//! Two-state interface flux (the conventional K-CUSP-X solver).
//!
//! The convective part is upwinded with a mass-flux factor built from the
//! interface-average velocity; the pressure part uses an HLL discretization
//! whose dissipation vector is rewritten with the isentropic relation
//! `a^2 = dp / drho`, so density jumps at constant pressure and velocity
//! produce no dissipation at all.

use crate::euler::{pressure_flux, Axis, FluxVector, GasModel, PrimitiveState};

/// Relative tolerance on `|u_bar|` below which the interface flow is treated
/// as stationary.
pub const STATIONARY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpeeds1D {
    /// Left signal speed, never positive.
    pub s_l: f64,
    /// Right signal speed, never negative.
    pub s_r: f64,
    pub u_star: f64,
    pub c_star: f64,
    /// `(a_L + a_R) / 2`.
    pub a_bar: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpwindFactors {
    pub side: Side,
    pub m_k: f64,
    pub a_k: f64,
}

#[inline]
pub(crate) fn is_stationary(velocity: f64, sound_speed: f64) -> bool {
    velocity.abs() <= STATIONARY_TOLERANCE * sound_speed.max(1.0)
}

/// Signal speeds of the x-directional two-state problem.
pub fn wave_speeds_1d(left: PrimitiveState, right: PrimitiveState, gas: GasModel) -> WaveSpeeds1D {
    let g1 = gas.gamma() - 1.0;
    let a_l = left.sound_speed(gas);
    let a_r = right.sound_speed(gas);
    let u_bar = 0.5 * (left.u + right.u);
    let a_bar = 0.5 * (a_l + a_r);

    let u_star = u_bar + (a_l - a_r) / g1;
    let c_star = a_bar + 0.25 * g1 * (left.u - right.u);

    let (s_l, s_r) = if is_stationary(u_bar, a_bar) {
        (-a_bar, a_bar)
    } else {
        (
            0.0_f64.min(left.u - a_l).min(u_star - c_star),
            0.0_f64.max(right.u + a_r).max(u_star + c_star),
        )
    };

    WaveSpeeds1D {
        s_l,
        s_r,
        u_star,
        c_star,
        a_bar,
    }
}

pub fn upwind_factors(left: PrimitiveState, right: PrimitiveState, speeds: &WaveSpeeds1D) -> UpwindFactors {
    let u_bar = 0.5 * (left.u + right.u);
    if u_bar >= 0.0 {
        let denom = u_bar - speeds.s_l;
        UpwindFactors {
            side: Side::Left,
            m_k: if u_bar == 0.0 { 0.0 } else { u_bar / denom },
            a_k: left.u - speeds.s_l,
        }
    } else {
        UpwindFactors {
            side: Side::Right,
            m_k: u_bar / (u_bar - speeds.s_r),
            a_k: right.u - speeds.s_r,
        }
    }
}

/// Upwind convective flux `M_k a_k [rho, rho u, rho v, rho q^2/2]_k` along x.
pub fn convective_midpoint_flux(left: PrimitiveState, right: PrimitiveState, speeds: &WaveSpeeds1D) -> FluxVector {
    let f = upwind_factors(left, right, speeds);
    let upwind = match f.side {
        Side::Left => left,
        Side::Right => right,
    };
    upwind.convected() * (f.m_k * f.a_k)
}

/// HLL pressure flux along x with the pressure-based dissipation vector.
pub fn pressure_midpoint_flux(
    left: PrimitiveState,
    right: PrimitiveState,
    speeds: &WaveSpeeds1D,
    gas: GasModel,
) -> FluxVector {
    let WaveSpeeds1D { s_l, s_r, a_bar, .. } = *speeds;
    let f2l = pressure_flux(left, gas, Axis::X);
    let f2r = pressure_flux(right, gas, Axis::X);
    let width = s_r - s_l;
    let a2 = a_bar * a_bar;

    let dp = left.p - right.p;
    let jump = FluxVector([
        dp,
        left.p * left.u - right.p * right.u,
        left.p * left.v - right.p * right.v,
        0.5 * a2 * dp + 0.5 * (left.p * left.q2() - right.p * right.q2()),
    ]);

    let dissipation = (f2l - f2r) * ((s_r + s_l) / (2.0 * width)) - jump * (s_r * s_l / (a2 * width));
    (f2l + f2r) * 0.5 + dissipation
}

/// Complete two-state flux through an interface normal to `axis`.
///
/// `left`/`right` are the states on the low/high side of the interface along
/// `axis`. The y flux is evaluated by exchanging velocity components, using
/// the x formulas and exchanging the momentum rows back.
pub fn midpoint_flux(left: PrimitiveState, right: PrimitiveState, gas: GasModel, axis: Axis) -> FluxVector {
    match axis {
        Axis::X => midpoint_flux_x(left, right, gas),
        Axis::Y => midpoint_flux_x(left.transposed(), right.transposed(), gas).transposed(),
    }
}

#[inline]
fn midpoint_flux_x(left: PrimitiveState, right: PrimitiveState, gas: GasModel) -> FluxVector {
    let speeds = wave_speeds_1d(left, right, gas);
    convective_midpoint_flux(left, right, &speeds) + pressure_midpoint_flux(left, right, &speeds, gas)
}
