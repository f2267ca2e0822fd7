//! Ideal-gas state representations and the convective/pressure split of the
//! two-dimensional Euler fluxes.
//!
//! The split used throughout the crate removes the pressure work from the
//! energy flux as well as from the momentum flux:
//!
//! ```text
//! F1 = u [rho, rho u, rho v, rho q^2 / 2]      F2 = [0, p, 0, gamma/(gamma-1) p u]
//! G1 = v [rho, rho u, rho v, rho q^2 / 2]      G2 = [0, 0, p, gamma/(gamma-1) p v]
//! ```
//!
//! with `q^2 = u^2 + v^2`. `F1 + F2` and `G1 + G2` are the full Euler fluxes.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Coordinate direction of a flux or interface normal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

/// Calorically perfect gas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasModel {
    gamma: f64,
}

impl GasModel {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma.is_finite() && gamma > 1.0 {
            Ok(Self { gamma })
        } else {
            Err(Error::Domain(format!(
                "ratio of specific heats must exceed 1, got {gamma}"
            )))
        }
    }

    #[inline]
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `gamma / (gamma - 1)`, the enthalpy factor of the pressure flux.
    #[inline]
    pub fn enthalpy_factor(&self) -> f64 {
        self.gamma / (self.gamma - 1.0)
    }
}

impl Default for GasModel {
    fn default() -> Self {
        Self { gamma: 1.4 }
    }
}

/// Working variables `(rho, u, v, p)` of every flux formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimitiveState {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub p: f64,
}

impl PrimitiveState {
    pub const fn new(rho: f64, u: f64, v: f64, p: f64) -> Self {
        Self { rho, u, v, p }
    }

    /// Checked constructor: finite components, positive density and pressure.
    pub fn try_new(rho: f64, u: f64, v: f64, p: f64) -> Result<Self> {
        let s = Self { rho, u, v, p };
        if s.is_valid() {
            Ok(s)
        } else {
            Err(Error::Positivity { rho, p, cell: None })
        }
    }

    pub fn is_valid(&self) -> bool {
        self.rho.is_finite()
            && self.u.is_finite()
            && self.v.is_finite()
            && self.p.is_finite()
            && self.rho > 0.0
            && self.p > 0.0
    }

    /// `u^2 + v^2`, twice the kinetic energy per unit mass.
    #[inline]
    pub fn q2(&self) -> f64 {
        self.u * self.u + self.v * self.v
    }

    /// Velocity component along `axis`.
    #[inline]
    pub fn normal_velocity(&self, axis: Axis) -> f64 {
        match axis {
            Axis::X => self.u,
            Axis::Y => self.v,
        }
    }

    /// The same state with the velocity components exchanged.
    #[inline]
    pub fn transposed(&self) -> Self {
        Self {
            rho: self.rho,
            u: self.v,
            v: self.u,
            p: self.p,
        }
    }

    pub fn to_conserved(&self, gas: GasModel) -> ConservedState {
        primitive_to_conserved(*self, gas)
    }

    pub fn sound_speed(&self, gas: GasModel) -> f64 {
        sound_speed(*self, gas)
    }

    /// Specific total enthalpy `(E + p) / rho`.
    pub fn total_enthalpy(&self, gas: GasModel) -> f64 {
        gas.enthalpy_factor() * self.p / self.rho + 0.5 * self.q2()
    }

    /// The advected vector `[rho, rho u, rho v, rho q^2 / 2]` shared by both
    /// convective fluxes.
    #[inline]
    pub fn convected(&self) -> FluxVector {
        FluxVector([
            self.rho,
            self.rho * self.u,
            self.rho * self.v,
            0.5 * self.rho * self.q2(),
        ])
    }
}

/// Cell-averaged conserved vector `(rho, rho u, rho v, rho e)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConservedState {
    pub rho: f64,
    pub mx: f64,
    pub my: f64,
    pub energy: f64,
}

impl ConservedState {
    pub const fn new(rho: f64, mx: f64, my: f64, energy: f64) -> Self {
        Self { rho, mx, my, energy }
    }

    pub fn to_primitive(&self, gas: GasModel) -> Result<PrimitiveState> {
        conserved_to_primitive(*self, gas)
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.rho, self.mx, self.my, self.energy]
    }

    #[inline]
    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// `self + scale * flux`, componentwise.
    #[inline]
    pub fn add_scaled(&self, flux: FluxVector, scale: f64) -> Self {
        Self::new(
            self.rho + scale * flux.0[0],
            self.mx + scale * flux.0[1],
            self.my + scale * flux.0[2],
            self.energy + scale * flux.0[3],
        )
    }

    /// `a * self + b * other`, componentwise.
    #[inline]
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        Self::new(
            a * self.rho + b * other.rho,
            a * self.mx + b * other.mx,
            a * self.my + b * other.my,
            a * self.energy + b * other.energy,
        )
    }
}

/// Four-component flux, laid out like [`ConservedState`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FluxVector(pub [f64; 4]);

impl FluxVector {
    pub const ZERO: FluxVector = FluxVector([0.0; 4]);

    pub const fn new(mass: f64, x_momentum: f64, y_momentum: f64, energy: f64) -> Self {
        Self([mass, x_momentum, y_momentum, energy])
    }

    /// Exchange the two momentum rows.
    #[inline]
    pub fn transposed(&self) -> Self {
        Self([self.0[0], self.0[2], self.0[1], self.0[3]])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

impl Index<usize> for FluxVector {
    type Output = f64;
    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

impl Add for FluxVector {
    type Output = FluxVector;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        FluxVector([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
            self.0[3] + rhs.0[3],
        ])
    }
}

impl AddAssign for FluxVector {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for FluxVector {
    type Output = FluxVector;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        FluxVector([
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
            self.0[3] - rhs.0[3],
        ])
    }
}

impl Neg for FluxVector {
    type Output = FluxVector;
    #[inline]
    fn neg(self) -> Self {
        FluxVector([-self.0[0], -self.0[1], -self.0[2], -self.0[3]])
    }
}

impl Mul<f64> for FluxVector {
    type Output = FluxVector;
    #[inline]
    fn mul(self, s: f64) -> Self {
        FluxVector([self.0[0] * s, self.0[1] * s, self.0[2] * s, self.0[3] * s])
    }
}

impl Mul<FluxVector> for f64 {
    type Output = FluxVector;
    #[inline]
    fn mul(self, f: FluxVector) -> FluxVector {
        f * self
    }
}

pub fn primitive_to_conserved(prim: PrimitiveState, gas: GasModel) -> ConservedState {
    let PrimitiveState { rho, u, v, p } = prim;
    ConservedState {
        rho,
        mx: rho * u,
        my: rho * v,
        energy: p / (gas.gamma() - 1.0) + 0.5 * rho * (u * u + v * v),
    }
}

/// Recover `(rho, u, v, p)`; fails when density or pressure is not positive
/// (or not finite), which is how solver blow-up surfaces.
pub fn conserved_to_primitive(cons: ConservedState, gas: GasModel) -> Result<PrimitiveState> {
    let ConservedState { rho, mx, my, energy } = cons;
    let (u, v) = (mx / rho, my / rho);
    let p = (gas.gamma() - 1.0) * (energy - 0.5 * (mx * mx + my * my) / rho);
    if rho > 0.0 && p > 0.0 && rho.is_finite() && p.is_finite() && u.is_finite() && v.is_finite() {
        Ok(PrimitiveState { rho, u, v, p })
    } else {
        Err(Error::Positivity { rho, p, cell: None })
    }
}

#[inline]
pub fn sound_speed(prim: PrimitiveState, gas: GasModel) -> f64 {
    (gas.gamma() * prim.p / prim.rho).sqrt()
}

/// Convective and pressure parts of the Euler flux along `axis`.
#[inline]
pub fn split_flux(prim: PrimitiveState, gas: GasModel, axis: Axis) -> (FluxVector, FluxVector) {
    let vn = prim.normal_velocity(axis);
    let convective = prim.convected() * vn;
    let pressure = pressure_flux(prim, gas, axis);
    (convective, pressure)
}

/// Pressure part of the split flux, `[0, p, 0, gamma/(gamma-1) p u]` along x.
#[inline]
pub fn pressure_flux(prim: PrimitiveState, gas: GasModel, axis: Axis) -> FluxVector {
    let h = gas.enthalpy_factor() * prim.p;
    match axis {
        Axis::X => FluxVector([0.0, prim.p, 0.0, h * prim.u]),
        Axis::Y => FluxVector([0.0, 0.0, prim.p, h * prim.v]),
    }
}

/// Unsplit Euler flux, `F` for [`Axis::X`] and `G` for [`Axis::Y`].
pub fn euler_flux(prim: PrimitiveState, gas: GasModel, axis: Axis) -> FluxVector {
    let PrimitiveState { rho, u, v, p } = prim;
    let e = primitive_to_conserved(prim, gas).energy;
    match axis {
        Axis::X => FluxVector([rho * u, rho * u * u + p, rho * u * v, u * (e + p)]),
        Axis::Y => FluxVector([rho * v, rho * u * v, rho * v * v + p, v * (e + p)]),
    }
}
