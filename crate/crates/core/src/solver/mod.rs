//! Finite-volume update on a uniform Cartesian grid.
//!
//! Every interface flux is the Simpson-rule combination of the two-state
//! flux at the interface midpoint and the four-state fluxes at its two end
//! nodes. With [`Scheme::TwoState`] the corner fluxes are skipped and the
//! midpoint flux is used alone.

mod boundary;
mod field;
mod reconstruct;

pub use boundary::{apply_boundary_conditions, BoundarySpec, EdgeCondition, MovingShockEdge};
pub use field::{Field, Grid, GHOST};
pub use reconstruct::Reconstruction;

use crate::corner::{corner_flux, CornerStates};
use crate::error::{Error, Result};
use crate::euler::{Axis, FluxVector, GasModel};
use crate::midpoint::midpoint_flux;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Conventional K-CUSP-X: midpoint fluxes only.
    TwoState,
    /// GM-K-CUSP-X: midpoint and corner fluxes.
    GenuinelyMultidimensional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    /// Piecewise-constant data, forward Euler.
    First,
    /// Limited linear data, two-stage SSP Runge-Kutta.
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limiter {
    Minmod,
    VanLeer,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    pub scheme: Scheme,
    pub order: Order,
    pub cfl: f64,
    pub limiter: Limiter,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        Self {
            scheme: Scheme::GenuinelyMultidimensional,
            order: Order::Second,
            cfl: 0.5,
            limiter: Limiter::Minmod,
        }
    }
}

impl SchemeConfig {
    pub fn new(scheme: Scheme, order: Order, cfl: f64) -> Self {
        Self {
            scheme,
            order,
            cfl,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.cfl > 0.0 && self.cfl <= 1.0 {
            Ok(())
        } else {
            Err(Error::config(format!("cfl must lie in (0, 1], got {}", self.cfl)))
        }
    }
}

/// Simpson combination `(corner_a + 4 mid + corner_b) / 6`.
///
/// Written as a correction to `mid`, so that corners equal to the midpoint
/// flux return it bitwise.
#[inline]
pub fn assemble_interface_flux(corner_a: FluxVector, mid: FluxVector, corner_b: FluxVector) -> FluxVector {
    mid + ((corner_a - mid) + (corner_b - mid)) * (1.0 / 6.0)
}

/// Largest stable step, `cfl * min(dx / (|u| + a), dy / (|v| + a))` over the
/// interior, clipped so the step does not overshoot `t_final`.
pub fn compute_time_step(field: &Field, config: &SchemeConfig, gas: GasModel, t_final: Option<f64>) -> Result<f64> {
    let grid = field.grid;
    let mut dt = f64::INFINITY;
    for (i, j) in field.interior() {
        let s = field.primitive(i, j, gas)?;
        let a = s.sound_speed(gas);
        dt = dt.min(grid.dx / (s.u.abs() + a)).min(grid.dy / (s.v.abs() + a));
    }
    let mut dt = config.cfl * dt;
    if let Some(t_final) = t_final {
        let remaining = t_final - field.time;
        if remaining <= dt {
            dt = remaining.max(0.0);
        }
    }
    Ok(dt)
}

/// Interface fluxes of one evaluation of the spatial operator.
struct FluxSweep {
    /// x interfaces, `(nx + 1) * ny`, index `j * (nx + 1) + i` for the face
    /// between cells `i - 1` and `i`.
    fx: Vec<FluxVector>,
    /// y interfaces, `nx * (ny + 1)`, index `j * nx + i` for the face between
    /// cells `j - 1` and `j`.
    gy: Vec<FluxVector>,
}

/// How corner fluxes are obtained. `Midpoint` substitutes the adjacent
/// midpoint flux and exists to check that the assembly degenerates exactly
/// to the two-state update.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CornerSource {
    FourState,
    #[cfg(test)]
    Midpoint,
}

fn sweep(
    rec: &Reconstruction,
    nx: usize,
    ny: usize,
    scheme: Scheme,
    corners: CornerSource,
    gas: GasModel,
) -> FluxSweep {
    let (nxi, nyi) = (nx as isize, ny as isize);

    let mut fx = Vec::with_capacity((nx + 1) * ny);
    for j in 0..nyi {
        for i in 0..=nxi {
            fx.push(midpoint_flux(rec.east(i - 1, j), rec.west(i, j), gas, Axis::X));
        }
    }
    let mut gy = Vec::with_capacity(nx * (ny + 1));
    for j in 0..=nyi {
        for i in 0..nxi {
            gy.push(midpoint_flux(rec.north(i, j - 1), rec.south(i, j), gas, Axis::Y));
        }
    }

    if scheme == Scheme::TwoState {
        return FluxSweep { fx, gy };
    }

    let nodes_x = nx + 1;
    let mut node_f = Vec::with_capacity(nodes_x * (ny + 1));
    let mut node_g = Vec::with_capacity(nodes_x * (ny + 1));
    match corners {
        CornerSource::FourState => {
            for j in 0..=nyi {
                for i in 0..=nxi {
                    let states = CornerStates {
                        ld: rec.at(i - 1, j - 1, 0.5, 0.5),
                        rd: rec.at(i, j - 1, -0.5, 0.5),
                        lu: rec.at(i - 1, j, 0.5, -0.5),
                        ru: rec.at(i, j, -0.5, -0.5),
                    };
                    let (f, g) = corner_flux(&states, gas);
                    node_f.push(f);
                    node_g.push(g);
                }
            }
        }
        #[cfg(test)]
        CornerSource::Midpoint => {
            return assemble_with_midpoint_corners(&fx, &gy);
        }
    }

    let fx = (0..ny)
        .flat_map(|j| (0..=nx).map(move |i| (i, j)))
        .map(|(i, j)| {
            let below = node_f[j * nodes_x + i];
            let above = node_f[(j + 1) * nodes_x + i];
            assemble_interface_flux(above, fx[j * (nx + 1) + i], below)
        })
        .collect();
    let gy = (0..=ny)
        .flat_map(|j| (0..nx).map(move |i| (i, j)))
        .map(|(i, j)| {
            let left = node_g[j * nodes_x + i];
            let right = node_g[j * nodes_x + i + 1];
            assemble_interface_flux(left, gy[j * nx + i], right)
        })
        .collect();
    FluxSweep { fx, gy }
}

#[cfg(test)]
fn assemble_with_midpoint_corners(fx: &[FluxVector], gy: &[FluxVector]) -> FluxSweep {
    FluxSweep {
        fx: fx.iter().map(|&m| assemble_interface_flux(m, m, m)).collect(),
        gy: gy.iter().map(|&m| assemble_interface_flux(m, m, m)).collect(),
    }
}

/// `U + dt * L(U)` for the interior, where `L` is the flux divergence. Ghosts
/// of `field` must be filled.
fn euler_stage(field: &Field, config: &SchemeConfig, corners: CornerSource, gas: GasModel, dt: f64) -> Result<Field> {
    let grid = field.grid;
    let (nx, ny) = (grid.nx, grid.ny);
    let rec = Reconstruction::new(field, config.order, config.limiter, gas)?;
    let fluxes = sweep(&rec, nx, ny, config.scheme, corners, gas);
    let (cx, cy) = (dt / grid.dx, dt / grid.dy);

    let mut out = field.clone();
    for j in 0..ny {
        for i in 0..nx {
            let west = fluxes.fx[j * (nx + 1) + i];
            let east = fluxes.fx[j * (nx + 1) + i + 1];
            let south = fluxes.gy[j * nx + i];
            let north = fluxes.gy[(j + 1) * nx + i];
            let (ii, jj) = (i as isize, j as isize);
            let u = field
                .get(ii, jj)
                .add_scaled(west - east, cx)
                .add_scaled(south - north, cy);
            out.set(ii, jj, u);
        }
    }
    out.time = field.time + dt;
    Ok(out)
}

fn advance_with(
    field: &Field,
    config: &SchemeConfig,
    bcs: &BoundarySpec,
    gas: GasModel,
    dt: f64,
    corners: CornerSource,
) -> Result<Field> {
    let mut current = field.clone();
    apply_boundary_conditions(&mut current, bcs, gas);
    let mut stage = euler_stage(&current, config, corners, gas, dt)?;
    stage.check_positivity(gas)?;
    if config.order == Order::First {
        return Ok(stage);
    }

    apply_boundary_conditions(&mut stage, bcs, gas);
    let second = euler_stage(&stage, config, corners, gas, dt)?;
    let mut out = second;
    for (i, j) in field.interior() {
        out.set(i, j, field.get(i, j).combine(0.5, &out.get(i, j), 0.5));
    }
    out.time = field.time + dt;
    out.check_positivity(gas)?;
    Ok(out)
}

/// One time step of size `dt`: forward Euler for first order, two-stage SSP
/// Runge-Kutta (Heun form) for second order.
///
/// Fails with a positivity error naming the first offending cell; the input
/// field is left untouched so the caller still holds the last valid state.
pub fn advance(field: &Field, config: &SchemeConfig, bcs: &BoundarySpec, gas: GasModel, dt: f64) -> Result<Field> {
    advance_with(field, config, bcs, gas, dt, CornerSource::FourState)
}

/// Convenience driver bundling scheme, boundary conditions and gas.
#[derive(Debug, Clone)]
pub struct Solver {
    pub config: SchemeConfig,
    pub bcs: BoundarySpec,
    pub gas: GasModel,
}

/// Outcome of [`Solver::run`].
#[derive(Debug)]
pub struct RunOutcome {
    pub field: Field,
    pub steps: usize,
    /// Positivity failure that stopped the run; `field` is the last valid state.
    pub failure: Option<Error>,
}

impl Solver {
    pub fn new(config: SchemeConfig, bcs: BoundarySpec, gas: GasModel) -> Result<Self> {
        config.validate()?;
        bcs.validate()?;
        Ok(Self { config, bcs, gas })
    }

    pub fn step(&self, field: &Field, t_final: Option<f64>) -> Result<Field> {
        let dt = compute_time_step(field, &self.config, self.gas, t_final)?;
        advance(field, &self.config, &self.bcs, self.gas, dt)
    }

    /// Advance until `t_final` or `max_steps`, whichever comes first, calling
    /// `observe` after every accepted step. Positivity failures end the run
    /// and are reported in the outcome rather than as an error.
    pub fn run(
        &self,
        mut field: Field,
        t_final: Option<f64>,
        max_steps: Option<usize>,
        mut observe: impl FnMut(&Field, usize),
    ) -> RunOutcome {
        let mut steps = 0;
        loop {
            if let Some(t) = t_final {
                if field.time >= t * (1.0 - 1e-14) {
                    break;
                }
            }
            if max_steps.is_some_and(|m| steps >= m) {
                break;
            }
            match self.step(&field, t_final) {
                Ok(next) => {
                    field = next;
                    steps += 1;
                    observe(&field, steps);
                }
                Err(e) => {
                    return RunOutcome {
                        field,
                        steps,
                        failure: Some(e),
                    };
                }
            }
        }
        RunOutcome {
            field,
            steps,
            failure: None,
        }
    }
}
