//! Test problems, exact solutions and diagnostics.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::euler::{GasModel, PrimitiveState};
use crate::solver::{BoundarySpec, EdgeCondition, Field, Grid, MovingShockEdge, Order, Scheme};

/// Strength of the isentropic vortex.
pub const VORTEX_STRENGTH: f64 = 5.0;

/// Quadrant data `(rho, p, u, v)` in the order
/// `x>0,y>0`, `x>0,y<0`, `x<0,y>0`, `x<0,y<0`.
pub const RIEMANN1_QUADRANTS: [[f64; 4]; 4] = [
    [1.5, 1.5, 0.0, 0.0],
    [0.5323, 0.3, 0.0, 1.206],
    [0.5323, 0.3, 1.206, 0.0],
    [0.1379, 0.029, 1.206, 1.206],
];

pub const RIEMANN2_QUADRANTS: [[f64; 4]; 4] = [
    [0.5313, 0.4, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.7276],
    [1.0, 1.0, 0.7276, 0.0],
    [0.8, 1.0, 0.0, 0.0],
];

pub const DMR_MACH: f64 = 10.0;
pub const DMR_X_FOOT: f64 = 1.0 / 6.0;
pub const DMR_ANGLE_DEG: f64 = 60.0;

/// Mach number of the shocks in the two instability problems.
pub const INSTABILITY_MACH: f64 = 6.0;
/// Amplitude of the alternating density seed of the odd-even problem.
pub const ODD_EVEN_AMPLITUDE: f64 = 1e-3;
/// Relative density seed of the standing-shock problem.
pub const STANDING_SHOCK_SEED: f64 = 1e-3;
/// Cells downstream of the mean shock position excluded from the transverse
/// velocity measurement.
pub const METRICS_SHOCK_GAP: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseKind {
    IsentropicVortex,
    RiemannProblem1,
    RiemannProblem2,
    DoubleMachReflection,
    OddEvenDecoupling,
    StandingShock,
}

impl CaseKind {
    pub const ALL: [CaseKind; 6] = [
        CaseKind::IsentropicVortex,
        CaseKind::RiemannProblem1,
        CaseKind::RiemannProblem2,
        CaseKind::DoubleMachReflection,
        CaseKind::OddEvenDecoupling,
        CaseKind::StandingShock,
    ];

    /// Name used in configuration files.
    pub fn name(self) -> &'static str {
        match self {
            CaseKind::IsentropicVortex => "vortex",
            CaseKind::RiemannProblem1 => "riemann1",
            CaseKind::RiemannProblem2 => "riemann2",
            CaseKind::DoubleMachReflection => "dmr",
            CaseKind::OddEvenDecoupling => "odd_even",
            CaseKind::StandingShock => "standing_shock",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CaseKind::IsentropicVortex => "isentropic vortex advected diagonally, periodic, exact solution known",
            CaseKind::RiemannProblem1 => "four-quadrant Riemann problem with shocks, t = 1.05",
            CaseKind::RiemannProblem2 => "four-quadrant Riemann problem with weak shocks and contacts, t = 0.5",
            CaseKind::DoubleMachReflection => "Mach 10 shock at 60 degrees hitting a reflecting wall, t = 0.2",
            CaseKind::OddEvenDecoupling => "Mach 6 shock running down a duct with a seeded centerline, t = 140",
            CaseKind::StandingShock => "Mach 6 standing normal shock with a seeded cell, 10000 steps",
        }
    }

    pub fn is_instability_case(self) -> bool {
        matches!(self, CaseKind::OddEvenDecoupling | CaseKind::StandingShock)
    }

    fn domain(self) -> ((f64, f64), (f64, f64)) {
        match self {
            CaseKind::IsentropicVortex => ((-5.0, 5.0), (-5.0, 5.0)),
            CaseKind::RiemannProblem1 | CaseKind::RiemannProblem2 => ((-1.0, 1.0), (-1.0, 1.0)),
            CaseKind::DoubleMachReflection => ((0.0, 4.0), (0.0, 1.0)),
            CaseKind::OddEvenDecoupling => ((0.0, 1000.0), (0.0, 25.0)),
            CaseKind::StandingShock => ((0.0, 50.0), (0.0, 25.0)),
        }
    }

    fn default_resolution(self) -> (usize, usize) {
        match self {
            CaseKind::IsentropicVortex => (64, 64),
            CaseKind::RiemannProblem1 | CaseKind::RiemannProblem2 => (2000, 2000),
            CaseKind::DoubleMachReflection => (1920, 480),
            CaseKind::OddEvenDecoupling => (800, 20),
            CaseKind::StandingShock => (50, 25),
        }
    }
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        let kind = match key.as_str() {
            "vortex" | "isentropic_vortex" => CaseKind::IsentropicVortex,
            "riemann1" | "rp1" => CaseKind::RiemannProblem1,
            "riemann2" | "rp2" => CaseKind::RiemannProblem2,
            "dmr" | "double_mach_reflection" => CaseKind::DoubleMachReflection,
            "odd_even" | "odd_even_decoupling" => CaseKind::OddEvenDecoupling,
            "standing_shock" => CaseKind::StandingShock,
            _ => return Err(Error::config(format!("unknown case `{s}`"))),
        };
        Ok(kind)
    }
}

/// A fully specified run of one of the test problems.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseSpec {
    pub kind: CaseKind,
    pub grid: Grid,
    pub bcs: BoundarySpec,
    pub t_final: Option<f64>,
    pub max_steps: Option<usize>,
    pub cfl: f64,
    pub scheme: Option<Scheme>,
    pub order: Option<Order>,
    /// Apply the instability seed (odd-even and standing-shock problems).
    pub seeded: bool,
}

impl CaseSpec {
    /// The problem at its default resolution.
    pub fn new(kind: CaseKind, gas: GasModel) -> Result<Self> {
        let (nx, ny) = kind.default_resolution();
        Self::with_resolution(kind, nx, ny, gas)
    }

    pub fn with_resolution(kind: CaseKind, nx: usize, ny: usize, gas: GasModel) -> Result<Self> {
        let (xr, yr) = kind.domain();
        let grid = Grid::new(nx, ny, xr, yr)?;
        let (t_final, max_steps, cfl, order) = match kind {
            CaseKind::IsentropicVortex => (Some(10.0), None, 0.5, Order::Second),
            CaseKind::RiemannProblem1 => (Some(1.05), None, 0.95, Order::Second),
            CaseKind::RiemannProblem2 => (Some(0.5), None, 0.95, Order::Second),
            CaseKind::DoubleMachReflection => (Some(0.2), None, 0.7, Order::Second),
            CaseKind::OddEvenDecoupling => (Some(140.0), None, 0.8, Order::First),
            CaseKind::StandingShock => (None, Some(10_000), 0.8, Order::First),
        };
        Ok(Self {
            kind,
            grid,
            bcs: default_bcs(kind, gas),
            t_final,
            max_steps,
            cfl,
            scheme: None,
            order: Some(order),
            seeded: true,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.bcs.validate()?;
        if self.t_final.is_none() && self.max_steps.is_none() {
            return Err(Error::config("a case needs t_final or max_steps"));
        }
        if let Some(t) = self.t_final {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::config(format!("t_final must be positive, got {t}")));
            }
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::config(format!("cfl must lie in (0, 1], got {}", self.cfl)));
        }
        let (xr, yr) = self.kind.domain();
        let g = &self.grid;
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * (1.0 + b.abs());
        if !(close(g.x0, xr.0) && close(g.x_max(), xr.1) && close(g.y0, yr.0) && close(g.y_max(), yr.1)) {
            return Err(Error::config(format!("grid does not cover the {} domain", self.kind)));
        }
        Ok(())
    }
}

fn default_bcs(kind: CaseKind, gas: GasModel) -> BoundarySpec {
    match kind {
        CaseKind::IsentropicVortex => BoundarySpec::periodic(),
        CaseKind::RiemannProblem1 | CaseKind::RiemannProblem2 => BoundarySpec::transmissive(),
        CaseKind::DoubleMachReflection => {
            let (pre, post) = dmr_states(gas);
            let shock = MovingShockEdge {
                x_foot: DMR_X_FOOT,
                angle: DMR_ANGLE_DEG.to_radians(),
                speed: DMR_MACH * pre.sound_speed(gas),
                y_edge: 1.0,
                post,
                pre,
            };
            BoundarySpec {
                left: EdgeCondition::FixedState(post),
                right: EdgeCondition::Transmissive,
                bottom: EdgeCondition::Piecewise {
                    split: DMR_X_FOOT,
                    below: Box::new(EdgeCondition::FixedState(post)),
                    above: Box::new(EdgeCondition::ReflectiveWall),
                },
                top: EdgeCondition::PostShockTimeDependent(shock),
            }
        }
        CaseKind::OddEvenDecoupling => BoundarySpec {
            left: EdgeCondition::Transmissive,
            right: EdgeCondition::Transmissive,
            bottom: EdgeCondition::ReflectiveWall,
            top: EdgeCondition::ReflectiveWall,
        },
        CaseKind::StandingShock => {
            let (up, down) = standing_shock_states(gas);
            BoundarySpec {
                left: EdgeCondition::SupersonicInflow(up),
                right: EdgeCondition::FixedState(down),
                bottom: EdgeCondition::Periodic,
                top: EdgeCondition::Periodic,
            }
        }
    }
}

/// Density and pressure ratios across a normal shock of upstream Mach `mach`.
pub fn normal_shock_ratios(mach: f64, gas: GasModel) -> (f64, f64) {
    let g = gas.gamma();
    let m2 = mach * mach;
    let rho_ratio = (g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0);
    let p_ratio = 1.0 + 2.0 * g / (g + 1.0) * (m2 - 1.0);
    (rho_ratio, p_ratio)
}

/// Post-shock state behind a shock of Mach `mach` running in `+x` into the
/// quiescent state `pre`.
pub fn moving_shock_state(pre: PrimitiveState, mach: f64, gas: GasModel) -> PrimitiveState {
    let (r, q) = normal_shock_ratios(mach, gas);
    let speed = mach * pre.sound_speed(gas);
    PrimitiveState::new(pre.rho * r, speed * (1.0 - 1.0 / r), 0.0, pre.p * q)
}

/// Downstream state of a steady normal shock fed by `upstream` moving in `+x`.
pub fn standing_shock_downstream(upstream: PrimitiveState, gas: GasModel) -> PrimitiveState {
    let mach = upstream.u / upstream.sound_speed(gas);
    let (r, q) = normal_shock_ratios(mach, gas);
    PrimitiveState::new(upstream.rho * r, upstream.u / r, 0.0, upstream.p * q)
}

/// Pre- and post-shock states of the double Mach reflection.
pub fn dmr_states(gas: GasModel) -> (PrimitiveState, PrimitiveState) {
    let pre = PrimitiveState::new(1.4, 0.0, 0.0, 1.0);
    let normal = moving_shock_state(pre, DMR_MACH, gas);
    // Shock normal points 30 degrees below the x axis.
    let theta = (90.0 - DMR_ANGLE_DEG).to_radians();
    let post = PrimitiveState::new(normal.rho, normal.u * theta.cos(), -normal.u * theta.sin(), normal.p);
    (pre, post)
}

/// Upstream and downstream states of the standing-shock problem.
pub fn standing_shock_states(gas: GasModel) -> (PrimitiveState, PrimitiveState) {
    let a1 = gas.gamma().sqrt();
    let up = PrimitiveState::new(1.0, INSTABILITY_MACH * a1, 0.0, 1.0);
    (up, standing_shock_downstream(up, gas))
}

/// Quiescent and post-shock states of the odd-even problem.
pub fn odd_even_states(gas: GasModel) -> (PrimitiveState, PrimitiveState) {
    let pre = PrimitiveState::new(1.4, 0.0, 0.0, 1.0);
    (pre, moving_shock_state(pre, INSTABILITY_MACH, gas))
}

fn quadrant_state(table: &[[f64; 4]; 4], x: f64, y: f64) -> PrimitiveState {
    let row = match (x > 0.0, y > 0.0) {
        (true, true) => 0,
        (true, false) => 1,
        (false, true) => 2,
        (false, false) => 3,
    };
    let [rho, p, u, v] = table[row];
    PrimitiveState::new(rho, u, v, p)
}

/// Vortex state at the point `(x, y)` relative to the vortex center.
pub fn vortex_state(dx: f64, dy: f64, gas: GasModel) -> PrimitiveState {
    let g = gas.gamma();
    let eps = VORTEX_STRENGTH;
    let r2 = dx * dx + dy * dy;
    let du = eps / (2.0 * PI) * (0.5 * (1.0 - r2)).exp();
    let dt = -(g - 1.0) / (8.0 * g * PI * PI) * eps * eps * (1.0 - r2).exp();
    let rho = (1.0 + dt).powf(1.0 / (g - 1.0));
    PrimitiveState::new(rho, 1.0 - du * dy, 1.0 + du * dx, rho.powf(g))
}

/// Wrap `d` into `[-period/2, period/2)`.
fn minimum_image(d: f64, period: f64) -> f64 {
    d - period * (d / period + 0.5).floor()
}

fn vortex_field(grid: Grid, time: f64, gas: GasModel) -> Field {
    let (lx, ly) = (grid.x_max() - grid.x0, grid.y_max() - grid.y0);
    let (cx, cy) = (0.5 * (grid.x0 + grid.x_max()), 0.5 * (grid.y0 + grid.y_max()));
    let mut f = Field::from_fn(grid, gas, |x, y| {
        vortex_state(minimum_image(x - cx - time, lx), minimum_image(y - cy - time, ly), gas)
    });
    f.time = time;
    f
}

/// Initial field and boundary conditions of a case.
pub fn init_case(spec: &CaseSpec, gas: GasModel) -> Result<(Field, BoundarySpec)> {
    spec.validate()?;
    let grid = spec.grid;
    let field = match spec.kind {
        CaseKind::IsentropicVortex => vortex_field(grid, 0.0, gas),
        CaseKind::RiemannProblem1 => Field::from_fn(grid, gas, |x, y| quadrant_state(&RIEMANN1_QUADRANTS, x, y)),
        CaseKind::RiemannProblem2 => Field::from_fn(grid, gas, |x, y| quadrant_state(&RIEMANN2_QUADRANTS, x, y)),
        CaseKind::DoubleMachReflection => {
            let (pre, post) = dmr_states(gas);
            let slope = DMR_ANGLE_DEG.to_radians().tan();
            Field::from_fn(grid, gas, |x, y| if x < DMR_X_FOOT + y / slope { post } else { pre })
        }
        CaseKind::OddEvenDecoupling => {
            let (pre, post) = odd_even_states(gas);
            let x_shock = grid.x0 + 10.0 * grid.dx;
            let mut f = Field::from_fn(grid, gas, |x, _| if x < x_shock { post } else { pre });
            if spec.seeded {
                let centre = grid.ny as isize / 2;
                for j in [centre - 1, centre] {
                    for i in 10..grid.nx as isize {
                        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                        let s = PrimitiveState::new(pre.rho + sign * ODD_EVEN_AMPLITUDE, pre.u, pre.v, pre.p);
                        f.set(i, j, s.to_conserved(gas));
                    }
                }
            }
            f
        }
        CaseKind::StandingShock => {
            let (up, down) = standing_shock_states(gas);
            // The shock sits at the center of column `nx / 2`, whose cells
            // hold the mean of the two conserved states.
            let ic = (grid.nx / 2) as isize;
            let x_shock = grid.x0 + ic as f64 * grid.dx;
            let mut f = Field::from_fn(grid, gas, |x, _| if x < x_shock { up } else { down });
            let mixed = up.to_conserved(gas).combine(0.5, &down.to_conserved(gas), 0.5);
            for j in 0..grid.ny as isize {
                f.set(ic, j, mixed);
            }
            if spec.seeded {
                let jc = (grid.ny / 2) as isize;
                let mut c = mixed;
                c.rho *= 1.0 + STANDING_SHOCK_SEED;
                f.set(ic, jc, c);
            }
            f
        }
    };
    Ok((field, spec.bcs.clone()))
}

/// The initial vortex translated by `(time, time)` with periodic wrap.
pub fn exact_vortex_solution(spec: &CaseSpec, time: f64, gas: GasModel) -> Result<Field> {
    if spec.kind != CaseKind::IsentropicVortex {
        return Err(Error::config(format!("no exact solution for case {}", spec.kind)));
    }
    Ok(vortex_field(spec.grid, time, gas))
}

/// Density error norms: `l1` is the mean absolute error over cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms {
    pub l1: f64,
    pub linf: f64,
    pub dx: f64,
}

pub fn error_norms(field: &Field, exact: &Field) -> Result<ErrorNorms> {
    if !field.grid.same_shape(&exact.grid) {
        return Err(Error::Shape(format!(
            "{}x{} field against {}x{} reference",
            field.grid.nx, field.grid.ny, exact.grid.nx, exact.grid.ny
        )));
    }
    let mut sum = 0.0;
    let mut max: f64 = 0.0;
    for (i, j) in field.interior() {
        let d = (field.get(i, j).rho - exact.get(i, j).rho).abs();
        sum += d;
        max = max.max(d);
    }
    let n = (field.grid.nx * field.grid.ny) as f64;
    Ok(ErrorNorms {
        l1: sum / n,
        linf: max,
        dx: field.grid.dx,
    })
}

/// `(log10 eta2 - log10 eta1) / (log10 dx2 - log10 dx1)`.
pub fn observed_order(eta1: f64, dx1: f64, eta2: f64, dx2: f64) -> Result<f64> {
    if !(eta1 > 0.0 && eta2 > 0.0) {
        return Err(Error::Domain(format!(
            "error norms must be positive, got {eta1} and {eta2}"
        )));
    }
    if !(dx1 > 0.0 && dx2 > 0.0) || dx1 == dx2 {
        return Err(Error::Domain(format!(
            "spacings {dx1} and {dx2} do not define an order"
        )));
    }
    Ok((eta2.log10() - eta1.log10()) / (dx2.log10() - dx1.log10()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orders {
    pub l1: f64,
    pub linf: f64,
}

pub fn order_of_accuracy(coarse: &ErrorNorms, fine: &ErrorNorms) -> Result<Orders> {
    if fine.dx >= coarse.dx {
        return Err(Error::Domain(format!(
            "fine spacing {} is not below {}",
            fine.dx, coarse.dx
        )));
    }
    Ok(Orders {
        l1: observed_order(coarse.l1, coarse.dx, fine.l1, fine.dx)?,
        linf: observed_order(coarse.linf, coarse.dx, fine.linf, fine.dx)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstabilityMetrics {
    pub max_transverse_velocity: f64,
    /// Population standard deviation of the per-row shock positions, in cells.
    pub shock_position_stddev: f64,
    pub mean_shock_position: f64,
    pub blowup: bool,
}

impl InstabilityMetrics {
    pub fn blown_up() -> Self {
        Self {
            max_transverse_velocity: f64::INFINITY,
            shock_position_stddev: f64::INFINITY,
            mean_shock_position: f64::NAN,
            blowup: true,
        }
    }
}

/// Densities on either side of a shock and the side the shock runs into.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockReference {
    pub rho_pre: f64,
    pub rho_post: f64,
    /// Pre-shock gas lies at large x.
    pub pre_on_right: bool,
}

impl ShockReference {
    pub fn for_case(kind: CaseKind, gas: GasModel) -> Result<Self> {
        match kind {
            CaseKind::OddEvenDecoupling => {
                let (pre, post) = odd_even_states(gas);
                Ok(Self {
                    rho_pre: pre.rho,
                    rho_post: post.rho,
                    pre_on_right: true,
                })
            }
            CaseKind::StandingShock => {
                let (up, down) = standing_shock_states(gas);
                Ok(Self {
                    rho_pre: up.rho,
                    rho_post: down.rho,
                    pre_on_right: false,
                })
            }
            other => Err(Error::config(format!("{other} is not a shock-instability case"))),
        }
    }
}

/// Per-row shock positions in cell units (cell `i` centered at `i`).
///
/// Each row is scanned from the pre-shock side; the position is the linear
/// interpolation of the first crossing of the mean of the two densities.
pub fn shock_positions(field: &Field, reference: &ShockReference) -> Result<Vec<f64>> {
    let (nx, ny) = (field.grid.nx as isize, field.grid.ny as isize);
    let threshold = 0.5 * (reference.rho_pre + reference.rho_post);
    let post_side = |rho: f64| (rho - threshold) * (reference.rho_post - threshold) >= 0.0;
    let order: Vec<isize> = if reference.pre_on_right {
        (0..nx).rev().collect()
    } else {
        (0..nx).collect()
    };
    (0..ny)
        .map(|j| {
            let mut prev: Option<(isize, f64)> = None;
            for &i in &order {
                let rho = field.get(i, j).rho;
                if post_side(rho) {
                    return match prev {
                        Some((ip, rp)) => {
                            let w = (threshold - rp) / (rho - rp);
                            Ok(ip as f64 + w * (i - ip) as f64)
                        }
                        None => Err(Error::ShockNotFound { row: j as usize }),
                    };
                }
                prev = Some((i, rho));
            }
            Err(Error::ShockNotFound { row: j as usize })
        })
        .collect()
}

/// Shock-planarity and transverse-velocity measures for a shock problem.
///
/// A field with non-finite values reports `blowup`. A row without a shock
/// crossing is an error.
pub fn instability_metrics(field: &Field, reference: &ShockReference, gas: GasModel) -> Result<InstabilityMetrics> {
    if field.has_non_finite() {
        return Ok(InstabilityMetrics::blown_up());
    }
    let positions = shock_positions(field, reference)?;
    let n = positions.len() as f64;
    let mean = positions.iter().sum::<f64>() / n;
    let var = positions.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;

    let mut max_v: f64 = 0.0;
    for (i, j) in field.interior() {
        let behind = if reference.pre_on_right {
            (i as f64) < mean - METRICS_SHOCK_GAP
        } else {
            (i as f64) > mean + METRICS_SHOCK_GAP
        };
        if behind {
            let s = field.primitive(i, j, gas)?;
            max_v = max_v.max(s.v.abs());
        }
    }
    Ok(InstabilityMetrics {
        max_transverse_velocity: max_v,
        shock_position_stddev: var.sqrt(),
        mean_shock_position: mean,
        blowup: false,
    })
}

/// Metrics that never fail: missing shocks, invalid states and a solver
/// failure (`failed`) all count as blowup. When the field is still finite the
/// measured values are kept alongside the flag.
pub fn assess_instability(
    field: &Field,
    reference: &ShockReference,
    gas: GasModel,
    failed: bool,
) -> InstabilityMetrics {
    match instability_metrics(field, reference, gas) {
        Ok(mut m) => {
            m.blowup |= failed;
            m
        }
        Err(e) => {
            log::debug!("instability metrics unavailable: {e}");
            InstabilityMetrics::blown_up()
        }
    }
}
