//! Quick invariant suite behind the `check` command.

use crate::corner::{corner_flux, CornerStates};
use crate::euler::{euler_flux, Axis, FluxVector, GasModel, PrimitiveState};
use crate::midpoint::midpoint_flux;
use crate::solver::{advance, BoundarySpec, EdgeCondition, Field, Grid, Order, Scheme, SchemeConfig, Solver};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn result(name: &'static str, worst: f64, tol: f64) -> CheckResult {
    CheckResult {
        name,
        passed: worst <= tol,
        detail: format!("worst {worst:.3e}, tolerance {tol:.0e}"),
    }
}

fn rel_diff(a: FluxVector, b: FluxVector) -> f64 {
    (a - b).max_abs() / b.max_abs().max(1e-300)
}

/// Deterministic sweep over a lattice of physical states.
fn state_lattice() -> impl Iterator<Item = PrimitiveState> {
    let rhos = [0.125, 1.0, 7.5];
    let vels = [-3.0, -0.4, 0.0, 0.9, 4.0];
    let ps = [0.1, 1.0, 40.0];
    rhos.into_iter().flat_map(move |rho| {
        vels.into_iter().flat_map(move |u| {
            vels.into_iter()
                .flat_map(move |v| ps.into_iter().map(move |p| PrimitiveState::new(rho, u, v, p)))
        })
    })
}

const SCHEMES: [Scheme; 2] = [Scheme::TwoState, Scheme::GenuinelyMultidimensional];

fn free_stream(gas: GasModel) -> CheckResult {
    let grid = Grid::new(12, 10, (0.0, 1.0), (0.0, 1.0)).expect("valid grid");
    let s = PrimitiveState::new(1.3, 0.7, -0.4, 2.1);
    let f = Field::uniform(grid, s, gas);
    let mut worst: f64 = 0.0;
    for scheme in SCHEMES {
        for order in [Order::First, Order::Second] {
            let cfg = SchemeConfig::new(scheme, order, 0.5);
            let next = advance(&f, &cfg, &BoundarySpec::transmissive(), gas, 0.01).expect("uniform step");
            for (i, j) in f.interior() {
                let (a, b) = (f.get(i, j).to_array(), next.get(i, j).to_array());
                for k in 0..4 {
                    worst = worst.max((a[k] - b[k]).abs() / a[k].abs().max(1.0));
                }
            }
        }
    }
    result("free-stream preservation", worst, 1e-14)
}

fn stationary_contact(gas: GasModel) -> CheckResult {
    let grid = Grid::new(100, 4, (0.0, 1.0), (0.0, 0.04)).expect("valid grid");
    let f0 = Field::from_fn(grid, gas, |x, _| {
        PrimitiveState::new(if x < 0.5 { 1.0 } else { 0.125 }, 0.0, 0.0, 1.0)
    });
    let mut worst: f64 = 0.0;
    for scheme in SCHEMES {
        let solver = Solver::new(
            SchemeConfig::new(scheme, Order::First, 0.5),
            BoundarySpec::transmissive(),
            gas,
        )
        .expect("valid solver");
        let out = solver.run(f0.clone(), None, Some(1000), |_, _| {});
        if out.failure.is_some() {
            worst = f64::INFINITY;
        }
        for (i, j) in f0.interior() {
            worst = worst.max((out.field.get(i, j).rho - f0.get(i, j).rho).abs());
        }
    }
    result("stationary contact, 1000 steps", worst, 1e-12)
}

fn consistency(gas: GasModel) -> CheckResult {
    let mut worst: f64 = 0.0;
    for s in state_lattice() {
        for axis in [Axis::X, Axis::Y] {
            worst = worst.max(rel_diff(midpoint_flux(s, s, gas, axis), euler_flux(s, gas, axis)));
        }
        let (f, g) = corner_flux(&CornerStates::uniform(s), gas);
        worst = worst.max(rel_diff(f, euler_flux(s, gas, Axis::X)));
        worst = worst.max(rel_diff(g, euler_flux(s, gas, Axis::Y)));
    }
    result("flux consistency", worst, 1e-13)
}

fn conservation(gas: GasModel) -> CheckResult {
    let grid = Grid::new(16, 12, (0.0, 1.0), (0.0, 1.0)).expect("valid grid");
    let tau = std::f64::consts::TAU;
    let f0 = Field::from_fn(grid, gas, |x, y| {
        PrimitiveState::new(
            1.0 + 0.3 * (tau * x).sin() * (tau * y).cos(),
            0.5 + 0.2 * (tau * y).sin(),
            -0.3 + 0.1 * (tau * x).cos(),
            1.0 + 0.2 * (tau * (x + y)).sin(),
        )
    });
    let mut worst: f64 = 0.0;
    for scheme in SCHEMES {
        let solver = Solver::new(
            SchemeConfig::new(scheme, Order::Second, 0.5),
            BoundarySpec::periodic(),
            gas,
        )
        .expect("valid solver");
        let out = solver.run(f0.clone(), None, Some(100), |_, _| {});
        let (a, b) = (f0.totals(), out.field.totals());
        for k in 0..4 {
            worst = worst.max((a[k] - b[k]).abs() / a[k].abs().max(a[0]));
        }
    }
    result("periodic conservation, 100 steps", worst, 1e-12)
}

fn supersonic_upwinding(gas: GasModel) -> CheckResult {
    let base = PrimitiveState::new(1.0, 0.0, 0.0, 1.0);
    let s = PrimitiveState::new(1.0, 3.0 * base.sound_speed(gas), 0.0, 1.0);
    let exact = euler_flux(s, gas, Axis::X);
    let (f, _) = corner_flux(&CornerStates::uniform(s), gas);
    let worst = rel_diff(midpoint_flux(s, s, gas, Axis::X), exact).max(rel_diff(f, exact));
    result("supersonic one-sided flux", worst, 1e-14)
}

fn reflective_symmetry(gas: GasModel) -> CheckResult {
    // Flow into a wall: the mirrored ghost must keep the normal mass flux zero.
    let grid = Grid::new(8, 8, (0.0, 1.0), (0.0, 1.0)).expect("valid grid");
    let f = Field::uniform(grid, PrimitiveState::new(1.0, 0.0, -0.5, 1.0), gas);
    let bcs = BoundarySpec {
        bottom: EdgeCondition::ReflectiveWall,
        top: EdgeCondition::Transmissive,
        ..BoundarySpec::periodic()
    };
    let next = advance(
        &f,
        &SchemeConfig::new(Scheme::GenuinelyMultidimensional, Order::First, 0.5),
        &bcs,
        gas,
        0.01,
    )
    .expect("wall step");
    let mass_before = f.totals()[0];
    let mass_after = next.totals()[0];
    // Mass can only enter through the top, at rate rho |v| per unit length.
    let inflow = 1.0 * 0.5 * 0.01;
    result(
        "reflective wall mass balance",
        ((mass_after - mass_before) - inflow).abs(),
        1e-14,
    )
}

/// Run the invariant suite; every check takes well under a second.
pub fn run_checks(gas: GasModel) -> Vec<CheckResult> {
    vec![
        free_stream(gas),
        consistency(gas),
        supersonic_upwinding(gas),
        stationary_contact(gas),
        conservation(gas),
        reflective_symmetry(gas),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        for c in run_checks(GasModel::default()) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
