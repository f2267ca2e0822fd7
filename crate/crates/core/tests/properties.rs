//! Property tests for the solver-level invariants.

use gmcusp::io::{parse_config, run};
use gmcusp::solver::{advance, BoundarySpec, Field, Grid, Order, Scheme, SchemeConfig, Solver};
use gmcusp::{GasModel, PrimitiveState};
use proptest::prelude::*;

fn gas() -> GasModel {
    GasModel::default()
}

fn scheme() -> impl Strategy<Value = Scheme> {
    prop_oneof![Just(Scheme::TwoState), Just(Scheme::GenuinelyMultidimensional)]
}

fn order() -> impl Strategy<Value = Order> {
    prop_oneof![Just(Order::First), Just(Order::Second)]
}

fn state() -> impl Strategy<Value = PrimitiveState> {
    (0.05..5.0f64, -3.0..3.0f64, -3.0..3.0f64, 0.05..20.0f64)
        .prop_map(|(rho, u, v, p)| PrimitiveState::new(rho, u, v, p))
}

/// Smooth periodic data with random amplitudes and phases.
fn smooth_field(amp: [f64; 4], phase: f64) -> Field {
    let grid = Grid::new(12, 10, (0.0, 1.0), (0.0, 1.0)).unwrap();
    let tau = std::f64::consts::TAU;
    Field::from_fn(grid, gas(), |x, y| {
        PrimitiveState::new(
            1.0 + amp[0] * (tau * x + phase).sin() * (tau * y).cos(),
            amp[1] * (tau * y).sin(),
            amp[2] * (tau * x + phase).cos(),
            1.0 + amp[3] * (tau * (x + y)).sin(),
        )
    })
}

fn amplitudes() -> impl Strategy<Value = [f64; 4]> {
    [0.0..0.5f64, -1.0..1.0f64, -1.0..1.0f64, 0.0..0.5f64]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn uniform_flow_is_a_fixed_point(s in state(), scheme in scheme(), order in order(), dt in 1e-4..1e-2f64) {
        let grid = Grid::new(6, 5, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let f = Field::uniform(grid, s, gas());
        for bcs in [BoundarySpec::periodic(), BoundarySpec::transmissive()] {
            let next = advance(&f, &SchemeConfig::new(scheme, order, 0.5), &bcs, gas(), dt).unwrap();
            for (i, j) in f.interior() {
                let (a, b) = (f.get(i, j).to_array(), next.get(i, j).to_array());
                for k in 0..4 {
                    prop_assert!((a[k] - b[k]).abs() <= 1e-14 * a[0].max(a[3]));
                }
            }
        }
    }

    #[test]
    fn periodic_runs_conserve_totals(amp in amplitudes(), phase in 0.0..6.3f64, scheme in scheme(), order in order()) {
        let f0 = smooth_field(amp, phase);
        let solver = Solver::new(SchemeConfig::new(scheme, order, 0.5), BoundarySpec::periodic(), gas()).unwrap();
        let out = solver.run(f0.clone(), None, Some(100), |_, _| {});
        prop_assert!(out.failure.is_none());
        let (a, b) = (f0.totals(), out.field.totals());
        for k in 0..4 {
            prop_assert!((a[k] - b[k]).abs() <= 1e-12 * a[k].abs().max(a[0]), "component {k}: {} vs {}", a[k], b[k]);
        }
    }

    #[test]
    fn runs_are_deterministic(amp in amplitudes(), phase in 0.0..6.3f64, scheme in scheme(), order in order()) {
        let f0 = smooth_field(amp, phase);
        let solver = Solver::new(SchemeConfig::new(scheme, order, 0.7), BoundarySpec::periodic(), gas()).unwrap();
        let a = solver.run(f0.clone(), None, Some(20), |_, _| {}).field;
        let b = solver.run(f0, None, Some(20), |_, _| {}).field;
        for (i, j) in a.interior() {
            prop_assert_eq!(a.get(i, j).to_array().map(f64::to_bits), b.get(i, j).to_array().map(f64::to_bits));
        }
    }

    #[test]
    fn two_state_keeps_y_uniform_shock_tubes_uniform(left in state(), right in state()) {
        let grid = Grid::new(40, 6, (0.0, 1.0), (0.0, 0.15)).unwrap();
        let tube = |s: PrimitiveState| PrimitiveState::new(s.rho, s.u, 0.0, s.p);
        let f0 = Field::from_fn(grid, gas(), |x, _| if x < 0.5 { tube(left) } else { tube(right) });
        let solver = Solver::new(SchemeConfig::new(Scheme::TwoState, Order::First, 0.4), BoundarySpec::transmissive(), gas()).unwrap();
        let out = solver.run(f0, None, Some(30), |_, _| {});
        let f = out.field;
        for (i, j) in f.interior() {
            prop_assert_eq!(f.get(i, j).to_array().map(f64::to_bits), f.get(i, 0).to_array().map(f64::to_bits));
            prop_assert_eq!(f.get(i, j).my, 0.0);
        }
    }
}

#[test]
fn report_totals_match_field() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = parse_config("case = riemann2\ngrid = 32\nt_final = 0.1\n").unwrap();
    config.output.dir = dir.path().to_path_buf();
    let summary = run(&config).unwrap();
    let totals = summary.field.totals();
    for (name, v) in ["mass", "momentum_x", "momentum_y", "energy"].iter().zip(totals) {
        let reported = summary.report.get_f64(&format!("totals.{name}")).unwrap();
        assert!((reported - v).abs() <= 1e-14 * v.abs().max(1.0), "{name}");
    }
}
