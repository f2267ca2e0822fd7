//! A stationary contact discontinuity must stay exactly in place.
//!
//! ```text
//! cargo run --release --example stationary_contact -- [steps]
//! ```

use gmcusp::solver::{BoundarySpec, Field, Grid, Order, Scheme, SchemeConfig, Solver};
use gmcusp::{GasModel, PrimitiveState};

fn main() -> gmcusp::Result<()> {
    let gas = GasModel::default();
    let steps: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1000);
    let grid = Grid::new(100, 4, (0.0, 1.0), (0.0, 0.04))?;
    let initial = Field::from_fn(grid, gas, |x, _| {
        let rho = if x < 0.5 { 1.0 } else { 0.1 };
        PrimitiveState::new(rho, 0.0, 0.0, 1.0)
    });

    for scheme in [Scheme::TwoState, Scheme::GenuinelyMultidimensional] {
        for order in [Order::First, Order::Second] {
            let config = SchemeConfig::new(scheme, order, 0.5);
            let out = Solver::new(config, BoundarySpec::transmissive(), gas)?.run(
                initial.clone(),
                None,
                Some(steps),
                |_, _| {},
            );
            if let Some(e) = out.failure {
                return Err(e);
            }
            let drift = initial
                .interior()
                .map(|(i, j)| {
                    let (a, b) = (initial.get(i, j).to_array(), out.field.get(i, j).to_array());
                    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
                })
                .fold(0.0, f64::max);
            println!(
                "{scheme:?}, {order:?} order: max |U - U0| after {} steps = {drift:.3e}",
                out.steps
            );
        }
    }
    Ok(())
}
