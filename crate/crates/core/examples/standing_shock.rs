//! Seeded standing Mach 6 shock: shock-row scatter over time for both fluxes.
//!
//! ```text
//! cargo run --release --example standing_shock -- [steps]
//! ```

use gmcusp::cases::{assess_instability, init_case, CaseKind, CaseSpec, ShockReference};
use gmcusp::solver::{Order, Scheme, SchemeConfig, Solver};
use gmcusp::GasModel;

fn main() -> gmcusp::Result<()> {
    let gas = GasModel::default();
    let kind = CaseKind::StandingShock;
    let steps: Option<usize> = std::env::args().nth(1).and_then(|a| a.parse().ok());
    let reference = ShockReference::for_case(kind, gas)?;

    for scheme in [Scheme::TwoState, Scheme::GenuinelyMultidimensional] {
        let mut spec = CaseSpec::new(kind, gas)?;
        if steps.is_some() {
            spec.max_steps = steps;
        }
        let (field, bcs) = init_case(&spec, gas)?;
        let config = SchemeConfig::new(scheme, Order::First, spec.cfl);
        println!("{scheme:?}");
        let out = Solver::new(config, bcs, gas)?.run(field, None, spec.max_steps, |f, step| {
            if step % 2000 == 0 {
                let m = assess_instability(f, &reference, gas, false);
                println!(
                    "  step {step:>6}: stddev {:.3e} cells, max |v| {:.3e}",
                    m.shock_position_stddev, m.max_transverse_velocity
                );
            }
        });
        let m = assess_instability(&out.field, &reference, gas, out.failure.is_some());
        println!(
            "  final after {} steps: stddev {:.3e} cells, max |v| {:.3e}, blowup {}",
            out.steps, m.shock_position_stddev, m.max_transverse_velocity, m.blowup
        );
    }
    Ok(())
}
