//! Odd-even decoupling of a moving Mach 6 shock in a duct.
//!
//! ```text
//! cargo run --release --example odd_even_decoupling -- [t_final]
//! ```

use gmcusp::cases::{assess_instability, init_case, CaseKind, CaseSpec, ShockReference};
use gmcusp::solver::{Order, Scheme, SchemeConfig, Solver};
use gmcusp::GasModel;

fn main() -> gmcusp::Result<()> {
    let gas = GasModel::default();
    let kind = CaseKind::OddEvenDecoupling;
    let t_final: Option<f64> = std::env::args().nth(1).and_then(|a| a.parse().ok());
    let reference = ShockReference::for_case(kind, gas)?;

    for scheme in [Scheme::TwoState, Scheme::GenuinelyMultidimensional] {
        let mut spec = CaseSpec::new(kind, gas)?;
        if t_final.is_some() {
            spec.t_final = t_final;
        }
        let (field, bcs) = init_case(&spec, gas)?;
        let config = SchemeConfig::new(scheme, Order::First, spec.cfl);
        let out = Solver::new(config, bcs, gas)?.run(field, spec.t_final, None, |_, _| {});
        let m = assess_instability(&out.field, &reference, gas, out.failure.is_some());
        println!(
            "{scheme:?}: {} steps, t = {:.2}, shock at x = {:.2}, max |v| = {:.3e}, stddev = {:.3e} cells, blowup = {}",
            out.steps,
            out.field.time,
            m.mean_shock_position,
            m.max_transverse_velocity,
            m.shock_position_stddev,
            m.blowup
        );
    }
    Ok(())
}
