//! Grid convergence of the isentropic vortex after one period.
//!
//! ```text
//! cargo run --release --example vortex_convergence -- 32 64 128
//! ```

use gmcusp::cases::{error_norms, exact_vortex_solution, init_case, order_of_accuracy, CaseKind, CaseSpec};
use gmcusp::solver::{Order, Scheme, SchemeConfig, Solver};
use gmcusp::GasModel;

fn main() -> gmcusp::Result<()> {
    let gas = GasModel::default();
    let mut levels: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if levels.is_empty() {
        levels = vec![32, 64, 128];
    }

    let mut previous = None;
    println!(
        "{:>6} {:>8} {:>12} {:>12} {:>8} {:>8}",
        "N", "steps", "L1", "Linf", "p(L1)", "p(Linf)"
    );
    for n in levels {
        let spec = CaseSpec::with_resolution(CaseKind::IsentropicVortex, n, n, gas)?;
        let (field, bcs) = init_case(&spec, gas)?;
        let config = SchemeConfig::new(Scheme::GenuinelyMultidimensional, Order::Second, spec.cfl);
        let out = Solver::new(config, bcs, gas)?.run(field, spec.t_final, None, |_, _| {});
        if let Some(e) = out.failure {
            return Err(e);
        }
        let exact = exact_vortex_solution(&spec, out.field.time, gas)?;
        let norms = error_norms(&out.field, &exact)?;
        let orders = match &previous {
            Some(coarse) => {
                let o = order_of_accuracy(coarse, &norms)?;
                format!("{:>8.3} {:>8.3}", o.l1, o.linf)
            }
            None => format!("{:>8} {:>8}", "-", "-"),
        };
        println!(
            "{n:>6} {:>8} {:>12.4e} {:>12.4e} {orders}",
            out.steps, norms.l1, norms.linf
        );
        previous = Some(norms);
    }
    Ok(())
}
