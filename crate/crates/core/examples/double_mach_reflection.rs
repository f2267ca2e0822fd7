//! Double Mach reflection on `[0,4] x [0,1]` at 4:1 aspect.
//!
//! ```text
//! cargo run --release --example double_mach_reflection -- [NX] [gm|two_state]
//! ```

use gmcusp::cases::{init_case, CaseKind, CaseSpec};
use gmcusp::io::{write_snapshot, SnapshotFormat};
use gmcusp::solver::{Order, Scheme, SchemeConfig, Solver};
use gmcusp::GasModel;

fn main() -> gmcusp::Result<()> {
    let gas = GasModel::default();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let nx: usize = args.first().and_then(|a| a.parse().ok()).unwrap_or(240);
    let scheme = match args.get(1).map(String::as_str) {
        Some("two_state") => Scheme::TwoState,
        _ => Scheme::GenuinelyMultidimensional,
    };

    let spec = CaseSpec::with_resolution(CaseKind::DoubleMachReflection, nx, nx / 4, gas)?;
    let (field, bcs) = init_case(&spec, gas)?;
    let config = SchemeConfig::new(scheme, Order::Second, spec.cfl);
    let out = Solver::new(config, bcs, gas)?.run(field, spec.t_final, None, |f, step| {
        if step % 200 == 0 {
            println!("  step {step}, t = {:.4}", f.time);
        }
    });
    if let Some(e) = out.failure {
        return Err(e);
    }
    let peak = out
        .field
        .interior()
        .map(|(i, j)| out.field.get(i, j).rho)
        .fold(0.0, f64::max);
    println!(
        "{:?} {}x{}: {} steps to t = {:.3}, peak density {peak:.3}",
        scheme,
        nx,
        nx / 4,
        out.steps,
        out.field.time
    );

    let path = std::path::Path::new("output/dmr/dmr_final.vtk");
    write_snapshot(&out.field, gas, path, SnapshotFormat::Vtk)?;
    println!("wrote {}", path.display());
    Ok(())
}
