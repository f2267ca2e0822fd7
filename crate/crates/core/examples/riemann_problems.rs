//! The two four-quadrant Riemann problems with both fluxes.
//!
//! Writes `<dir>/riemann{1,2}_{gm,two_state}.csv`.
//!
//! ```text
//! cargo run --release --example riemann_problems -- [N] [cfl] [dir]
//! ```

use std::path::PathBuf;

use gmcusp::cases::{init_case, CaseKind, CaseSpec};
use gmcusp::io::{write_snapshot, SnapshotFormat};
use gmcusp::solver::{Order, Scheme, SchemeConfig, Solver};
use gmcusp::GasModel;

fn main() -> gmcusp::Result<()> {
    let gas = GasModel::default();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|a| a.parse().ok()).unwrap_or(200);
    let cfl: Option<f64> = args.get(1).and_then(|a| a.parse().ok());
    let dir = PathBuf::from(args.get(2).map(String::as_str).unwrap_or("output/riemann"));

    for kind in [CaseKind::RiemannProblem1, CaseKind::RiemannProblem2] {
        for (scheme, tag) in [
            (Scheme::GenuinelyMultidimensional, "gm"),
            (Scheme::TwoState, "two_state"),
        ] {
            let spec = CaseSpec::with_resolution(kind, n, n, gas)?;
            let (field, bcs) = init_case(&spec, gas)?;
            let config = SchemeConfig::new(scheme, Order::Second, cfl.unwrap_or(spec.cfl));
            let out = Solver::new(config, bcs, gas)?.run(field, spec.t_final, None, |_, _| {});

            let rho: Vec<f64> = out.field.interior().map(|(i, j)| out.field.get(i, j).rho).collect();
            let lo = rho.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = rho.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            print!(
                "{kind} {tag:<9} {n}x{n} cfl {:.2}: {} steps, t = {:.4}, rho in [{lo:.4}, {hi:.4}]",
                config.cfl, out.steps, out.field.time
            );
            match out.failure {
                Some(e) => println!("  FAILED: {e}"),
                None => println!(),
            }
            let path = dir.join(format!("{kind}_{tag}.csv"));
            write_snapshot(&out.field, gas, &path, SnapshotFormat::Csv)?;
        }
    }
    println!("snapshots in {}", dir.display());
    Ok(())
}
