//! Drive a run from configuration text, then read the CSV snapshot back.

use gmcusp::io::{parse_config_with_overrides, read_csv_file, run};

const CONFIG: &str = "\
case = vortex
grid = 32
t_final = 1.0

[output]
dir = output/snapshot_demo
formats = csv, vtk
every_steps = 20
";

fn main() -> gmcusp::Result<()> {
    let overrides: Vec<String> = std::env::args().skip(1).collect();
    let config = parse_config_with_overrides(CONFIG, &overrides)?;
    let summary = run(&config)?;
    println!("{}", summary.describe());
    for f in &summary.files {
        println!("wrote {}", f.display());
    }

    let dir = config.effective_output_dir();
    let snap = read_csv_file(&dir.join(format!("{}_final.csv", config.output.prefix)))?;
    let peak_drop = snap.rho.iter().copied().fold(f64::INFINITY, f64::min);
    println!(
        "read back {}x{} cells, minimum density {peak_drop:.6}",
        snap.nx, snap.ny
    );
    Ok(())
}
