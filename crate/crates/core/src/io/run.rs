//! Running a configured case and reporting on it.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::cases::{
    assess_instability, error_norms, exact_vortex_solution, init_case, order_of_accuracy, CaseKind, CaseSpec,
    ErrorNorms, ShockReference,
};
use crate::error::{Error, Result};
use crate::solver::{Field, Solver};

use super::config::{Cadence, RunConfig};
use super::snapshot::write_snapshot;

/// Ordered `key = value` report.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.entries.push((key.into(), value.to_string()));
    }

    /// Floats are written with 17 significant digits.
    pub fn push_f64(&mut self, key: impl Into<String>, value: f64) {
        self.push(key, format!("{value:.16e}"));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn get_f64(&self, key: &str) -> Option<f64> {
        self.get(key).and_then(|v| v.parse().ok())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// Parse text produced by `Display`.
    pub fn parse(text: &str) -> Self {
        let entries = text
            .lines()
            .filter_map(|l| l.split_once(" = "))
            .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
            .collect();
        Self { entries }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

/// Result of [`run`]. `success` is false after a positivity failure, which is
/// reported rather than returned as an error.
#[derive(Debug)]
pub struct RunSummary {
    pub report: Report,
    pub success: bool,
    pub field: Field,
    pub files: Vec<PathBuf>,
}

impl RunSummary {
    /// Short human-readable digest of the report.
    pub fn describe(&self) -> String {
        let r = &self.report;
        let mut s = format!(
            "{} ({}, {} order) on {}: {} steps to t = {}",
            r.get("case").unwrap_or("?"),
            r.get("scheme").unwrap_or("?"),
            r.get("order").unwrap_or("?"),
            r.get("grid").unwrap_or("?"),
            r.get("steps").unwrap_or("?"),
            r.get_f64("time").map(|t| format!("{t:.6}")).unwrap_or_default(),
        );
        if let Some(e) = r.get("failure") {
            s.push_str(&format!("\n  FAILED: {e}"));
        }
        if let (Some(l1), Some(linf)) = (r.get_f64("norm.l1"), r.get_f64("norm.linf")) {
            s.push_str(&format!("\n  density error: L1 {l1:.4e}, Linf {linf:.4e}"));
        }
        if let Some(sd) = r.get_f64("metrics.shock_position_stddev") {
            s.push_str(&format!(
                "\n  shock stddev {sd:.3e} cells, max |v| behind shock {:.3e}, blowup {}",
                r.get_f64("metrics.max_transverse_velocity").unwrap_or(f64::NAN),
                r.get("metrics.blowup").unwrap_or("?"),
            ));
        }
        for (k, v) in r.entries().iter().filter(|(k, _)| k.starts_with("order.")) {
            s.push_str(&format!("\n  {k} = {v}"));
        }
        s.push_str(&format!("\n  wall time {} s", r.get("wall_time_s").unwrap_or("?")));
        s
    }
}

fn snapshot_paths(dir: &Path, prefix: &str, tag: &str, config: &RunConfig) -> Vec<(PathBuf, super::SnapshotFormat)> {
    config
        .output
        .formats
        .iter()
        .map(|&f| (dir.join(format!("{prefix}_{tag}.{}", f.extension())), f))
        .collect()
}

fn scheme_name(config: &RunConfig) -> &'static str {
    match config.scheme.scheme {
        crate::solver::Scheme::TwoState => "two_state",
        crate::solver::Scheme::GenuinelyMultidimensional => "gm",
    }
}

fn order_name(config: &RunConfig) -> &'static str {
    match config.scheme.order {
        crate::solver::Order::First => "first",
        crate::solver::Order::Second => "second",
    }
}

struct SingleRun {
    field: Field,
    steps: usize,
    failure: Option<Error>,
    files: Vec<PathBuf>,
}

fn run_single(config: &RunConfig, case: &CaseSpec, dir: &Path, write: bool) -> Result<SingleRun> {
    let gas = config.gas;
    let (field, bcs) = init_case(case, gas)?;
    let solver = Solver::new(config.scheme, bcs, gas)?;
    let prefix = &config.output.prefix;
    let mut files = Vec::new();
    let mut io_error: Option<Error> = None;
    let mut next_time = match config.output.cadence {
        Cadence::Time(dt) => dt,
        _ => f64::INFINITY,
    };

    let outcome = solver.run(field, case.t_final, case.max_steps, |f, step| {
        if !write || io_error.is_some() {
            return;
        }
        let due = match config.output.cadence {
            Cadence::FinalOnly => false,
            Cadence::Steps(n) => step % n == 0,
            Cadence::Time(dt) => {
                let due = f.time >= next_time;
                while next_time <= f.time {
                    next_time += dt;
                }
                due
            }
        };
        if due {
            for (path, format) in snapshot_paths(dir, prefix, &format!("{step:07}"), config) {
                match write_snapshot(f, gas, &path, format) {
                    Ok(()) => files.push(path),
                    Err(e) => io_error = Some(e),
                }
            }
        }
    });
    if let Some(e) = io_error {
        return Err(e);
    }
    if write {
        for (path, format) in snapshot_paths(dir, prefix, "final", config) {
            write_snapshot(&outcome.field, gas, &path, format)?;
            files.push(path);
        }
    }
    match outcome.failure {
        Some(e) if !e.is_positivity() => Err(e),
        failure => Ok(SingleRun {
            field: outcome.field,
            steps: outcome.steps,
            failure,
            files,
        }),
    }
}

fn report_field(report: &mut Report, field: &Field, prefix: &str) {
    let totals = field.totals();
    for (name, v) in ["mass", "momentum_x", "momentum_y", "energy"].iter().zip(totals) {
        report.push_f64(format!("{prefix}totals.{name}"), v);
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (i, j) in field.interior() {
        let r = field.get(i, j).rho;
        lo = lo.min(r);
        hi = hi.max(r);
    }
    report.push_f64(format!("{prefix}rho_min"), lo);
    report.push_f64(format!("{prefix}rho_max"), hi);
}

fn report_norms(report: &mut Report, norms: &ErrorNorms, prefix: &str) {
    report.push_f64(format!("{prefix}norm.l1"), norms.l1);
    report.push_f64(format!("{prefix}norm.linf"), norms.linf);
    report.push_f64(format!("{prefix}norm.dx"), norms.dx);
}

/// Run the configured case, write snapshots and `<prefix>_report.txt` to the
/// output directory, and return the report.
pub fn run(config: &RunConfig) -> Result<RunSummary> {
    let start = Instant::now();
    let dir = config.effective_output_dir();
    fs::create_dir_all(&dir)?;
    let case = &config.case;
    let gas = config.gas;

    let mut report = Report::default();
    report.push("case", case.kind.name());
    report.push("scheme", scheme_name(config));
    report.push("order", order_name(config));
    report.push("limiter", format!("{:?}", config.scheme.limiter).to_lowercase());
    report.push("cfl", config.scheme.cfl);
    report.push("gamma", gas.gamma());

    let mut files = Vec::new();
    let mut success = true;
    let field = if config.diagnostics.convergence.is_empty() {
        report.push("grid", format!("{}x{}", case.grid.nx, case.grid.ny));
        let out = run_single(config, case, &dir, true)?;
        files.extend(out.files);
        report.push("steps", out.steps);
        report.push_f64("time", out.field.time);
        match &out.failure {
            None => report.push("status", "ok"),
            Some(e) => {
                success = false;
                report.push("status", "positivity_failure");
                report.push("failure", e);
                report.push_f64("failure.time", out.field.time);
                if let Error::Positivity { cell: Some(c), .. } = e {
                    report.push("failure.cell", c);
                }
            }
        }
        report_field(&mut report, &out.field, "");
        if case.kind == CaseKind::IsentropicVortex {
            let exact = exact_vortex_solution(case, out.field.time, gas)?;
            report_norms(&mut report, &error_norms(&out.field, &exact)?, "");
        }
        if case.kind.is_instability_case() {
            let reference = ShockReference::for_case(case.kind, gas)?;
            let m = assess_instability(&out.field, &reference, gas, out.failure.is_some());
            report.push_f64("metrics.max_transverse_velocity", m.max_transverse_velocity);
            report.push_f64("metrics.shock_position_stddev", m.shock_position_stddev);
            report.push_f64("metrics.mean_shock_position", m.mean_shock_position);
            report.push("metrics.blowup", m.blowup);
        }
        out.field
    } else {
        let levels = &config.diagnostics.convergence;
        report.push(
            "grid",
            levels.iter().map(|n| format!("{n}x{n}")).collect::<Vec<_>>().join(","),
        );
        let mut norms: Vec<ErrorNorms> = Vec::new();
        let mut last = None;
        for (k, &n) in levels.iter().enumerate() {
            let mut spec = CaseSpec::with_resolution(case.kind, n, n, gas)?;
            spec.t_final = case.t_final;
            spec.max_steps = case.max_steps;
            spec.cfl = case.cfl;
            let write = k + 1 == levels.len();
            let out = run_single(config, &spec, &dir, write)?;
            files.extend(out.files);
            let tag = format!("n{n}.");
            report.push(format!("{tag}steps"), out.steps);
            report.push_f64(format!("{tag}time"), out.field.time);
            if let Some(e) = &out.failure {
                success = false;
                report.push(format!("{tag}failure"), e);
                report.push("status", "positivity_failure");
                last = Some(out.field);
                break;
            }
            let exact = exact_vortex_solution(&spec, out.field.time, gas)?;
            let e = error_norms(&out.field, &exact)?;
            report_norms(&mut report, &e, &tag);
            norms.push(e);
            last = Some(out.field);
        }
        for (w, pair) in norms.windows(2).zip(levels.windows(2)) {
            let o = order_of_accuracy(&w[0], &w[1])?;
            report.push_f64(format!("order.l1.{}_{}", pair[0], pair[1]), o.l1);
            report.push_f64(format!("order.linf.{}_{}", pair[0], pair[1]), o.linf);
        }
        if success {
            report.push("status", "ok");
        }
        let field = last.expect("at least two levels");
        report_field(&mut report, &field, "");
        field
    };

    report.push("wall_time_s", format!("{:.3}", start.elapsed().as_secs_f64()));
    let report_path = dir.join(format!("{}_report.txt", config.output.prefix));
    fs::write(&report_path, report.to_string())?;
    files.push(report_path);

    Ok(RunSummary {
        report,
        success,
        field,
        files,
    })
}
