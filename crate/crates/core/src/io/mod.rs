//! Configuration, snapshots, run orchestration and the invariant checks
//! behind the command-line interface.

mod check;
mod config;
mod run;
mod snapshot;

pub use check::{run_checks, CheckResult};
pub use config::{
    parse_config, parse_config_with_overrides, parse_overrides, Cadence, DiagnosticsConfig, OutputConfig, RunConfig,
    SnapshotFormat, OUTPUT_DIR_ENV,
};
pub use run::{run, Report, RunSummary};
pub use snapshot::{read_csv, read_csv_file, write_csv, write_snapshot, write_vtk, Snapshot, CSV_HEADER};
