use std::path::Path;
use std::process::{Command, Output};

use gmcusp::io::{read_csv_file, Report, OUTPUT_DIR_ENV};

fn gmcusp(args: &[&str], out_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gmcusp"));
    cmd.args(args).env_remove(OUTPUT_DIR_ENV);
    if let Some(dir) = out_dir {
        cmd.env(OUTPUT_DIR_ENV, dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn cases_lists_every_problem() {
    let o = gmcusp(&["cases"], None);
    assert!(o.status.success());
    let text = stdout(&o);
    for name in ["vortex", "riemann1", "riemann2", "dmr", "odd_even", "standing_shock"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name} missing from\n{text}");
    }
}

#[test]
fn check_passes() {
    let o = gmcusp(&["check"], None);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().count() >= 5);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn solve_with_overrides_writes_snapshots_and_report() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("run.conf");
    std::fs::write(
        &config,
        "case = riemann2\ngrid = 400\n\n[output]\ndir = ignored\nformats = csv\n",
    )
    .unwrap();
    let out_dir = tmp.path().join("out");
    let o = gmcusp(
        &[
            "solve",
            config.to_str().unwrap(),
            "--override",
            "grid=24x20",
            "--override",
            "t_final=0.05",
            "--override",
            "output.formats=csv,vtk",
        ],
        Some(&out_dir),
    );
    assert!(
        o.status.success(),
        "{}\n{}",
        stdout(&o),
        String::from_utf8_lossy(&o.stderr)
    );

    let report = Report::parse(&std::fs::read_to_string(out_dir.join("riemann2_report.txt")).unwrap());
    assert_eq!(report.get("grid"), Some("24x20"));
    assert_eq!(report.get("status"), Some("ok"));
    assert_eq!(report.get_f64("time"), Some(0.05));

    let snap = read_csv_file(&out_dir.join("riemann2_final.csv")).unwrap();
    assert_eq!((snap.nx, snap.ny), (24, 20));
    assert!(out_dir.join("riemann2_final.vtk").exists());
    assert!(!tmp.path().join("ignored").exists());
}

#[test]
fn positivity_failure_exits_with_code_2() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("rp.conf");
    std::fs::write(&config, "case = riemann1\ngrid = 64\nscheme = two_state\ncfl = 1.0\n").unwrap();
    let o = gmcusp(&["solve", config.to_str().unwrap()], Some(tmp.path()));
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("FAILED"));
    let report = std::fs::read_to_string(tmp.path().join("riemann1_report.txt")).unwrap();
    assert!(report.contains("status = positivity_failure"));
}

#[test]
fn bad_configuration_is_reported() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("bad.conf");
    std::fs::write(&config, "case = vortex\n\nflux = roe\n").unwrap();
    let o = gmcusp(&["solve", config.to_str().unwrap()], Some(tmp.path()));
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3") && err.contains("flux"), "{err}");

    std::fs::write(&config, "case = vortex\n").unwrap();
    let o = gmcusp(
        &["solve", config.to_str().unwrap(), "--override", "case=sod"],
        Some(tmp.path()),
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sod"));

    let o = gmcusp(&["solve", tmp.path().join("missing.conf").to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn example_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        gmcusp::io::parse_config(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        n += 1;
    }
    assert!(n >= 5);
}
