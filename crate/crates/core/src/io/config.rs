//! Plain-text run configuration.
//!
//! One `key = value` pair per line, `#` starts a comment. Top-level keys
//! describe the case and the scheme; `[output]` and `[diagnostics]` sections
//! hold the rest. A key may also be written in dotted form (`output.dir`),
//! which is the form used by command-line overrides.
//!
//! ```text
//! case = riemann1
//! grid = 400x400        # or a single number for square grids
//! scheme = gm           # gm | two_state
//! order = second        # first | second
//! cfl = 0.95
//!
//! [output]
//! dir = out/rp1
//! formats = csv, vtk
//! every_steps = 100
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use crate::cases::{CaseKind, CaseSpec};
use crate::error::{Error, Result};
use crate::euler::GasModel;
use crate::solver::{Grid, Limiter, Order, Scheme, SchemeConfig};

/// Environment variable that replaces the configured output directory.
pub const OUTPUT_DIR_ENV: &str = "GMCUSP_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnapshotFormat {
    Csv,
    Vtk,
}

impl SnapshotFormat {
    pub fn extension(self) -> &'static str {
        match self {
            SnapshotFormat::Csv => "csv",
            SnapshotFormat::Vtk => "vtk",
        }
    }
}

impl FromStr for SnapshotFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(SnapshotFormat::Csv),
            "vtk" => Ok(SnapshotFormat::Vtk),
            other => Err(format!("unknown snapshot format `{other}`")),
        }
    }
}

/// When intermediate snapshots are written. The final state is always written.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cadence {
    FinalOnly,
    Steps(usize),
    /// After the first step reaching each multiple of the interval.
    Time(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub prefix: String,
    pub formats: Vec<SnapshotFormat>,
    pub cadence: Cadence,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiagnosticsConfig {
    /// Vortex resolutions for a convergence study; empty for a single run.
    pub convergence: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub case: CaseSpec,
    pub scheme: SchemeConfig,
    pub gas: GasModel,
    pub output: OutputConfig,
    pub diagnostics: DiagnosticsConfig,
}

impl RunConfig {
    /// Configuration for `kind` with every default applied.
    pub fn for_case(kind: CaseKind) -> Result<Self> {
        parse_config(&format!("case = {}", kind.name()))
    }

    /// Output directory after applying the environment override.
    pub fn effective_output_dir(&self) -> PathBuf {
        match std::env::var_os(OUTPUT_DIR_ENV) {
            Some(dir) if !dir.is_empty() => PathBuf::from(dir),
            _ => self.output.dir.clone(),
        }
    }
}

const SECTIONS: [&str; 2] = ["output", "diagnostics"];

const KEYS: [&str; 16] = [
    "case",
    "grid",
    "t_final",
    "max_steps",
    "gamma",
    "seeded",
    "scheme",
    "order",
    "cfl",
    "limiter",
    "output.dir",
    "output.prefix",
    "output.formats",
    "output.every_steps",
    "output.every_time",
    "diagnostics.convergence",
];

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    line: Option<usize>,
}

fn entry_error(key: &str, entry: &Entry, message: impl Into<String>) -> Error {
    Error::Config {
        line: entry.line,
        key: Some(key.to_string()),
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(String, Entry)>> {
    let mut section: Option<String> = None;
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or_else(|| Error::Config {
                line: Some(line),
                key: None,
                message: format!("malformed section header `{content}`"),
            })?;
            let name = name.trim().to_ascii_lowercase();
            if !SECTIONS.contains(&name.as_str()) {
                return Err(Error::Config {
                    line: Some(line),
                    key: None,
                    message: format!("unknown section `{name}`"),
                });
            }
            section = Some(name);
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::Config {
            line: Some(line),
            key: None,
            message: format!("expected `key = value`, got `{content}`"),
        })?;
        let key = key.trim().to_ascii_lowercase();
        let key = match &section {
            Some(s) if !key.contains('.') => format!("{s}.{key}"),
            _ => key,
        };
        out.push((
            key,
            Entry {
                value: value.trim().to_string(),
                line: Some(line),
            },
        ));
    }
    Ok(out)
}

/// Split `key=value` override strings.
pub fn parse_overrides(overrides: &[String]) -> Result<Vec<(String, String)>> {
    overrides
        .iter()
        .map(|o| {
            o.split_once('=')
                .map(|(k, v)| (k.trim().to_ascii_lowercase(), v.trim().to_string()))
                .ok_or_else(|| Error::Config {
                    line: None,
                    key: Some(o.clone()),
                    message: "override must have the form key=value".into(),
                })
        })
        .collect()
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    parse_config_with_overrides(text, &[])
}

/// Parse `text`, then apply `overrides` (`key=value`, later entries win).
pub fn parse_config_with_overrides(text: &str, overrides: &[String]) -> Result<RunConfig> {
    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    let overrides = parse_overrides(overrides)?
        .into_iter()
        .map(|(k, v)| (k, Entry { value: v, line: None }));
    for (key, entry) in tokenize(text)?.into_iter().chain(overrides) {
        if !KEYS.contains(&key.as_str()) {
            return Err(entry_error(&key, &entry, "unknown key"));
        }
        entries.insert(key, entry);
    }
    build(&entries)
}

fn parse_value<T: FromStr>(key: &str, entry: &Entry, what: &str) -> Result<T> {
    entry
        .value
        .parse()
        .map_err(|_| entry_error(key, entry, format!("expected {what}, got `{}`", entry.value)))
}

fn parse_bool(key: &str, entry: &Entry) -> Result<bool> {
    match entry.value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(entry_error(
            key,
            entry,
            format!("expected a boolean, got `{}`", entry.value),
        )),
    }
}

fn parse_grid(key: &str, entry: &Entry) -> Result<(usize, usize)> {
    let v = entry.value.to_ascii_lowercase();
    let parse = |s: &str| s.trim().parse::<usize>().ok();
    let dims = match v.split_once(['x', '*']) {
        Some((a, b)) => parse(a).zip(parse(b)),
        None => parse(&v).map(|n| (n, n)),
    };
    dims.ok_or_else(|| entry_error(key, entry, format!("expected `NXxNY` or `N`, got `{}`", entry.value)))
}

fn parse_scheme(key: &str, entry: &Entry) -> Result<Scheme> {
    match entry.value.to_ascii_lowercase().replace('-', "_").as_str() {
        "two_state" | "k_cusp_x" | "kcuspx" => Ok(Scheme::TwoState),
        "gm" | "genuinely_multidimensional" | "gm_k_cusp_x" => Ok(Scheme::GenuinelyMultidimensional),
        _ => Err(entry_error(key, entry, format!("unknown scheme `{}`", entry.value))),
    }
}

fn parse_order(key: &str, entry: &Entry) -> Result<Order> {
    match entry.value.to_ascii_lowercase().as_str() {
        "first" | "1" => Ok(Order::First),
        "second" | "2" => Ok(Order::Second),
        _ => Err(entry_error(key, entry, format!("unknown order `{}`", entry.value))),
    }
}

fn parse_limiter(key: &str, entry: &Entry) -> Result<Limiter> {
    match entry.value.to_ascii_lowercase().replace('-', "_").as_str() {
        "minmod" => Ok(Limiter::Minmod),
        "van_leer" | "vanleer" => Ok(Limiter::VanLeer),
        _ => Err(entry_error(key, entry, format!("unknown limiter `{}`", entry.value))),
    }
}

fn build(entries: &BTreeMap<String, Entry>) -> Result<RunConfig> {
    let get = |k: &'static str| entries.get(k).map(|e| (k, e));

    let (k, e) = get("case").ok_or_else(|| Error::Config {
        line: None,
        key: Some("case".into()),
        message: "missing required key".into(),
    })?;
    let kind: CaseKind = e
        .value
        .parse()
        .map_err(|_| entry_error(k, e, format!("unknown case `{}`", e.value)))?;

    let gas = match get("gamma") {
        Some((k, e)) => {
            GasModel::new(parse_value(k, e, "a number")?).map_err(|_| entry_error(k, e, "gamma must exceed 1"))?
        }
        None => GasModel::default(),
    };

    let mut case = match get("grid") {
        Some((k, e)) => {
            let (nx, ny) = parse_grid(k, e)?;
            CaseSpec::with_resolution(kind, nx, ny, gas).map_err(|err| entry_error(k, e, err.to_string()))?
        }
        None => CaseSpec::new(kind, gas)?,
    };

    if let Some((k, e)) = get("t_final") {
        let t: f64 = parse_value(k, e, "a number")?;
        if !(t > 0.0 && t.is_finite()) {
            return Err(entry_error(k, e, "t_final must be positive"));
        }
        case.t_final = Some(t);
    }
    if let Some((k, e)) = get("max_steps") {
        let n: usize = parse_value(k, e, "a step count")?;
        if n == 0 {
            return Err(entry_error(k, e, "max_steps must be positive"));
        }
        case.max_steps = Some(n);
    }
    if let Some((k, e)) = get("seeded") {
        case.seeded = parse_bool(k, e)?;
    }
    if let Some((k, e)) = get("cfl") {
        let cfl: f64 = parse_value(k, e, "a number")?;
        if !(cfl > 0.0 && cfl <= 1.0) {
            return Err(entry_error(k, e, format!("cfl must lie in (0, 1], got {cfl}")));
        }
        case.cfl = cfl;
    }
    if let Some((k, e)) = get("scheme") {
        case.scheme = Some(parse_scheme(k, e)?);
    }
    if let Some((k, e)) = get("order") {
        case.order = Some(parse_order(k, e)?);
    }

    let mut scheme = SchemeConfig::new(
        case.scheme.unwrap_or(Scheme::GenuinelyMultidimensional),
        case.order.unwrap_or(Order::Second),
        case.cfl,
    );
    if let Some((k, e)) = get("limiter") {
        scheme.limiter = parse_limiter(k, e)?;
    }
    case.validate()?;

    let mut output = OutputConfig {
        dir: PathBuf::from("output").join(kind.name()),
        prefix: kind.name().to_string(),
        formats: vec![SnapshotFormat::Csv],
        cadence: Cadence::FinalOnly,
    };
    if let Some((_, e)) = get("output.dir") {
        output.dir = PathBuf::from(&e.value);
    }
    if let Some((k, e)) = get("output.prefix") {
        if e.value.is_empty() || e.value.contains(['/', '\\']) {
            return Err(entry_error(k, e, "prefix must be a plain file-name stem"));
        }
        output.prefix = e.value.clone();
    }
    if let Some((k, e)) = get("output.formats") {
        let formats: std::result::Result<Vec<_>, _> = e
            .value
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(str::parse)
            .collect();
        output.formats = formats.map_err(|m| entry_error(k, e, m))?;
        if output.formats.is_empty() {
            return Err(entry_error(k, e, "at least one format is required"));
        }
    }
    match (get("output.every_steps"), get("output.every_time")) {
        (Some((k, e)), Some(_)) => {
            return Err(entry_error(k, e, "every_steps and every_time are mutually exclusive"));
        }
        (Some((k, e)), None) => {
            let n: usize = parse_value(k, e, "a step count")?;
            if n == 0 {
                return Err(entry_error(k, e, "cadence must be positive"));
            }
            output.cadence = Cadence::Steps(n);
        }
        (None, Some((k, e))) => {
            let t: f64 = parse_value(k, e, "a number")?;
            if !(t > 0.0 && t.is_finite()) {
                return Err(entry_error(k, e, "cadence must be positive"));
            }
            output.cadence = Cadence::Time(t);
        }
        (None, None) => {}
    }

    let mut diagnostics = DiagnosticsConfig::default();
    if let Some((k, e)) = get("diagnostics.convergence") {
        if kind != CaseKind::IsentropicVortex {
            return Err(entry_error(k, e, "convergence studies need the vortex case"));
        }
        let levels: std::result::Result<Vec<usize>, _> =
            e.value.split(',').map(|s| s.trim().parse::<usize>()).collect();
        let levels = levels.map_err(|_| entry_error(k, e, "expected a comma-separated list of resolutions"))?;
        if levels.len() < 2 || levels.windows(2).any(|w| w[1] <= w[0]) {
            return Err(entry_error(k, e, "need at least two strictly increasing resolutions"));
        }
        for &n in &levels {
            Grid::new(n, n, (0.0, 1.0), (0.0, 1.0)).map_err(|err| entry_error(k, e, err.to_string()))?;
        }
        diagnostics.convergence = levels;
    }

    Ok(RunConfig {
        case,
        scheme,
        gas,
        output,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_uses_defaults() {
        let c = parse_config("case = riemann1").unwrap();
        assert_eq!(c.case.kind, CaseKind::RiemannProblem1);
        assert_eq!((c.case.grid.nx, c.case.grid.ny), (2000, 2000));
        assert_eq!(c.scheme.scheme, Scheme::GenuinelyMultidimensional);
        assert_eq!(c.scheme.order, Order::Second);
        assert_eq!(c.scheme.cfl, 0.95);
        assert_eq!(c.gas.gamma(), 1.4);
        assert_eq!(c.case.t_final, Some(1.05));
        assert_eq!(c.output.cadence, Cadence::FinalOnly);
    }

    #[test]
    fn instability_configuration() {
        let c = parse_config("scheme = two_state\norder = first\ncase = odd_even").unwrap();
        assert_eq!(c.case.kind, CaseKind::OddEvenDecoupling);
        assert_eq!(c.scheme.scheme, Scheme::TwoState);
        assert_eq!(c.scheme.order, Order::First);
        assert_eq!((c.case.grid.nx, c.case.grid.ny), (800, 20));
        assert_eq!(c.case.t_final, Some(140.0));
    }

    #[test]
    fn cfl_out_of_range() {
        let err = parse_config("case = vortex\n\ncfl = 1.5").unwrap_err();
        match err {
            Error::Config { line, key, .. } => {
                assert_eq!(line, Some(3));
                assert_eq!(key.as_deref(), Some("cfl"));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn unknown_entries_are_rejected_with_location() {
        let err = parse_config("case = vortex\nfoo = 1").unwrap_err();
        assert!(matches!(err, Error::Config { line: Some(2), key: Some(ref k), .. } if k == "foo"));
        let err = parse_config("case = sod").unwrap_err();
        assert!(matches!(err, Error::Config { line: Some(1), .. }));
        assert!(parse_config("grid = 10").is_err());
        assert!(parse_config("case = vortex\n[plots]\n").is_err());
        assert!(parse_config("case = vortex\njust text").is_err());
    }

    #[test]
    fn sections_comments_and_overrides() {
        let text = "# vortex study\ncase = vortex # inline\ngrid = 32\n[output]\ndir = /tmp/x\nformats = csv, vtk\nevery_time = 2.5\n[diagnostics]\nconvergence = 16, 32\n";
        let c = parse_config_with_overrides(text, &["grid=48x40".into(), "output.prefix=run".into()]);
        let c = c.unwrap();
        assert_eq!((c.case.grid.nx, c.case.grid.ny), (48, 40));
        assert_eq!(c.output.dir, PathBuf::from("/tmp/x"));
        assert_eq!(c.output.prefix, "run");
        assert_eq!(c.output.formats, vec![SnapshotFormat::Csv, SnapshotFormat::Vtk]);
        assert_eq!(c.output.cadence, Cadence::Time(2.5));
        assert_eq!(c.diagnostics.convergence, vec![16, 32]);

        let err = parse_config_with_overrides("case = vortex", &["nonsense".into()]).unwrap_err();
        assert!(matches!(err, Error::Config { line: None, .. }));
    }

    #[test]
    fn value_validation() {
        for bad in [
            "case = vortex\ngrid = 3",
            "case = vortex\norder = third",
            "case = vortex\nlimiter = superbee",
            "case = vortex\ngamma = 0.9",
            "case = vortex\nt_final = -1",
            "case = dmr\n[diagnostics]\nconvergence = 16, 32",
            "case = vortex\n[diagnostics]\nconvergence = 32, 16",
            "case = vortex\n[output]\nevery_steps = 0",
            "case = vortex\n[output]\nevery_steps = 5\nevery_time = 1",
            "case = vortex\n[output]\nformats = png",
        ] {
            assert!(parse_config(bad).is_err(), "{bad}");
        }
        let c = parse_config("case = standing_shock\nlimiter = van_leer\nseeded = false\nmax_steps = 7").unwrap();
        assert_eq!(c.scheme.limiter, Limiter::VanLeer);
        assert!(!c.case.seeded);
        assert_eq!(c.case.max_steps, Some(7));
    }
}
