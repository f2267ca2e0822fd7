//! CSV and legacy VTK snapshots of the primitive variables at cell centers.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::euler::GasModel;
use crate::solver::Field;

use super::config::SnapshotFormat;

pub const CSV_HEADER: &str = "x,y,rho,u,v,p";

/// `{:.16e}` prints 17 significant digits, enough to round-trip any f64.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv(field: &Field, gas: GasModel, out: &mut impl Write) -> Result<()> {
    let grid = field.grid;
    writeln!(out, "{CSV_HEADER}")?;
    for (i, j) in field.interior() {
        let s = field.primitive(i, j, gas)?;
        let (x, y) = grid.center(i, j);
        writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt(x),
            fmt(y),
            fmt(s.rho),
            fmt(s.u),
            fmt(s.v),
            fmt(s.p)
        )?;
    }
    Ok(())
}

pub fn write_vtk(field: &Field, gas: GasModel, out: &mut impl Write) -> Result<()> {
    let g = field.grid;
    let prims = field.primitives(gas)?;
    writeln!(out, "# vtk DataFile Version 3.0")?;
    writeln!(out, "gmcusp snapshot t = {}", fmt(field.time))?;
    writeln!(out, "ASCII")?;
    writeln!(out, "DATASET STRUCTURED_POINTS")?;
    writeln!(out, "DIMENSIONS {} {} 1", g.nx, g.ny)?;
    let (x0, y0) = g.center(0, 0);
    writeln!(out, "ORIGIN {} {} 0", fmt(x0), fmt(y0))?;
    writeln!(out, "SPACING {} {} 1", fmt(g.dx), fmt(g.dy))?;
    writeln!(out, "POINT_DATA {}", g.nx * g.ny)?;
    writeln!(out, "SCALARS rho double 1")?;
    writeln!(out, "LOOKUP_TABLE default")?;
    for s in &prims {
        writeln!(out, "{}", fmt(s.rho))?;
    }
    writeln!(out, "SCALARS p double 1")?;
    writeln!(out, "LOOKUP_TABLE default")?;
    for s in &prims {
        writeln!(out, "{}", fmt(s.p))?;
    }
    writeln!(out, "VECTORS velocity double")?;
    for s in &prims {
        writeln!(out, "{} {} 0", fmt(s.u), fmt(s.v))?;
    }
    Ok(())
}

/// Write `field` to `path`, creating parent directories.
pub fn write_snapshot(field: &Field, gas: GasModel, path: &Path, format: SnapshotFormat) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let mut out = BufWriter::new(fs::File::create(path)?);
    match format {
        SnapshotFormat::Csv => write_csv(field, gas, &mut out)?,
        SnapshotFormat::Vtk => write_vtk(field, gas, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

/// Primitive variables read back from a CSV snapshot, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub nx: usize,
    pub ny: usize,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub rho: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub p: Vec<f64>,
}

pub fn read_csv(reader: impl BufRead) -> Result<Snapshot> {
    let mut lines = reader.lines();
    let header = lines.next().ok_or_else(|| Error::Format("empty file".into()))??;
    if header.trim() != CSV_HEADER {
        return Err(Error::Format(format!(
            "expected header `{CSV_HEADER}`, got `{}`",
            header.trim()
        )));
    }
    let mut cols: [Vec<f64>; 6] = Default::default();
    for (n, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let values: Vec<&str> = line.split(',').collect();
        if values.len() != 6 {
            return Err(Error::Format(format!(
                "line {}: expected 6 columns, got {}",
                n + 2,
                values.len()
            )));
        }
        for (col, v) in cols.iter_mut().zip(values) {
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("line {}: `{}` is not a number", n + 2, v.trim())))?;
            col.push(v);
        }
    }
    let [x, y, rho, u, v, p] = cols;
    if x.is_empty() {
        return Err(Error::Format("no data rows".into()));
    }
    let nx = y.iter().take_while(|&&yy| yy == y[0]).count();
    if x.len() % nx != 0 {
        return Err(Error::Format(format!(
            "{} rows do not form rows of {nx} cells",
            x.len()
        )));
    }
    let ny = x.len() / nx;
    for j in 0..ny {
        let row = &y[j * nx..(j + 1) * nx];
        if row.iter().any(|&yy| yy != row[0]) || (j > 0 && row[0] <= y[(j - 1) * nx]) {
            return Err(Error::Format(format!("row {j} is not a constant-y grid row")));
        }
    }
    Ok(Snapshot {
        nx,
        ny,
        x,
        y,
        rho,
        u,
        v,
        p,
    })
}

pub fn read_csv_file(path: &Path) -> Result<Snapshot> {
    read_csv(BufReader::new(fs::File::open(path)?))
}
