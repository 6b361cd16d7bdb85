//! CSV readers and writers for the on-disk interchange formats.
//!
//! Time series files are one row per time step, comma-delimited, with an
//! optional header row of channel names. Projections are plain numeric
//! matrices (n rows, d columns). All writers emit floats with 17 significant
//! digits so a write/read round trip is bit-exact.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::projection::Projection;
use crate::timeseries::TimeSeries;

/// Format a float with 17 significant digits (round-trip exact for f64).
pub fn format_float(x: f64) -> String {
    format!("{:.16e}", x)
}

/// Read a time series from CSV. The header row is auto-detected: if any field
/// of the first row fails to parse as a float, it is taken as channel names.
pub fn read_timeseries_csv(path: &Path, dt: f64) -> Result<TimeSeries> {
    let file = File::open(path)?;
    let reader = BufReader::new(file);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut names: Option<Vec<String>> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: std::result::Result<Vec<f64>, _> =
            fields.iter().map(|f| f.parse::<f64>()).collect();
        match parsed {
            Ok(vals) => rows.push(vals),
            Err(_) if idx == 0 => {
                names = Some(fields.iter().map(|s| s.to_string()).collect());
            }
            Err(e) => {
                return Err(Error::InvalidArgument(format!(
                    "unparseable value on line {}: {e}",
                    idx + 1
                )))
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::InsufficientData(format!("{} contains no data rows", path.display())));
    }
    let ncols = rows[0].len();
    if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
        return Err(Error::InvalidArgument(format!(
            "ragged csv: row {} has {} fields, expected {ncols}",
            bad + 1,
            rows[bad].len()
        )));
    }
    let data = DMatrix::from_fn(rows.len(), ncols, |r, c| rows[r][c]);
    TimeSeries::with_names(data, dt, names)
}

/// Write a time series as CSV; emits a header row when channel names exist.
pub fn write_timeseries_csv(series: &TimeSeries, path: &Path) -> Result<()> {
    let file = File::create(path)?;
    let mut w = BufWriter::new(file);
    if let Some(names) = series.channel_names() {
        writeln!(w, "{}", names.join(","))?;
    }
    write_matrix_rows(&mut w, series.data())?;
    w.flush()?;
    Ok(())
}

/// Read a projection matrix from headerless numeric CSV.
pub fn read_projection_csv(path: &Path) -> Result<Projection> {
    let file = File::open(path)?;
    let reader = BufReader::new(file);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let vals: std::result::Result<Vec<f64>, _> =
            line.split(',').map(|f| f.trim().parse::<f64>()).collect();
        let vals = vals.map_err(|e| {
            Error::InvalidArgument(format!("unparseable projection value on line {}: {e}", idx + 1))
        })?;
        rows.push(vals);
    }
    if rows.is_empty() {
        return Err(Error::InsufficientData(format!("{} is empty", path.display())));
    }
    let ncols = rows[0].len();
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::InvalidArgument("ragged projection csv".into()));
    }
    let m = DMatrix::from_fn(rows.len(), ncols, |r, c| rows[r][c]);
    Projection::new(m)
}

/// Write a projection matrix as headerless numeric CSV (n rows, d columns).
pub fn write_projection_csv(proj: &Projection, path: &Path) -> Result<()> {
    let file = File::create(path)?;
    let mut w = BufWriter::new(file);
    write_matrix_rows(&mut w, proj.matrix())?;
    w.flush()?;
    Ok(())
}

pub(crate) fn write_matrix_rows<W: Write>(w: &mut W, m: &DMatrix<f64>) -> Result<()> {
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|c| format_float(m[(r, c)])).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}
