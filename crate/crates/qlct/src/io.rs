//! Field files.
//!
//! Two layouts carry the same content:
//!
//! * JSON: one document `{"grid": .., "params": .., "mode": .., "values": [[q0, q1, q2, q3], ..]}`
//!   with values row-major over `(x1, x2)`.
//! * CSV: rows `x1,x2,qa,qb,qc,qd` plus an optional sidecar `<path>.json`
//!   holding the header fields. Without a sidecar the grid is inferred from
//!   the coordinate columns.
//!
//! Numbers are written with 17 significant digits, so a write/read cycle
//! reproduces every value bit for bit.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use qlct_core::prob::CharFnMode;
use qlct_core::{GridSpec, Quaternion, Rule, SampledField, TransformParams};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const CSV_HEADER: [&str; 6] = ["x1", "x2", "qa", "qb", "qc", "qd"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl Format {
    /// `.csv` paths are CSV, anything else JSON.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub grid: GridSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<TransformParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<CharFnMode>,
}

#[derive(Serialize, Deserialize)]
struct JsonDocument {
    #[serde(flatten)]
    header: Header,
    values: Vec<Quaternion>,
}

/// A field together with whatever produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub field: SampledField,
    pub params: Option<TransformParams>,
    pub mode: Option<CharFnMode>,
}

impl Document {
    pub fn plain(field: SampledField) -> Self {
        Self { field, params: None, mode: None }
    }

    fn header(&self) -> Header {
        Header { grid: *self.field.spec(), params: self.params, mode: self.mode }
    }
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

pub fn read(path: &Path) -> Result<Document> {
    match Format::from_path(path) {
        Format::Json => read_json(path),
        Format::Csv => read_csv(path),
    }
}

pub fn read_json(path: &Path) -> Result<Document> {
    let text = read_to_string(path)?;
    if text.trim().is_empty() {
        return Err(CliError::input(path, "no rows"));
    }
    let doc: JsonDocument = serde_json::from_str(&text).map_err(|e| CliError::input(path, e))?;
    if doc.values.is_empty() {
        return Err(CliError::input(path, "no rows"));
    }
    let header = doc.header;
    header.grid.validate().map_err(|e| CliError::input(path, format!("grid: {e}")))?;
    let field = SampledField::new(header.grid, doc.values).map_err(|e| CliError::input(path, format!("values: {e}")))?;
    Ok(Document { field, params: header.params, mode: header.mode })
}

pub fn read_csv(path: &Path) -> Result<Document> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::input(path, e))?;
    let headers = reader.headers().map_err(|e| CliError::input(path, e))?.clone();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Err(CliError::input(path, "no rows"));
    }
    if headers.iter().ne(CSV_HEADER) {
        return Err(CliError::input(path, format!("header must be {}", CSV_HEADER.join(","))));
    }
    let mut rows: Vec<[f64; 6]> = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::input(path, e))?;
        let mut row = [0.0; 6];
        for (slot, (name, cell)) in row.iter_mut().zip(CSV_HEADER.iter().zip(record.iter())) {
            *slot = cell
                .parse()
                .map_err(|_| CliError::input(path, format!("row {}: column {name}: cannot parse {cell:?}", line + 1)))?;
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::input(path, "no rows"));
    }

    let sidecar = sidecar_path(path);
    let header = if sidecar.exists() {
        let text = read_to_string(&sidecar)?;
        let header: Header = serde_json::from_str(&text).map_err(|e| CliError::input(&sidecar, e))?;
        header.grid.validate().map_err(|e| CliError::input(&sidecar, format!("grid: {e}")))?;
        header
    } else {
        Header { grid: infer_grid(path, &rows)?, params: None, mode: None }
    };
    let grid = header.grid;
    if rows.len() != grid.len() {
        return Err(CliError::input(path, format!("expected {} rows for the grid, found {}", grid.len(), rows.len())));
    }
    let mut values = vec![None; grid.len()];
    for (line, row) in rows.iter().enumerate() {
        let (r, c) = node_of(&grid, row[0], row[1])
            .ok_or_else(|| CliError::input(path, format!("row {}: ({}, {}) is not a grid node", line + 1, row[0], row[1])))?;
        let slot = &mut values[r * grid.n2 + c];
        if slot.is_some() {
            return Err(CliError::input(path, format!("row {}: node ({}, {}) repeated", line + 1, row[0], row[1])));
        }
        *slot = Some(Quaternion::new(row[2], row[3], row[4], row[5]));
    }
    let values = values.into_iter().collect::<Option<Vec<_>>>().expect("count matches and no repeats");
    let field = SampledField::new(grid, values).map_err(|e| CliError::input(path, format!("values: {e}")))?;
    Ok(Document { field, params: header.params, mode: header.mode })
}

fn axis_index(min: f64, h: f64, n: usize, x: f64) -> Option<usize> {
    let s = (x - min) / h;
    let i = s.round();
    ((s - i).abs() <= 1e-9 && i >= 0.0 && i < n as f64).then_some(i as usize)
}

fn node_of(grid: &GridSpec, x1: f64, x2: f64) -> Option<(usize, usize)> {
    Some((axis_index(grid.x1_min, grid.h1(), grid.n1, x1)?, axis_index(grid.x2_min, grid.h2(), grid.n2, x2)?))
}

/// Distinct coordinate values per axis; they must be equally spaced.
fn infer_grid(path: &Path, rows: &[[f64; 6]]) -> Result<GridSpec> {
    let axis = |k: usize| -> Result<(f64, f64, usize)> {
        let distinct: BTreeMap<u64, f64> = rows.iter().map(|r| (order_key(r[k]), r[k])).collect();
        let xs: Vec<f64> = distinct.into_values().collect();
        let name = CSV_HEADER[k];
        if xs.len() < 2 {
            return Err(CliError::input(path, format!("column {name} needs at least two distinct values")));
        }
        let (lo, hi, n) = (xs[0], xs[xs.len() - 1], xs.len());
        let h = (hi - lo) / (n - 1) as f64;
        for (i, &x) in xs.iter().enumerate() {
            if (x - (lo + i as f64 * h)).abs() > 1e-9 * h {
                return Err(CliError::input(path, format!("column {name} is not equally spaced; add a sidecar grid")));
            }
        }
        Ok((lo, hi, n))
    };
    let (a, b, n1) = axis(0)?;
    let (c, d, n2) = axis(1)?;
    GridSpec::new(a, b, c, d, n1, n2).map_err(|e| CliError::input(path, format!("grid: {e}")))
}

/// Total-order key for finite floats.
fn order_key(x: f64) -> u64 {
    let bits = (x + 0.0).to_bits();
    if bits >> 63 == 1 {
        !bits
    } else {
        bits | (1 << 63)
    }
}

pub fn write(doc: &Document, path: &Path, format: Format) -> Result<()> {
    match format {
        Format::Json => {
            let text = to_json(doc);
            fs::write(path, text).map_err(|source| CliError::Io { path: path.to_owned(), source })
        }
        Format::Csv => {
            let file = fs::File::create(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
            write_csv_rows(doc, std::io::BufWriter::new(file)).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
            let sidecar = sidecar_path(path);
            let header = serde_json::to_string_pretty(&doc.header()).expect("header serializes") + "\n";
            fs::write(&sidecar, header).map_err(|source| CliError::Io { path: sidecar, source })
        }
    }
}

pub fn to_json(doc: &Document) -> String {
    let json = JsonDocument { header: doc.header(), values: doc.field.values().to_vec() };
    serde_json::to_string(&json).expect("finite values serialize") + "\n"
}

pub fn write_csv_rows<W: Write>(doc: &Document, out: W) -> std::io::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    let spec = doc.field.spec();
    for r in 0..spec.n1 {
        for c in 0..spec.n2 {
            let q = doc.field.get(r, c);
            let cells = [spec.x1(r), spec.x2(c), q.q0, q.q1, q.q2, q.q3].map(|x| format!("{x:.16e}"));
            writer.write_record(&cells)?;
        }
    }
    writer.flush()
}

/// `x1min,x1max,x2min,x2max,n1,n2`.
pub fn parse_grid(s: &str, rule: Rule) -> Result<GridSpec> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 6 {
        return Err(CliError::Config(format!("grid {s:?}: expected x1min,x1max,x2min,x2max,n1,n2")));
    }
    let float = |i: usize| {
        parts[i].parse::<f64>().map_err(|_| CliError::Config(format!("grid {s:?}: cannot parse {:?}", parts[i])))
    };
    let count = |i: usize| {
        parts[i].parse::<usize>().map_err(|_| CliError::Config(format!("grid {s:?}: cannot parse count {:?}", parts[i])))
    };
    let grid = GridSpec::new(float(0)?, float(1)?, float(2)?, float(3)?, count(4)?, count(5)?)?;
    Ok(grid.with_rule(rule))
}

/// Reads transform parameters from a JSON file, or `fourier` for the
/// Fourier parameters on both axes.
pub fn read_params(arg: &str) -> Result<TransformParams> {
    if arg.eq_ignore_ascii_case("fourier") {
        return Ok(qlct_core::fourier_params());
    }
    let path = Path::new(arg);
    let text = read_to_string(path)?;
    let params: TransformParams = serde_json::from_str(&text).map_err(|e| CliError::input(path, e))?;
    params.validate()?;
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_string() {
        let g = parse_grid("-1, 1, 0, 2, 5, 9", Rule::Simpson).unwrap();
        assert_eq!((g.x1_min, g.x2_max, g.n1, g.n2, g.rule), (-1.0, 2.0, 5, 9, Rule::Simpson));
        assert!(matches!(parse_grid("0,1,0,1,5", Rule::Trapezoid), Err(CliError::Config(_))));
        assert!(matches!(parse_grid("0,1,0,1,1,5", Rule::Trapezoid), Err(CliError::Invariant(_))));
    }

    #[test]
    fn order_key_is_monotone() {
        let xs = [-3.5, -0.0, 0.0, 1e-300, 2.0];
        assert!(xs.windows(2).all(|w| order_key(w[0]) <= order_key(w[1])));
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(Format::from_path(Path::new("a/b.CSV")), Format::Csv);
        assert_eq!(Format::from_path(Path::new("a/b.json")), Format::Json);
        assert_eq!(Format::from_path(Path::new("a/b")), Format::Json);
    }
}
