//! CSV and manifest writers, plus the schema checks used by the tests.
//!
//! Floats are written in Rust's shortest round-trip form, lines end in LF.

use std::fmt::Write as _;
use std::path::Path;

use photon_prop::TimeSeries;

use crate::error::{CliError, Result};

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

/// Column-major table with a header row.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.header.join(","));
        for r in &self.rows {
            let _ = writeln!(out, "{}", r.join(","));
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())
            .map_err(|e| CliError::io(&format!("cannot write {}", path.display()), e))
    }
}

/// Trace table: `tau`, then `re_`, `im_`, `abs_` for each series.
pub fn trace_table(series: &[TimeSeries]) -> Table {
    let mut header = vec!["tau".to_string()];
    for s in series {
        let m = s.provenance.name();
        header.extend([format!("re_{m}"), format!("im_{m}"), format!("abs_{m}")]);
    }
    let mut t = Table::new(header);
    let Some(first) = series.first() else {
        return t;
    };
    for (i, tau) in first.times().into_iter().enumerate() {
        let mut row = vec![fmt_f64(tau)];
        for s in series {
            let a = s.amplitude[i];
            row.extend([fmt_f64(a.re), fmt_f64(a.im), fmt_f64(a.norm())]);
        }
        t.push(row);
    }
    t
}

/// Parsed CSV: header and rows of raw fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Csv {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub fn read_csv(text: &str) -> std::result::Result<Csv, String> {
    if text.contains('\r') {
        return Err("CR line endings".into());
    }
    if !text.ends_with('\n') {
        return Err("missing final newline".into());
    }
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or("empty file")?
        .split(',')
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for (n, l) in lines.enumerate() {
        let row: Vec<String> = l.split(',').map(str::to_string).collect();
        if row.len() != header.len() {
            return Err(format!("row {} has {} fields, header has {}", n + 1, row.len(), header.len()));
        }
        rows.push(row);
    }
    Ok(Csv { header, rows })
}

/// Checks the trace schema: `tau` then `re_m,im_m,abs_m` triples, finite
/// floats, strictly increasing `tau`, `abs = |re + i im|`.
pub fn check_trace_schema(text: &str) -> std::result::Result<(), String> {
    let csv = read_csv(text)?;
    let h = &csv.header;
    if h.first().map(String::as_str) != Some("tau") {
        return Err("first column must be tau".into());
    }
    if h.len() < 4 || (h.len() - 1) % 3 != 0 {
        return Err(format!("expected tau plus triples of columns, got {} columns", h.len()));
    }
    for c in h[1..].chunks(3) {
        let m = c[0].strip_prefix("re_").ok_or(format!("column {} should start with re_", c[0]))?;
        if m.parse::<photon_prop::Provenance>().is_err() {
            return Err(format!("unknown method {m} in header"));
        }
        if c[1] != format!("im_{m}") || c[2] != format!("abs_{m}") {
            return Err(format!("columns for {m} must be re_{m},im_{m},abs_{m}"));
        }
    }
    if csv.rows.is_empty() {
        return Err("no data rows".into());
    }
    let mut last = f64::NEG_INFINITY;
    for (n, row) in csv.rows.iter().enumerate() {
        let v: Vec<f64> = row
            .iter()
            .map(|f| f.parse::<f64>().map_err(|_| format!("row {}: '{f}' is not a float", n + 1)))
            .collect::<std::result::Result<_, _>>()?;
        if v.iter().any(|x| !x.is_finite()) {
            return Err(format!("row {}: non-finite value", n + 1));
        }
        if v[0] <= last {
            return Err(format!("row {}: tau not increasing", n + 1));
        }
        last = v[0];
        for c in v[1..].chunks(3) {
            if (c[0].hypot(c[1]) - c[2]).abs() > 1e-12 * (1.0 + c[2]) {
                return Err(format!("row {}: abs column inconsistent", n + 1));
            }
        }
    }
    Ok(())
}

/// Checks a generic numeric table: given header, finite floats except in
/// the named text columns, where empty numeric fields are allowed if `optional`.
pub fn check_table_schema(
    text: &str,
    header: &[&str],
    text_columns: &[&str],
    optional: &[&str],
) -> std::result::Result<(), String> {
    let csv = read_csv(text)?;
    let h: Vec<&str> = csv.header.iter().map(String::as_str).collect();
    if h != header {
        return Err(format!("header {h:?}, expected {header:?}"));
    }
    if csv.rows.is_empty() {
        return Err("no data rows".into());
    }
    for (n, row) in csv.rows.iter().enumerate() {
        for (col, f) in h.iter().zip(row) {
            if text_columns.contains(col) {
                continue;
            }
            if f.is_empty() && optional.contains(col) {
                continue;
            }
            match f.parse::<f64>() {
                Ok(x) if x.is_finite() => {}
                _ => return Err(format!("row {}: column {col}: '{f}' is not a finite float", n + 1)),
            }
        }
    }
    Ok(())
}

/// Largest per-value difference between two CSV files with identical layout.
/// Non-numeric fields must match exactly.
pub fn compare_csv(actual: &str, expected: &str, tol: f64) -> std::result::Result<f64, String> {
    let a = read_csv(actual)?;
    let e = read_csv(expected)?;
    if a.header != e.header {
        return Err(format!("header differs: {:?} vs {:?}", a.header, e.header));
    }
    if a.rows.len() != e.rows.len() {
        return Err(format!("{} rows vs {} expected", a.rows.len(), e.rows.len()));
    }
    let mut worst: f64 = 0.0;
    for (n, (ra, re)) in a.rows.iter().zip(&e.rows).enumerate() {
        for (c, (fa, fe)) in ra.iter().zip(re).enumerate() {
            match (fa.parse::<f64>(), fe.parse::<f64>()) {
                (Ok(x), Ok(y)) => {
                    let d = (x - y).abs() / y.abs().max(1.0);
                    worst = worst.max(d);
                    if d > tol {
                        return Err(format!(
                            "row {} column {}: {fa} vs {fe}",
                            n + 1,
                            a.header[c]
                        ));
                    }
                }
                _ if fa == fe => {}
                _ => return Err(format!("row {} column {}: '{fa}' vs '{fe}'", n + 1, a.header[c])),
            }
        }
    }
    Ok(worst)
}
