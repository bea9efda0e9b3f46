//! CSV ingestion and emission.
//!
//! Input convention: UTF-8, comma-separated, one header row, the first
//! named column is the response and the remaining columns are regressors.
//! Every cell must parse as a finite decimal real (no thousands
//! separators, no missing cells). Row numbers in diagnostics count the
//! header as row 1; columns are 1-based.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use residlm_core::RegressionData;

use crate::error::{CliError, Result};

/// Reads a regression dataset from a CSV file; the intercept is always
/// enabled.
pub fn ingest_csv(path: &Path) -> Result<RegressionData> {
    let rows = read_rows(path)?;
    let header = &rows[0];
    if header.len() < 2 {
        return Err(CliError::Data(format!(
            "{}: need a response column and at least one regressor, found {} column(s)",
            path.display(),
            header.len()
        )));
    }
    if rows.len() < 2 {
        return Err(CliError::Data(format!(
            "{}: no data rows after the header",
            path.display()
        )));
    }

    let n = rows.len() - 1;
    let mut response = Vec::with_capacity(n);
    let mut columns: Vec<(String, Vec<f64>)> = header[1..]
        .iter()
        .map(|name| (name.clone(), Vec::with_capacity(n)))
        .collect();

    for (idx, row) in rows[1..].iter().enumerate() {
        let row_number = idx + 2;
        for (col_idx, cell) in row.iter().enumerate() {
            let value = parse_cell(path, cell, row_number, col_idx + 1)?;
            if col_idx == 0 {
                response.push(value);
            } else {
                columns[col_idx - 1].1.push(value);
            }
        }
    }

    RegressionData::new(response, columns, true).map_err(|e| {
        CliError::Data(format!("{}: {e}", path.display()))
    })
}

/// Reads a two-column (maturity, yield) CSV used to supply observed yields
/// to the term-structure demo.
pub fn read_yield_csv(path: &Path) -> Result<(Vec<f64>, Vec<f64>)> {
    let rows = read_rows(path)?;
    if rows[0].len() != 2 {
        return Err(CliError::Data(format!(
            "{}: yield files need exactly two columns (maturity, yield), found {}",
            path.display(),
            rows[0].len()
        )));
    }
    if rows.len() < 2 {
        return Err(CliError::Data(format!(
            "{}: no data rows after the header",
            path.display()
        )));
    }
    let mut maturities = Vec::with_capacity(rows.len() - 1);
    let mut yields = Vec::with_capacity(rows.len() - 1);
    for (idx, row) in rows[1..].iter().enumerate() {
        let row_number = idx + 2;
        maturities.push(parse_cell(path, &row[0], row_number, 1)?);
        yields.push(parse_cell(path, &row[1], row_number, 2)?);
    }
    Ok((maturities, yields))
}

/// Writes a dataset to CSV with the response first, at full round-trip
/// precision.
pub fn write_csv(data: &RegressionData, response_name: &str, path: &Path) -> Result<()> {
    let mut file = File::create(path)?;
    let mut header = vec![response_name.to_string()];
    header.extend(data.columns().iter().map(|c| c.name.clone()));
    writeln!(file, "{}", header.join(","))?;
    for i in 0..data.n() {
        let mut row = vec![format!("{}", data.response()[i])];
        for col in data.columns() {
            row.push(format!("{}", col.values[i]));
        }
        writeln!(file, "{}", row.join(","))?;
    }
    Ok(())
}

/// Resolves `--input`: a single CSV file, or a directory whose `*.csv`
/// files (sorted by name) become one labelled dataset each.
pub fn ingest_input(path: &Path) -> Result<Vec<(String, RegressionData)>> {
    let mut out = Vec::new();
    for file in input_files(path)? {
        out.push((label_of(&file), ingest_csv(&file)?));
    }
    Ok(out)
}

/// Like [`ingest_input`] but for (maturity, yield) files.
pub fn ingest_yield_input(path: &Path) -> Result<Vec<(String, Vec<f64>, Vec<f64>)>> {
    let mut out = Vec::new();
    for file in input_files(path)? {
        let (maturities, yields) = read_yield_csv(&file)?;
        out.push((label_of(&file), maturities, yields));
    }
    Ok(out)
}

fn label_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn input_files(path: &Path) -> Result<Vec<PathBuf>> {
    if !path.exists() {
        return Err(CliError::Data(format!("file not found: {}", path.display())));
    }
    if path.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(path)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file()
                && p.extension()
                    .map(|ext| ext.eq_ignore_ascii_case("csv"))
                    .unwrap_or(false)
        })
        .collect();
    if files.is_empty() {
        return Err(CliError::Data(format!(
            "no .csv files in directory {}",
            path.display()
        )));
    }
    files.sort();
    Ok(files)
}

/// Reads and validates the raw cell grid: consistent field counts, unique
/// non-empty headers.
fn read_rows(path: &Path) -> Result<Vec<Vec<String>>> {
    if !path.exists() {
        return Err(CliError::Data(format!("file not found: {}", path.display())));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;

    let mut rows: Vec<Vec<String>> = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            CliError::Data(format!("{}: row {}: {e}", path.display(), idx + 1))
        })?;
        rows.push(record.iter().map(|s| s.trim().to_string()).collect());
    }
    if rows.is_empty() {
        return Err(CliError::Data(format!("{}: empty file", path.display())));
    }

    let header = &rows[0];
    let mut seen: Vec<&str> = Vec::new();
    for name in header {
        if name.is_empty() {
            return Err(CliError::Data(format!(
                "{}: empty header field",
                path.display()
            )));
        }
        if seen.contains(&name.as_str()) {
            return Err(CliError::Data(format!(
                "{}: duplicate header `{name}`",
                path.display()
            )));
        }
        seen.push(name);
    }
    for (idx, row) in rows.iter().enumerate().skip(1) {
        if row.len() != header.len() {
            return Err(CliError::Data(format!(
                "{}: row {} has {} fields, expected {}",
                path.display(),
                idx + 1,
                row.len(),
                header.len()
            )));
        }
    }
    Ok(rows)
}

fn parse_cell(path: &Path, cell: &str, row: usize, column: usize) -> Result<f64> {
    let parsed: std::result::Result<f64, _> = cell.parse();
    match parsed {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CliError::Data(format!(
            "{}: could not parse cell at row {row}, column {column}: `{cell}`",
            path.display()
        ))),
    }
}
