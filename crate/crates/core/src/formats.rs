//! CSV files for observed matrices, bases and completed matrices.
//!
//! An observed-matrix file has one line per row; unobserved cells hold `*`.
//! Dimensions are inferred from the file.

use std::collections::BTreeMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::numerics::ObservedMatrix;
use crate::pattern::ObservationPattern;

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
    Error::Parse {
        line,
        column: 0,
        message: e.to_string(),
    }
}

fn read_cells(text: &str) -> Result<Vec<Vec<String>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        rows.push(record.iter().map(str::to_owned).collect());
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "no rows".into(),
        });
    }
    Ok(rows)
}

fn parse_number(cell: &str, line: usize, column: usize) -> Result<f64> {
    match cell.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::Parse {
            line,
            column,
            message: format!("expected a finite number or '*', found {cell:?}"),
        }),
    }
}

/// Parse an observed-matrix CSV.
pub fn parse_values_csv(text: &str) -> Result<ObservedMatrix> {
    let rows = read_cells(text)?;
    let (m, n) = (rows.len(), rows[0].len());
    let mut values = BTreeMap::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            if cell != "*" {
                values.insert((i, j), parse_number(cell, i + 1, j + 1)?);
            }
        }
    }
    let pattern = ObservationPattern::new(m, n, values.keys().copied())?;
    ObservedMatrix::new(pattern, values)
}

/// Parse a fully specified real matrix.
pub fn parse_matrix_csv(text: &str) -> Result<DMatrix<f64>> {
    let rows = read_cells(text)?;
    let (m, n) = (rows.len(), rows[0].len());
    let mut data = Vec::with_capacity(m * n);
    for (i, row) in rows.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            data.push(parse_number(cell, i + 1, j + 1)?);
        }
    }
    Ok(DMatrix::from_row_slice(m, n, &data))
}

fn write_rows(rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for row in rows {
        writer.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("flush to memory")).expect("csv output is utf-8")
}

pub fn matrix_to_csv(x: &DMatrix<f64>) -> String {
    write_rows(x.row_iter().map(|r| r.iter().map(|v| format!("{v:e}")).collect()))
}

pub fn values_to_csv(obs: &ObservedMatrix) -> String {
    write_rows((0..obs.m()).map(|i| {
        (0..obs.n())
            .map(|j| obs.get(i, j).map_or_else(|| "*".to_owned(), |v| format!("{v:e}")))
            .collect()
    }))
}
