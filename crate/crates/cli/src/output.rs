use std::io::{self, Write};

use chowlab::IntPolynomial;
use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> io::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)
}

/// One CSV row: leading fields, then a polynomial spread over `c0, c1, ...`.
pub struct PolyRow<'a> {
    pub fields: Vec<String>,
    pub poly: &'a IntPolynomial,
}

/// Writes `header` followed by `c0..c{m}` columns, padding short
/// polynomials with zeros so every row has the same width.
pub fn poly_csv(header: &[&str], rows: &[PolyRow<'_>]) -> io::Result<()> {
    let width = rows
        .iter()
        .map(|r| r.poly.coeffs().len())
        .max()
        .unwrap_or(0)
        .max(1);
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    let head = header
        .iter()
        .map(|h| h.to_string())
        .chain((0..width).map(|i| format!("c{i}")));
    w.write_record(head.collect::<Vec<_>>())?;
    for row in rows {
        let coeffs = (0..width).map(|i| row.poly.coeff(i).to_string());
        w.write_record(row.fields.iter().cloned().chain(coeffs).collect::<Vec<_>>())?;
    }
    w.flush()
}

/// Plain records under a header.
pub fn csv_records(header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
}
