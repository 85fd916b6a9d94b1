//! Result emission: CSV with 12 significant digits, or JSON.

use std::io::{self, Write};

use serde::Serialize;

use crate::config::OutputFormat;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats like C's `%.12g`.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let p = SIGNIFICANT_DIGITS;
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A record that can be written as one CSV row.
pub trait CsvRecord {
    fn header() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

pub fn opt(x: Option<f64>) -> String {
    x.map(fmt_g).unwrap_or_default()
}

pub fn write_csv<R: CsvRecord, W: Write>(rows: &[R], out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(R::header())?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush()
}

pub fn write_json<R: Serialize, W: Write>(rows: &[R], mut out: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)?;
    out.flush()
}

pub fn write_rows<R: CsvRecord + Serialize, W: Write>(
    rows: &[R],
    format: OutputFormat,
    out: W,
) -> io::Result<()> {
    match format {
        OutputFormat::Csv => write_csv(rows, out),
        OutputFormat::Json => write_json(rows, out),
    }
}
