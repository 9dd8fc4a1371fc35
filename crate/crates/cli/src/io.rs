//! File formats. CSV is written by hand so floats carry a fixed 17
//! significant digits (`{:.16e}`), which round-trips every f64 exactly
//! and keeps reruns byte-identical; JSON goes through serde, whose float
//! encoding is also exact. Readers for both formats live here too, so
//! every emitted file can be loaded back without loss.

use std::io::{BufRead, Write};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub const SERIES_HEADER: &str = "t,delta_p,bias,m1,m2,p_max";
pub const CARPET_HEADER: &str = "t,x,p,p_normalized";
pub const DIAGRAM_HEADER: &str = "theta_a_deg,theta_b_deg,bias_a,bias_b,bias_combined,class";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub t: u64,
    pub delta_p: f64,
    pub bias: f64,
    pub m1: f64,
    pub m2: f64,
    pub p_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CarpetRow {
    pub t: u64,
    pub x: i64,
    pub p: f64,
    pub p_normalized: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramRow {
    pub theta_a_deg: f64,
    pub theta_b_deg: f64,
    pub bias_a: f64,
    pub bias_b: f64,
    pub bias_combined: f64,
    pub class: String,
}

/// 17 significant digits: enough to reconstruct any f64 bit for bit.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(s: &str) -> Result<f64, CliError> {
    s.parse()
        .map_err(|e| CliError::Runtime(format!("bad float `{s}`: {e}")))
}

fn parse_int<T: std::str::FromStr>(s: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    s.parse()
        .map_err(|e| CliError::Runtime(format!("bad integer `{s}`: {e}")))
}

fn split_line<'l>(line: &'l str, n: usize, what: &str) -> Result<Vec<&'l str>, CliError> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != n {
        return Err(CliError::Runtime(format!(
            "{what} row needs {n} fields, got {}: `{line}`",
            fields.len()
        )));
    }
    Ok(fields)
}

fn expect_header(
    lines: &mut impl Iterator<Item = std::io::Result<String>>,
    want: &str,
) -> Result<(), CliError> {
    match lines.next() {
        Some(Ok(line)) if line == want => Ok(()),
        Some(Ok(line)) => Err(CliError::Runtime(format!(
            "expected header `{want}`, found `{line}`"
        ))),
        Some(Err(e)) => Err(e.into()),
        None => Err(CliError::Runtime("empty file".into())),
    }
}

pub fn write_series(
    w: &mut (impl Write + ?Sized),
    format: Format,
    rows: &[SeriesRow],
) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            writeln!(w, "{SERIES_HEADER}")?;
            for r in rows {
                writeln!(
                    w,
                    "{},{},{},{},{},{}",
                    r.t,
                    fmt_f64(r.delta_p),
                    fmt_f64(r.bias),
                    fmt_f64(r.m1),
                    fmt_f64(r.m2),
                    fmt_f64(r.p_max)
                )?;
            }
        }
        Format::Json => write_json(w, rows)?,
    }
    Ok(())
}

pub fn read_series(r: impl BufRead, format: Format) -> Result<Vec<SeriesRow>, CliError> {
    match format {
        Format::Csv => {
            let mut lines = r.lines();
            expect_header(&mut lines, SERIES_HEADER)?;
            lines
                .map(|line| {
                    let line = line?;
                    let f = split_line(&line, 6, "series")?;
                    Ok(SeriesRow {
                        t: parse_int(f[0])?,
                        delta_p: parse_f64(f[1])?,
                        bias: parse_f64(f[2])?,
                        m1: parse_f64(f[3])?,
                        m2: parse_f64(f[4])?,
                        p_max: parse_f64(f[5])?,
                    })
                })
                .collect()
        }
        Format::Json => read_json(r),
    }
}

pub fn write_carpet(
    w: &mut (impl Write + ?Sized),
    format: Format,
    rows: &[CarpetRow],
) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            writeln!(w, "{CARPET_HEADER}")?;
            for r in rows {
                writeln!(
                    w,
                    "{},{},{},{}",
                    r.t,
                    r.x,
                    fmt_f64(r.p),
                    fmt_f64(r.p_normalized)
                )?;
            }
        }
        Format::Json => write_json(w, rows)?,
    }
    Ok(())
}

pub fn read_carpet(r: impl BufRead, format: Format) -> Result<Vec<CarpetRow>, CliError> {
    match format {
        Format::Csv => {
            let mut lines = r.lines();
            expect_header(&mut lines, CARPET_HEADER)?;
            lines
                .map(|line| {
                    let line = line?;
                    let f = split_line(&line, 4, "carpet")?;
                    Ok(CarpetRow {
                        t: parse_int(f[0])?,
                        x: parse_int(f[1])?,
                        p: parse_f64(f[2])?,
                        p_normalized: parse_f64(f[3])?,
                    })
                })
                .collect()
        }
        Format::Json => read_json(r),
    }
}

pub fn write_diagram(
    w: &mut (impl Write + ?Sized),
    format: Format,
    rows: &[DiagramRow],
) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            writeln!(w, "{DIAGRAM_HEADER}")?;
            for r in rows {
                writeln!(
                    w,
                    "{},{},{},{},{},{}",
                    fmt_f64(r.theta_a_deg),
                    fmt_f64(r.theta_b_deg),
                    fmt_f64(r.bias_a),
                    fmt_f64(r.bias_b),
                    fmt_f64(r.bias_combined),
                    r.class
                )?;
            }
        }
        Format::Json => write_json(w, rows)?,
    }
    Ok(())
}

pub fn read_diagram(r: impl BufRead, format: Format) -> Result<Vec<DiagramRow>, CliError> {
    match format {
        Format::Csv => {
            let mut lines = r.lines();
            expect_header(&mut lines, DIAGRAM_HEADER)?;
            lines
                .map(|line| {
                    let line = line?;
                    let f = split_line(&line, 6, "diagram")?;
                    Ok(DiagramRow {
                        theta_a_deg: parse_f64(f[0])?,
                        theta_b_deg: parse_f64(f[1])?,
                        bias_a: parse_f64(f[2])?,
                        bias_b: parse_f64(f[3])?,
                        bias_combined: parse_f64(f[4])?,
                        class: f[5].to_string(),
                    })
                })
                .collect()
        }
        Format::Json => read_json(r),
    }
}

fn write_json<T: Serialize>(w: &mut (impl Write + ?Sized), rows: &[T]) -> Result<(), CliError> {
    serde_json::to_writer(&mut *w, rows)
        .map_err(|e| CliError::Runtime(format!("json encoding failed: {e}")))?;
    writeln!(w)?;
    Ok(())
}

fn read_json<T: for<'de> Deserialize<'de>>(r: impl BufRead) -> Result<Vec<T>, CliError> {
    serde_json::from_reader(r).map_err(|e| CliError::Runtime(format!("json decoding failed: {e}")))
}
