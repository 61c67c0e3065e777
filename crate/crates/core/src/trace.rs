//! CSV formats: input traces, verdicts and per-stream bounds.
//!
//! All files use `,` separators and a header row. Reals are written with 17
//! significant digits so they read back bit-identically.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::lang::{Spec, Type};
use crate::monitor::Verdict;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputValue {
    Real(f64),
    Bool(bool),
}

impl From<f64> for InputValue {
    fn from(x: f64) -> Self {
        InputValue::Real(x)
    }
}

impl From<bool> for InputValue {
    fn from(b: bool) -> Self {
        InputValue::Bool(b)
    }
}

/// One value per declared input.
pub type TraceEvent = BTreeMap<String, InputValue>;

/// Builds an event from `(name, value)` pairs.
pub fn event<I, K, V>(values: I) -> TraceEvent
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: Into<InputValue>,
{
    values
        .into_iter()
        .map(|(k, v)| (k.into(), v.into()))
        .collect()
}

pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn trace_error(row: usize, column: &str, message: impl Into<String>) -> Error {
    Error::Trace {
        row,
        column: column.to_string(),
        message: message.into(),
    }
}

/// Reads a trace for `spec`. The header must name exactly the declared
/// inputs, in any order. Rows are numbered from 1 after the header.
pub fn read_trace_from(reader: impl Read, spec: &Spec) -> Result<Vec<TraceEvent>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();

    for input in &spec.inputs {
        if !header.contains(&input.name) {
            return Err(trace_error(0, &input.name, "missing column"));
        }
    }
    let mut types = Vec::with_capacity(header.len());
    for name in &header {
        match spec.inputs.iter().find(|i| &i.name == name) {
            Some(input) => types.push(input.ty),
            None => return Err(trace_error(0, name, "extra column, not a declared input")),
        }
    }

    let mut events = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let row = row + 1;
        let record = record?;
        let mut ev = TraceEvent::new();
        for ((name, ty), cell) in header.iter().zip(&types).zip(record.iter()) {
            let value = match ty {
                Type::Float => match cell.parse::<f64>() {
                    Ok(x) if x.is_finite() => InputValue::Real(x),
                    _ => return Err(trace_error(row, name, format!("expected a real, got `{cell}`"))),
                },
                Type::Bool => match cell {
                    "true" => InputValue::Bool(true),
                    "false" => InputValue::Bool(false),
                    _ => {
                        return Err(trace_error(
                            row,
                            name,
                            format!("expected `true` or `false`, got `{cell}`"),
                        ))
                    }
                },
            };
            ev.insert(name.clone(), value);
        }
        events.push(ev);
    }
    Ok(events)
}

pub fn read_trace(path: impl AsRef<Path>, spec: &Spec) -> Result<Vec<TraceEvent>> {
    read_trace_from(std::fs::File::open(path)?, spec)
}

/// Writes events with columns in declaration order.
pub fn write_trace_to(writer: impl Write, spec: &Spec, events: &[TraceEvent]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(spec.inputs.iter().map(|i| i.name.as_str()))?;
    for (row, ev) in events.iter().enumerate() {
        let mut cells = Vec::with_capacity(spec.inputs.len());
        for input in &spec.inputs {
            let cell = match ev.get(&input.name) {
                Some(InputValue::Real(x)) => format_real(*x),
                Some(InputValue::Bool(b)) => b.to_string(),
                None => return Err(trace_error(row + 1, &input.name, "missing value")),
            };
            cells.push(cell);
        }
        wtr.write_record(&cells)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_trace(path: impl AsRef<Path>, spec: &Spec, events: &[TraceEvent]) -> Result<()> {
    write_trace_to(std::fs::File::create(path)?, spec, events)
}

pub const VERDICT_HEADER: [&str; 6] = ["step", "message", "fired", "lo", "hi", "overlap"];
pub const HULL_HEADER: [&str; 4] = ["step", "stream", "lo", "hi"];

pub fn write_verdicts_to(writer: impl Write, verdicts: &[Verdict]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(VERDICT_HEADER)?;
    for v in verdicts {
        wtr.write_record([
            v.step.to_string(),
            v.message.clone(),
            v.fired.to_string(),
            format_real(v.lo),
            format_real(v.hi),
            format_real(v.overlap),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_verdicts(path: impl AsRef<Path>, verdicts: &[Verdict]) -> Result<()> {
    write_verdicts_to(std::fs::File::create(path)?, verdicts)
}

fn parse_cell<T: std::str::FromStr>(record: &csv::StringRecord, row: usize, col: usize) -> Result<T> {
    let cell = record.get(col).unwrap_or("");
    cell.parse()
        .map_err(|_| trace_error(row, VERDICT_HEADER[col], format!("cannot parse `{cell}`")))
}

pub fn read_verdicts_from(reader: impl Read) -> Result<Vec<Verdict>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let header: Vec<&str> = rdr.headers()?.iter().collect();
    if header != VERDICT_HEADER {
        return Err(trace_error(0, "", format!("unexpected header {header:?}")));
    }
    rdr.records()
        .enumerate()
        .map(|(row, record)| {
            let record = record?;
            let row = row + 1;
            Ok(Verdict {
                step: parse_cell(&record, row, 0)?,
                message: record.get(1).unwrap_or("").to_string(),
                fired: parse_cell(&record, row, 2)?,
                lo: parse_cell(&record, row, 3)?,
                hi: parse_cell(&record, row, 4)?,
                overlap: parse_cell(&record, row, 5)?,
            })
        })
        .collect()
}

pub fn read_verdicts(path: impl AsRef<Path>) -> Result<Vec<Verdict>> {
    read_verdicts_from(std::fs::File::open(path)?)
}

/// Per-step stream bounds, one map per step.
pub type HullSeries = Vec<BTreeMap<String, (f64, f64)>>;

pub fn write_hulls_to(writer: impl Write, hulls: &HullSeries) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(HULL_HEADER)?;
    for (step, map) in hulls.iter().enumerate() {
        for (stream, &(lo, hi)) in map {
            wtr.write_record([step.to_string(), stream.clone(), format_real(lo), format_real(hi)])?;
        }
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_hulls(path: impl AsRef<Path>, hulls: &HullSeries) -> Result<()> {
    write_hulls_to(std::fs::File::create(path)?, hulls)
}

pub fn read_hulls_from(reader: impl Read) -> Result<HullSeries> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut out: HullSeries = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record?;
        let row = row + 1;
        let cell = |i: usize| record.get(i).unwrap_or("");
        let bad = |i: usize| trace_error(row, HULL_HEADER[i], format!("cannot parse `{}`", cell(i)));
        let step: usize = cell(0).parse().map_err(|_| bad(0))?;
        let lo: f64 = cell(2).parse().map_err(|_| bad(2))?;
        let hi: f64 = cell(3).parse().map_err(|_| bad(3))?;
        if out.len() <= step {
            out.resize_with(step + 1, BTreeMap::new);
        }
        out[step].insert(cell(1).to_string(), (lo, hi));
    }
    Ok(out)
}

pub fn read_hulls(path: impl AsRef<Path>) -> Result<HullSeries> {
    read_hulls_from(std::fs::File::open(path)?)
}
