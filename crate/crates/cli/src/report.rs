use std::io::{self, Write};

use largebohr::sweeps::SuiteReport;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub tolerances: Value,
    pub pass: Option<bool>,
    pub version: &'static str,
}

impl Report {
    pub fn new(command: &str, inputs: Value, results: Value, tolerances: Value, pass: Option<bool>) -> Self {
        Self {
            schema: SCHEMA,
            command: command.to_owned(),
            inputs,
            results,
            tolerances,
            pass,
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

/// Every float as `{:.16e}`: 17 significant digits, round-trips exactly.
struct SigFigs;

impl serde_json::ser::Formatter for SigFigs {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{v:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        write!(w, "{:.16e}", v as f64)
    }
}

pub fn write_json<W: Write, T: Serialize>(mut out: W, value: &T) -> io::Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFigs);
    value.serialize(&mut ser).map_err(io::Error::other)?;
    out.write_all(b"\n")
}

fn csv_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// One record per executed check, LF-terminated.
pub fn write_csv<W: Write>(out: W, suites: &[SuiteReport]) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(["check", "lhs", "rhs", "slack", "pass"])?;
    for s in suites {
        for row in &s.rows {
            w.write_record([
                format!("{}/{}#{}", s.suite, row.check, row.trial),
                csv_real(row.lhs),
                csv_real(row.rhs),
                csv_real(row.slack),
                row.pass.to_string(),
            ])?;
        }
    }
    w.flush()
}
