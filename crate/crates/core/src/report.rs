//! Report rows and deterministic JSON/CSV emission.
//!
//! Floats are written with 17 significant digits (`{:.16e}`), non-finite
//! values as `null`, so identical inputs give byte-identical output.

use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{Error, Result};

/// One checked inequality: the computed quantity, its bounds, and the name
/// of the estimate it instantiates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub op: String,
    pub anchor: String,
    pub inputs: serde_json::Value,
    pub exact: f64,
    pub bounds: Vec<f64>,
    pub pass: bool,
}

impl CheckRow {
    pub fn new(op: &str, anchor: &str, inputs: serde_json::Value, exact: f64, bounds: Vec<f64>, pass: bool) -> Self {
        CheckRow { op: op.into(), anchor: anchor.into(), inputs, exact, bounds, pass }
    }
}

/// A single norm evaluation, `{op, params, value}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormRow {
    pub op: String,
    pub params: serde_json::Value,
    pub value: f64,
}

struct FixedFloat<'a>(PrettyFormatter<'a>);

fn write_float<W: ?Sized + Write>(w: &mut W, x: f64) -> io::Result<()> {
    if x.is_finite() {
        write!(w, "{x:.16e}")
    } else {
        w.write_all(b"null")
    }
}

impl Formatter for FixedFloat<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, x: f64) -> io::Result<()> {
        write_float(w, x)
    }
    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, x: f32) -> io::Result<()> {
        write_float(w, x as f64)
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Pretty-printed JSON with fixed float formatting and a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloat(PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(|e| Error::Io(e.to_string()))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

/// Integral values below `1e15` print as integers, everything else as `{:.16e}`.
pub fn format_csv_value(x: f64) -> String {
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "nan".into()
    }
}

pub fn to_csv(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| format_csv_value(x)).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn fixed_float_json() {
        let row = CheckRow::new("x", "anchor", json!({"n": 3}), 0.1, vec![1.0, f64::INFINITY], true);
        let s = to_json(&row).unwrap();
        assert!(s.contains("\"exact\": 1.0000000000000001e-1"));
        assert!(s.contains("null"));
        assert!(s.contains("\"n\": 3"));
        let back: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["exact"].as_f64(), Some(0.1));
        assert_eq!(s, to_json(&row).unwrap());
    }

    #[test]
    fn csv_cells() {
        let s = to_csv(&["n", "v"], &[vec![1.0, 0.5], vec![2.0, f64::NAN]]);
        assert_eq!(s, "n,v\n1,5.0000000000000000e-1\n2,nan\n");
    }
}
