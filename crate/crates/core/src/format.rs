//! Fixed float formatting for CSV and JSON outputs.

use serde::Serialize;
use serde_json::ser::Formatter;
use std::io;

/// 17 significant digits in scientific notation, e.g. `9.6000000000000000e-1`.
pub fn float17(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// JSON formatter that writes every float with [`float17`].
#[derive(Debug, Default, Clone, Copy)]
pub struct Float17Formatter;

impl Formatter for Float17Formatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(float17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serializes to compact JSON with 17-digit floats. Keys come out in the
/// order the value provides them; `serde_json::Value` objects are sorted.
pub fn to_json_string<S: Serialize>(value: &S) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Float17Formatter);
    value
        .serialize(&mut ser)
        .expect("serializing to memory cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}
