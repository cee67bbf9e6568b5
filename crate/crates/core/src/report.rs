//! Text serialisation helpers: every float is written with 17 significant
//! digits so that it parses back to the identical `f64`.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};

/// `x` in scientific notation with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// JSON formatter that writes floats via [`fmt17`] and non-finite floats as
/// `null`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sig17Formatter;

impl Sig17Formatter {
    fn float<W: ?Sized + io::Write>(writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(fmt17(value).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }
}

impl Formatter for Sig17Formatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        Self::float(writer, value)
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        Self::float(writer, value as f64)
    }
}

/// Serialises `value` as compact JSON with 17-significant-digit floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, Sig17Formatter);
    value
        .serialize(&mut ser)
        .expect("serialising in-memory reports cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}
