//! Locale-independent formatting for CSV output.

use std::io::{self, Write};

/// Scientific notation with a lowercase `e` and seven significant digits.
/// Non-finite values print as `nan`, `inf` or `-inf`.
pub fn sci(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.6e}")
    }
}

pub fn write_row<W: Write, S: AsRef<str>>(w: &mut W, fields: &[S]) -> io::Result<()> {
    let line = fields
        .iter()
        .map(AsRef::as_ref)
        .collect::<Vec<_>>()
        .join(",");
    writeln!(w, "{line}")
}
