//! Deterministic serialization helpers shared by all subcommands.
//!
//! Reproducibility contract: for a fixed command line (and seed), the bytes
//! written to `--out` or stdout are identical across runs and across thread
//! schedules. Floating-point numbers are printed with 17 significant digits
//! (`{:.16e}`), which round-trips every binary64 value; non-finite values
//! become JSON `null` (serde_json's default) or the CSV tokens `nan` /
//! `inf` / `-inf`.

use std::io::{self, Write as _};
use std::path::Path;

use serde::Serialize;

/// JSON formatter that pins float formatting to 17 significant digits.
#[derive(Clone, Copy, Default)]
pub struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{:.16e}", value as f64)
    }
}

/// Serialize `value` to compact JSON with pinned float formatting, plus a
/// trailing newline.
pub fn to_json_bytes<T: Serialize>(value: &T) -> anyhow::Result<Vec<u8>> {
    let mut buf = Vec::with_capacity(16 * 1024);
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFormatter);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(buf)
}

/// Float cell for CSV output: 17 significant digits, `.` decimal separator,
/// text tokens for non-finite values.
pub fn csv_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.16e}")
    }
}

/// Optional float cell: absent values print as `nan`.
pub fn csv_opt_f64(v: Option<f64>) -> String {
    match v {
        Some(x) => csv_f64(x),
        None => "nan".to_string(),
    }
}

/// Write the finished bytes to `--out` when given, stdout otherwise.
pub fn emit(out: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, bytes)
                .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?;
        }
        None => {
            io::stdout().write_all(bytes)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_floats_have_17_digits_and_roundtrip() {
        #[derive(Serialize)]
        struct S {
            x: f64,
            bad: f64,
        }
        let v = S {
            x: 1.014_443_418_565_626,
            bad: f64::NAN,
        };
        let bytes = to_json_bytes(&v).unwrap();
        let s = String::from_utf8(bytes).unwrap();
        assert!(s.contains("1.0144434185656259e0"), "{s}");
        assert!(s.contains("\"bad\":null"), "{s}");
        let parsed: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(parsed["x"].as_f64(), Some(1.014_443_418_565_626));
    }

    #[test]
    fn csv_tokens() {
        assert_eq!(csv_f64(f64::NAN), "nan");
        assert_eq!(csv_f64(f64::INFINITY), "inf");
        assert_eq!(csv_f64(f64::NEG_INFINITY), "-inf");
        assert_eq!(csv_opt_f64(None), "nan");
        assert_eq!(csv_f64(0.5), "5.0000000000000000e-1");
    }
}
