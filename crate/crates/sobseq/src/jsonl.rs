//! JSON Lines IO for finite-support sequences.
//!
//! One entry per line: `{"m": <integer>, "re": <decimal>, "im": <decimal>}`.
//! Entries with `re = im = 0` are rejected on load (the canonical sparse
//! form stores no zeros), as are duplicate indices.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use sobseq_core::{Complex64, SeqVector};

use crate::error::CliError;

#[derive(Debug, Serialize, Deserialize)]
struct EntryLine {
    m: i64,
    re: f64,
    im: f64,
}

pub fn parse_seq_vector(text: &str) -> Result<SeqVector, CliError> {
    let mut v = SeqVector::zero();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let entry: EntryLine = serde_json::from_str(line).map_err(|e| {
            CliError::invalid(format!("line {}: invalid entry: {e}", lineno + 1))
        })?;
        if entry.re == 0.0 && entry.im == 0.0 {
            return Err(CliError::invalid(format!(
                "line {}: zero entries are not stored; omit index {}",
                lineno + 1,
                entry.m
            )));
        }
        if !(entry.re.is_finite() && entry.im.is_finite()) {
            return Err(CliError::invalid(format!(
                "line {}: entries must be finite",
                lineno + 1
            )));
        }
        if v.get(entry.m) != Complex64::new(0.0, 0.0) {
            return Err(CliError::invalid(format!(
                "line {}: duplicate index {}",
                lineno + 1,
                entry.m
            )));
        }
        v.set(entry.m, Complex64::new(entry.re, entry.im));
    }
    Ok(v)
}

pub fn read_seq_vector(mut reader: impl BufRead) -> Result<SeqVector, CliError> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    parse_seq_vector(&text)
}

/// Writes entries in increasing index order, one JSON object per line.
pub fn write_seq_vector(mut writer: impl Write, v: &SeqVector) -> std::io::Result<()> {
    for (m, z) in v.support() {
        let line = serde_json::to_string(&EntryLine {
            m,
            re: z.re,
            im: z.im,
        })
        .expect("entry lines always serialize");
        writeln!(writer, "{line}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let v = SeqVector::from_entries([
            (-3, Complex64::new(1.0, -2.0)),
            (0, Complex64::new(0.5, 0.0)),
            (7, Complex64::new(0.0, 1.0)),
        ]);
        let mut buf = Vec::new();
        write_seq_vector(&mut buf, &v).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let back = parse_seq_vector(&text).unwrap();
        assert_eq!(v, back);
    }

    #[test]
    fn rejects_zero_entries() {
        let r = parse_seq_vector(r#"{"m": 0, "re": 0.0, "im": 0.0}"#);
        assert!(r.is_err());
    }

    #[test]
    fn rejects_duplicates_and_garbage() {
        let two = "{\"m\": 1, \"re\": 1.0, \"im\": 0.0}\n{\"m\": 1, \"re\": 2.0, \"im\": 0.0}";
        assert!(parse_seq_vector(two).is_err());
        assert!(parse_seq_vector("not json").is_err());
        assert!(parse_seq_vector(r#"{"m": 1, "re": 1e999, "im": 0.0}"#).is_err());
    }

    #[test]
    fn blank_lines_are_fine() {
        let text = "\n{\"m\": 5, \"re\": 1.0, \"im\": 0.0}\n\n";
        let v = parse_seq_vector(text).unwrap();
        assert_eq!(v.support_len(), 1);
    }
}
