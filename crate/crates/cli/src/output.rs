//! Number formatting and the CSV/JSON writers.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use relresp::Complex64;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde_json::value::RawValue;

pub const OUTPUT_DIR_ENV: &str = "RELRESP_OUTPUT_DIR";

/// 17 significant digits, which round-trip every `f64` bit-exactly.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// A float serialised as a JSON number with 17 significant digits
/// (`null` when not finite).
#[derive(Debug, Clone, Copy)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(fmt_f64(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

/// `{"re": .., "im": ..}`.
#[derive(Debug, Clone, Copy)]
pub struct Pair(pub Complex64);

impl Serialize for Pair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Pair", 2)?;
        st.serialize_field("re", &Num(self.0.re))?;
        st.serialize_field("im", &Num(self.0.im))?;
        st.end()
    }
}

/// Where a command writes: stdout, or a file resolved against
/// `$RELRESP_OUTPUT_DIR` when the path is relative.
pub fn resolve(path: Option<&Path>) -> Option<PathBuf> {
    let p = path?;
    if p.is_relative() {
        if let Some(dir) = std::env::var_os(OUTPUT_DIR_ENV) {
            return Some(PathBuf::from(dir).join(p));
        }
    }
    Some(p.to_path_buf())
}

pub fn open(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match resolve(path) {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}
