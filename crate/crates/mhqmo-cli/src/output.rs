//! Byte-stable output helpers: fixed float formatting and atomic writes.

use std::io::Write;
use std::path::Path;

use serde_json::Value;

/// Round to 9 significant digits; identical configs then serialize to
/// identical bytes regardless of how the value was computed.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let exp = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(8 - exp);
    (x * scale).round() / scale
}

/// Recursively round every float in a JSON tree to 9 significant digits.
/// Integers are left untouched.
pub fn round_json(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if n.is_f64() {
                let f = n.as_f64().expect("checked is_f64");
                if let Some(rounded) = serde_json::Number::from_f64(round_sig(f)) {
                    *value = Value::Number(rounded);
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

/// Serialize with rounded floats, pretty-printed, trailing newline.
pub fn to_stable_json(value: impl serde::Serialize) -> String {
    let mut v = serde_json::to_value(value).expect("serializable value");
    round_json(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("JSON trees always serialize");
    s.push('\n');
    s
}

/// C-style %.9e: nine fractional digits, sign and at least two exponent
/// digits.
pub fn fmt_e9(x: f64) -> String {
    let s = format!("{:.9e}", x);
    match s.split_once('e') {
        Some((mantissa, exp)) => {
            let (sign, digits) = match exp.strip_prefix('-') {
                Some(d) => ("-", d),
                None => ("+", exp),
            };
            format!("{mantissa}e{sign}{digits:0>2}")
        }
        None => s,
    }
}

/// Write through a temp file in the target directory and rename into
/// place, so failed runs never leave partial output behind.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(d) => tempfile::NamedTempFile::new_in(d)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
