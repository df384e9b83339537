pub mod bases;
pub mod outcomes;
pub mod sweep;
pub mod verify;

use std::path::Path;

use serde_json::Value;

use crate::error::CliError;
use crate::format::{emit, round_sig};

pub(crate) fn write_out(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    emit(text, path).map_err(|source| match path {
        Some(p) => CliError::Io { path: p.to_path_buf(), source },
        None => CliError::Stdout(source),
    })
}

/// Rounds every number in `v` to the emitted precision.
pub(crate) fn round_numbers(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_f64().filter(|_| !n.is_i64() && !n.is_u64()) {
                if let Some(r) = serde_json::Number::from_f64(round_sig(x)) {
                    *n = r;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}

pub(crate) fn to_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    let mut v = serde_json::to_value(value)?;
    round_numbers(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}
