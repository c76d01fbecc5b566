use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::value::RawValue;
use tempfile::NamedTempFile;

use super::CliError;

/// A float as a JSON number with 17 significant digits; non-finite values become `null`.
pub fn num(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { format!("{x:.16e}") } else { "null".to_owned() };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Compute(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Writes `contents` to `path` via a temporary file in the same directory,
/// so the target is either fully written or left untouched.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("cannot write {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Writes to `path` if given, else to standard output.
pub fn emit(path: Option<&Path>, contents: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => write_atomic(p, contents),
        None => std::io::stdout()
            .write_all(contents)
            .map_err(|e| CliError::Io(format!("cannot write to standard output: {e}"))),
    }
}
