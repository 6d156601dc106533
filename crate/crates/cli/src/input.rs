use std::fmt;
use std::path::Path;

use serde_json::Value;

use torelli::invariants::CurveClass;
use torelli::{HArrangement, Hyperplane, MPoly, Quadric};

/// Failure of a command: malformed input (exit 1) or a library error, whose
/// exit code depends on whether a precondition was violated.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Lib(torelli::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_hypothesis() => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "malformed input: {m}"),
            CliError::Lib(e) if e.is_hypothesis() => write!(f, "precondition violated: {e}"),
            CliError::Lib(e) => write!(f, "malformed input: {e}"),
        }
    }
}

impl From<torelli::Error> for CliError {
    fn from(e: torelli::Error) -> Self {
        CliError::Lib(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn poly(path: &Path) -> CliResult<MPoly> {
    Ok(MPoly::from_json(&read_json(path)?)?)
}

pub fn quadric(path: &Path) -> CliResult<Quadric> {
    Ok(Quadric::from_json(&read_json(path)?)?)
}

pub fn hyperplane(path: &Path) -> CliResult<Hyperplane> {
    Ok(Hyperplane::from_json(&read_json(path)?)?)
}

pub fn arrangement(path: &Path) -> CliResult<HArrangement> {
    Ok(HArrangement::from_json(&read_json(path)?)?)
}

/// A list, either bare or under `key`.
fn list<'a>(v: &'a Value, key: &str, path: &Path) -> CliResult<&'a Vec<Value>> {
    v.as_array()
        .or_else(|| v.get(key).and_then(Value::as_array))
        .ok_or_else(|| CliError::Input(format!("{}: expected an array or an object with \"{key}\"", path.display())))
}

pub fn sections(path: &Path) -> CliResult<Vec<Hyperplane>> {
    let v = read_json(path)?;
    Ok(list(&v, "hyperplanes", path)?.iter().map(Hyperplane::from_json).collect::<Result<_, _>>()?)
}

/// Curve classes as `[[a, b], ...]` or `{"curves": [[a, b], ...]}`.
pub fn curves(path: &Path) -> CliResult<Vec<CurveClass>> {
    let v = read_json(path)?;
    list(&v, "curves", path)?
        .iter()
        .map(|c| {
            let pair: [u32; 2] = serde_json::from_value(c.clone())
                .map_err(|_| CliError::Input(format!("{}: a curve class is a pair [a, b], got {c}", path.display())))?;
            Ok(CurveClass::new(pair[0], pair[1])?)
        })
        .collect()
}
