//! JSON reading and writing for the domain types.
//!
//! Serialization goes through `serde_json`, whose float formatting is the
//! shortest decimal that parses back to the identical bits, so round-trips
//! are exact. Struct fields serialize in declaration order and no maps are
//! involved, so identical inputs produce byte-identical documents.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::classifier::SpectrumModel;
use crate::error::{Error, Result};
use crate::frame::FrameSpec;
use crate::multop::MultOpSpec;
use crate::projection::Projection;

/// Pretty JSON with a trailing newline.
pub fn to_json_pretty<V: Serialize>(value: &V) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<V: Serialize>(path: &Path, value: &V) -> Result<()> {
    fs::write(path, to_json_pretty(value)?)?;
    Ok(())
}

fn read_json<V: DeserializeOwned>(path: &Path) -> Result<V> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("cannot parse {}: {e}", path.display())))
}

/// Loads and validates a frame file: `{"dim": d, "vectors": [[...], ...]}`.
pub fn load_frame(path: &Path) -> Result<FrameSpec<f64>> {
    let frame: FrameSpec<f64> = read_json(path)?;
    frame.validate()?;
    Ok(frame)
}

/// Loads a projection file:
/// `{"dim": d, "rank": r, "basis_columns": [[...], ...]}`.
/// Orthonormality of the basis is checked during deserialization.
pub fn load_projection(path: &Path) -> Result<Projection<f64>> {
    read_json(path)
}

/// Loads and validates a spectrum model file:
/// `{"family": ..., "params": {...}, "limit_points": [...]}`.
pub fn load_model(path: &Path) -> Result<SpectrumModel<f64>> {
    let model: SpectrumModel<f64> = read_json(path)?;
    model.validate()?;
    Ok(model)
}

/// Loads and validates a symbol file:
/// `{"domain": [a, b], "pieces": [{"end": ..., "coeffs": [...]}, ...]}`.
pub fn load_multop_spec(path: &Path) -> Result<MultOpSpec<f64>> {
    let spec: MultOpSpec<f64> = read_json(path)?;
    spec.validate()?;
    Ok(spec)
}
