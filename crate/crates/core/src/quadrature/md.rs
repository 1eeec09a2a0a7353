use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::point::{SpherePoint, UNIT_TOLERANCE};

use super::QuadratureRule;

/// Reads a node file with one `x y z w` row per point.
///
/// Blank lines and lines starting with `#` are skipped. Points must lie on
/// the sphere within [`UNIT_TOLERANCE`] and weights must be positive. The
/// order is taken as `⌈√N⌉ - 1` for `N` points, the degree of a rule with
/// `(n+1)²` nodes.
pub fn load_md_nodes(path: impl AsRef<Path>) -> Result<QuadratureRule> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let row = raw.trim();
        if row.is_empty() || row.starts_with('#') {
            continue;
        }
        let malformed = |msg: String| Error::MalformedRow { path: path.to_path_buf(), line, msg };
        let fields: Vec<&str> = row.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(malformed(format!("expected 4 columns, found {}", fields.len())));
        }
        let mut v = [0.0; 4];
        for (slot, f) in v.iter_mut().zip(&fields) {
            *slot = f.parse::<f64>().map_err(|e| malformed(format!("`{f}`: {e}")))?;
            if !slot.is_finite() {
                return Err(malformed(format!("non-finite value `{f}`")));
            }
        }
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if (norm - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::OffSphere { path: path.to_path_buf(), line, norm });
        }
        if v[3] <= 0.0 {
            return Err(Error::NonPositiveWeight { path: path.to_path_buf(), line, weight: v[3] });
        }
        points.push(SpherePoint::new(v[0], v[1], v[2])?);
        weights.push(v[3]);
    }
    if points.is_empty() {
        return Err(Error::MalformedRow { path: path.to_path_buf(), line: 0, msg: "no nodes".into() });
    }
    let order = ((points.len() as f64).sqrt().ceil() as usize).saturating_sub(1);
    QuadratureRule::new(points, weights, order)
}
