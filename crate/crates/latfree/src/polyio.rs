//! Reading and writing the polygon text format.
//!
//! A polygon is a JSON object `{"vertices": [[x, y], ...]}` with vertices
//! in counter-clockwise order; clockwise input is accepted and reoriented.
//! Numbers round-trip losslessly.

use crate::geom::ConvexPolygon;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum PolygonIoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid polygon at line {line}, column {column}: {message}")]
    Format {
        line: usize,
        column: usize,
        message: String,
    },
}

pub fn parse_polygon(text: &str) -> Result<ConvexPolygon, PolygonIoError> {
    serde_json::from_str(text).map_err(|e| PolygonIoError::Format {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read_polygon(path: &Path) -> Result<ConvexPolygon, PolygonIoError> {
    let text = std::fs::read_to_string(path).map_err(|source| PolygonIoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_polygon(&text)
}

pub fn to_json(poly: &ConvexPolygon) -> String {
    serde_json::to_string(poly).expect("polygon serialization is infallible")
}

pub fn write_polygon(path: &Path, poly: &ConvexPolygon) -> Result<(), PolygonIoError> {
    std::fs::write(path, to_json(poly) + "\n").map_err(|source| PolygonIoError::Write {
        path: path.display().to_string(),
        source,
    })
}
