//! On-disk formats: polygon JSON and the chord sidecar.

use std::collections::BTreeMap;

use chord_euler::chords::{Chord, ChordSet};
use chord_euler::exact_scalar::QSqrt3;
use chord_euler::geometry::{validate_polygon, Point, Polygon};
use chord_euler::Error;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexText {
    pub x: String,
    pub y: String,
}

/// `{"vertices": [{"x": "...", "y": "..."}, ...]}` with coordinates in the
/// exact scalar text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonFile {
    pub vertices: Vec<VertexText>,
}

impl PolygonFile {
    pub fn from_polygon(p: &Polygon) -> PolygonFile {
        PolygonFile {
            vertices: p.vertices().iter().map(|v| VertexText { x: v.x.to_string(), y: v.y.to_string() }).collect(),
        }
    }

    pub fn points(&self) -> Result<Vec<Point>, Error> {
        self.vertices
            .iter()
            .map(|v| Ok(Point::new(v.x.parse::<QSqrt3>()?, v.y.parse::<QSqrt3>()?)))
            .collect()
    }

    pub fn to_polygon(&self) -> Result<Polygon, Error> {
        validate_polygon(self.points()?)
    }
}

pub fn parse_polygon(text: &str) -> Result<Polygon, Error> {
    let f: PolygonFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    f.to_polygon()
}

pub fn print_polygon(p: &Polygon) -> String {
    let mut s = serde_json::to_string_pretty(&PolygonFile::from_polygon(p)).expect("plain data serializes");
    s.push('\n');
    s
}

/// `{"chords": ["i-j", ...], "labels": {"e1": "i-j", ...}}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub chords: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
}

impl Sidecar {
    pub fn new(set: &ChordSet, labels: &BTreeMap<usize, Chord>) -> Sidecar {
        Sidecar {
            chords: set.iter().map(|c| c.to_string()).collect(),
            labels: labels.iter().map(|(k, c)| (format!("e{k}"), c.to_string())).collect(),
        }
    }

    pub fn chords(&self) -> Result<Vec<Chord>, Error> {
        self.chords.iter().map(|c| c.parse()).collect()
    }
}

pub fn parse_sidecar(text: &str) -> Result<Sidecar, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn print_sidecar(s: &Sidecar) -> String {
    let mut out = serde_json::to_string_pretty(s).expect("plain data serializes");
    out.push('\n');
    out
}
