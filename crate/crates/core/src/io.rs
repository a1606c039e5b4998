//! JSON file formats.
//!
//! Floats are written in scientific notation with 17 significant digits
//! (`{:.16e}`), which round-trips every `f64` exactly and does not depend on
//! the float printer of the JSON library.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::blocking::BlockingInstance;
use crate::geometry::{Point, PointSet};
use crate::graph::GeoGraph;
use crate::scenarios::{Roles, WitnessKind, WitnessSpec};
use crate::{Error, Result};

/// An `f64` serialized with 17 significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Exact(pub f64);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return Err(serde::ser::Error::custom("non-finite number"));
        }
        RawValue::from_string(format_f64(self.0))
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn exact_points(points: &[Point]) -> Vec<[Exact; 2]> {
    points.iter().map(|p| [Exact(p.x), Exact(p.y)]).collect()
}

fn to_points(raw: &[[f64; 2]]) -> Vec<Point> {
    raw.iter().map(|&[x, y]| Point::new(x, y)).collect()
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string(value)?;
    s.push('\n');
    Ok(s)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Serialize)]
struct PointFileOut {
    points: Vec<[Exact; 2]>,
}

#[derive(Deserialize)]
struct PointFileIn {
    points: Vec<[f64; 2]>,
}

/// `{"points": [[x, y], …]}`
pub fn point_set_to_json(points: &[Point]) -> Result<String> {
    to_json(&PointFileOut {
        points: exact_points(points),
    })
}

/// Parses a point file and validates general position.
pub fn point_set_from_json(text: &str) -> Result<PointSet> {
    let raw: PointFileIn = serde_json::from_str(text)?;
    PointSet::new(to_points(&raw.points))
}

#[derive(Serialize)]
struct GraphFileOut {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    edges: Vec<(usize, usize, Exact)>,
    points: Vec<[Exact; 2]>,
}

/// A graph file as read back; `points` is optional on input.
#[derive(Clone, Debug, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    #[serde(default)]
    pub k: Option<usize>,
    pub edges: Vec<(usize, usize, f64)>,
    #[serde(default)]
    pub points: Option<Vec<[f64; 2]>>,
}

impl GraphFile {
    pub fn points(&self) -> Option<Vec<Point>> {
        self.points.as_deref().map(to_points)
    }
}

/// `{"n": …, "k": …, "edges": [[i, j, weight], …], "points": [[x, y], …]}`;
/// the weight is the area of the edge's triangle.
pub fn graph_to_json(g: &GeoGraph) -> Result<String> {
    to_json(&GraphFileOut {
        n: g.n(),
        k: g.k(),
        edges: g
            .edges()
            .iter()
            .map(|e| (e.i, e.j, Exact(e.weight)))
            .collect(),
        points: exact_points(g.points().points()),
    })
}

pub fn graph_from_json(text: &str) -> Result<GraphFile> {
    let g: GraphFile = serde_json::from_str(text)?;
    if let Some(&(i, j, _)) = g
        .edges
        .iter()
        .find(|&&(i, j, _)| i >= g.n || j >= g.n || i == j)
    {
        return Err(Error::Parse(format!(
            "edge ({i}, {j}) is invalid for n = {}",
            g.n
        )));
    }
    if g.points.as_ref().is_some_and(|p| p.len() != g.n) {
        return Err(Error::Parse("point count differs from n".into()));
    }
    Ok(g)
}

#[derive(Serialize)]
struct BlockerFileOut {
    base: PointFileOut,
    k: usize,
    blockers: Vec<[Exact; 2]>,
}

#[derive(Deserialize)]
struct BlockerFileIn {
    base: PointFileIn,
    k: usize,
    blockers: Vec<[f64; 2]>,
}

/// `{"base": {"points": …}, "k": …, "blockers": [[x, y], …]}`
pub fn blockers_to_json(inst: &BlockingInstance) -> Result<String> {
    to_json(&BlockerFileOut {
        base: PointFileOut {
            points: exact_points(&inst.base),
        },
        k: inst.k,
        blockers: exact_points(&inst.blockers),
    })
}

/// Returns the base set, the blockers and `k`.
pub fn blockers_from_json(text: &str) -> Result<(PointSet, Vec<Point>, usize)> {
    let raw: BlockerFileIn = serde_json::from_str(text)?;
    Ok((
        PointSet::new(to_points(&raw.base.points))?,
        to_points(&raw.blockers),
        raw.k,
    ))
}

#[derive(Serialize)]
struct WitnessFileOut<'a> {
    kind: WitnessKind,
    k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<Exact>,
    points: Vec<[Exact; 2]>,
    roles: BTreeMap<&'static str, RoleOut<'a>>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum RoleOut<'a> {
    One(usize),
    Many(&'a [usize]),
}

#[derive(Deserialize)]
struct WitnessFileIn {
    kind: WitnessKind,
    k: usize,
    #[serde(default)]
    epsilon: Option<f64>,
    points: Vec<[f64; 2]>,
    roles: Roles,
}

/// Point set plus `{"roles": {"a": i, "b": j, "U": […], "R": […]}}`.
pub fn witness_to_json(w: &WitnessSpec) -> Result<String> {
    let mut roles = BTreeMap::new();
    let r = &w.roles;
    for (name, v) in [("a", r.a), ("b", r.b)] {
        if let Some(i) = v {
            roles.insert(name, RoleOut::One(i));
        }
    }
    for (name, v) in [
        ("U", &r.u),
        ("R", &r.r),
        ("A", &r.a_set),
        ("K", &r.k_set),
        ("B", &r.b_set),
    ] {
        if !v.is_empty() {
            roles.insert(name, RoleOut::Many(v));
        }
    }
    to_json(&WitnessFileOut {
        kind: w.kind,
        k: w.k,
        epsilon: w.epsilon.map(Exact),
        points: exact_points(w.points.points()),
        roles,
    })
}

pub fn witness_from_json(text: &str) -> Result<WitnessSpec> {
    let raw: WitnessFileIn = serde_json::from_str(text)?;
    Ok(WitnessSpec {
        kind: raw.kind,
        k: raw.k,
        epsilon: raw.epsilon,
        points: PointSet::new(to_points(&raw.points))?,
        roles: raw.roles,
    })
}
