//! JSON files: surfaces, coordinate points and laminations.
//!
//! Point and lamination files name their surface either by a bundled
//! example name or by a path, resolved against the referring file's
//! directory.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::coordinates::{LambdaBoundaryPoint, ShearDecorationPoint};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::lamination::LaminationDescription;
use crate::surface::{EdgeKind, SurfaceDescription, TriangulatedSurface, VertexKind};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

pub fn read_surface_file(path: &Path) -> Result<TriangulatedSurface> {
    let desc: SurfaceDescription = parse(path, &read(path)?)?;
    TriangulatedSurface::build(&desc)
}

/// Bundled example name, or a path relative to `base`.
pub fn load_surface(reference: &str, base: Option<&Path>) -> Result<TriangulatedSurface> {
    if fixtures::BUNDLED.contains(&reference) {
        return fixtures::bundled(reference);
    }
    let path = match base {
        Some(dir) => dir.join(reference),
        None => PathBuf::from(reference),
    };
    read_surface_file(&path)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    ShearDecoration,
    LambdaBoundary,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Values {
    pub edges: BTreeMap<String, f64>,
    pub vertices: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointFile {
    pub surface: String,
    pub chart: Chart,
    pub values: Values,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    Shear(ShearDecorationPoint),
    Lambda(LambdaBoundaryPoint),
}

impl Point {
    pub fn chart(&self) -> Chart {
        match self {
            Self::Shear(_) => Chart::ShearDecoration,
            Self::Lambda(_) => Chart::LambdaBoundary,
        }
    }
}

// Entries that are not coordinates (boundary-edge shears, spike lengths)
// may be omitted; when present they must be zero, which the point
// constructors check.
fn gather(
    surface: &TriangulatedSurface,
    values: &Values,
    edge_required: impl Fn(EdgeKind) -> bool,
    vertex_required: impl Fn(VertexKind) -> bool,
) -> Result<(Vec<f64>, Vec<f64>)> {
    for id in values.edges.keys() {
        surface.edge_index(id).ok_or_else(|| Error::UnknownId { kind: "edge", id: id.clone() })?;
    }
    for id in values.vertices.keys() {
        surface.vertex_index(id).ok_or_else(|| Error::UnknownId { kind: "vertex", id: id.clone() })?;
    }
    let missing = |kind: &str, id: &str| Error::Parse(format!("missing {kind} value for `{id}`"));
    let mut edges = Vec::with_capacity(surface.edges().len());
    for e in surface.edges() {
        match values.edges.get(&e.id) {
            Some(&v) => edges.push(v),
            None if edge_required(e.kind) => return Err(missing("edge", &e.id)),
            None => edges.push(0.0),
        }
    }
    let mut vertices = Vec::with_capacity(surface.vertices().len());
    for v in surface.vertices() {
        match values.vertices.get(&v.id) {
            Some(&x) => vertices.push(x),
            None if vertex_required(v.kind) => return Err(missing("vertex", &v.id)),
            None => vertices.push(0.0),
        }
    }
    Ok((edges, vertices))
}

impl PointFile {
    pub fn read(path: &Path) -> Result<Self> {
        parse(path, &read(path)?)
    }

    pub fn to_point(&self, surface: &TriangulatedSurface) -> Result<Point> {
        match self.chart {
            Chart::ShearDecoration => {
                let (shear, decoration) =
                    gather(surface, &self.values, |k| k == EdgeKind::Interior, |_| true)?;
                Ok(Point::Shear(ShearDecorationPoint::new(surface, shear, decoration)?))
            }
            Chart::LambdaBoundary => {
                let (lambda, l) = gather(surface, &self.values, |_| true, |k| k == VertexKind::Puncture)?;
                Ok(Point::Lambda(LambdaBoundaryPoint::new(surface, lambda, l)?))
            }
        }
    }

    /// Every edge and vertex is written, including the fixed zeros.
    pub fn from_point(surface_ref: &str, surface: &TriangulatedSurface, p: &Point) -> Self {
        let (e, v) = match p {
            Point::Shear(p) => (&p.shear, &p.decoration),
            Point::Lambda(q) => (&q.lambda, &q.boundary_length),
        };
        let values = Values {
            edges: surface.edges().iter().zip(e).map(|(x, &y)| (x.id.clone(), y)).collect(),
            vertices: surface.vertices().iter().zip(v).map(|(x, &y)| (x.id.clone(), y)).collect(),
        };
        Self { surface: surface_ref.to_string(), chart: p.chart(), values }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaminationFile {
    pub surface: String,
    #[serde(flatten)]
    pub lamination: LaminationDescription,
}

impl LaminationFile {
    pub fn read(path: &Path) -> Result<Self> {
        parse(path, &read(path)?)
    }
}

/// Load a point file together with the surface it names.
pub fn load_point(path: &Path) -> Result<(PointFile, TriangulatedSurface, Point)> {
    let file = PointFile::read(path)?;
    let surface = load_surface(&file.surface, path.parent())?;
    let point = file.to_point(&surface)?;
    Ok((file, surface, point))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_roundtrip_through_json() {
        let s = fixtures::three_punctured_sphere();
        let p = Point::Shear(ShearDecorationPoint::new(&s, vec![0.1, -0.2, 0.3], vec![1.0, 2.0, 3.0]).unwrap());
        let f = PointFile::from_point("three-punctured-sphere", &s, &p);
        let back: PointFile = serde_json::from_str(&to_json(&f)).unwrap();
        assert_eq!(back.to_point(&s).unwrap(), p);
    }

    #[test]
    fn missing_entries_are_errors() {
        let s = fixtures::three_punctured_sphere();
        let mut f = PointFile::from_point("three-punctured-sphere", &s, &Point::Shear(ShearDecorationPoint::zero(&s)));
        f.values.vertices.remove("v2");
        assert!(matches!(f.to_point(&s), Err(Error::Parse(_))));
        f.values.vertices.insert("v9".into(), 0.0);
        assert!(matches!(f.to_point(&s), Err(Error::UnknownId { .. })));
    }

    #[test]
    fn boundary_entries_may_be_omitted() {
        let s = fixtures::ideal_triangle();
        let f = PointFile {
            surface: "ideal-triangle".into(),
            chart: Chart::LambdaBoundary,
            values: Values {
                edges: s.edges().iter().map(|e| (e.id.clone(), 0.5)).collect(),
                vertices: BTreeMap::new(),
            },
        };
        let Point::Lambda(q) = f.to_point(&s).unwrap() else { panic!() };
        assert_eq!(q.boundary_length, vec![0.0; 3]);
    }
}
