//! Combinatorial reference surfaces and their triangulations.
//!
//! A triangulation is stored as a set of oriented triangles whose sides are
//! directed half-edges ("sides"). Side `3 * t + k` is the `k`-th side of
//! triangle `t`, running from corner `k` to corner `k + 1` counter-clockwise.
//! Interior edges carry two sides traversed in opposite directions, boundary
//! edges carry one.
//!
//! The counter-clockwise successor of an outgoing side `h` at its origin is
//! `twin(prev(h))`; iterating it enumerates the star of a vertex.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type SideId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Puncture,
    Spike,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Interior,
    Boundary,
}

/// Topological type `(g, p, c, s)` of a reference surface. The spike counts
/// are listed per boundary component, so `c` is their number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSignature {
    pub genus: u32,
    pub punctures: u32,
    #[serde(rename = "boundaries")]
    pub spikes_per_boundary: Vec<u32>,
}

impl SurfaceSignature {
    pub fn new(genus: u32, punctures: u32, spikes_per_boundary: Vec<u32>) -> Self {
        Self { genus, punctures, spikes_per_boundary }
    }

    pub fn boundary_components(&self) -> usize {
        self.spikes_per_boundary.len()
    }

    pub fn total_spikes(&self) -> u32 {
        self.spikes_per_boundary.iter().sum()
    }

    /// `4 - 4g - 2p - 2c - s`; admissible signatures make this negative.
    pub fn hyperbolicity(&self) -> i64 {
        4 - 4 * self.genus as i64
            - 2 * self.punctures as i64
            - 2 * self.boundary_components() as i64
            - self.total_spikes() as i64
    }

    /// Euler characteristic of the compact surface with the marked points
    /// filled in.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary_components() as i64
    }

    pub fn every_boundary_has_spike(&self) -> bool {
        self.spikes_per_boundary.iter().all(|&s| s >= 1)
    }

    pub fn check(&self) -> Result<()> {
        if !self.every_boundary_has_spike() {
            return Err(Error::InvalidSignature(
                "every boundary component needs at least one spike".into(),
            ));
        }
        if self.hyperbolicity() >= 0 {
            return Err(Error::InvalidSignature(format!(
                "4 - 4g - 2p - 2c - s = {} is not negative",
                self.hyperbolicity()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexDescription {
    pub id: String,
    pub kind: VertexKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeDescription {
    pub id: String,
    pub ends: [String; 2],
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleDescription {
    pub id: String,
    /// Edge ids in counter-clockwise order.
    pub sides: [String; 3],
    /// Optional corner vertices; `vertices[k]` is where side `k` starts.
    /// Needed only when the corners cannot be inferred from edge ends.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<[String; 3]>,
}

/// The surface description file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceDescription {
    pub signature: SurfaceSignature,
    pub vertices: Vec<VertexDescription>,
    pub edges: Vec<EdgeDescription>,
    pub triangles: Vec<TriangleDescription>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub id: String,
    pub kind: VertexKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub id: String,
    pub ends: [usize; 2],
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Triangle {
    pub id: String,
    pub sides: [usize; 3],
    pub corners: [usize; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct TriangulatedSurface {
    signature: SurfaceSignature,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    triangles: Vec<Triangle>,
    twin: Vec<Option<SideId>>,
    edge_sides: Vec<Vec<SideId>>,
    /// Punctures: full counter-clockwise cycle starting at the lowest side.
    /// Spikes: the open fan starting at the outgoing boundary side.
    stars: Vec<Vec<SideId>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check { name: name.to_string(), passed, detail });
    }
}

fn index_of(
    map: &HashMap<&str, usize>,
    kind: &'static str,
    id: &str,
) -> Result<usize> {
    map.get(id).copied().ok_or_else(|| Error::UnknownId { kind, id: id.to_string() })
}

fn other_end(ends: [usize; 2], v: usize) -> Option<usize> {
    if ends[0] == v {
        Some(ends[1])
    } else if ends[1] == v {
        Some(ends[0])
    } else {
        None
    }
}

fn infer_corners(edges: &[Edge], sides: [usize; 3]) -> Vec<[usize; 3]> {
    let mut found: Vec<[usize; 3]> = Vec::new();
    for &c0 in &edges[sides[0]].ends {
        let Some(c1) = other_end(edges[sides[0]].ends, c0) else { continue };
        let Some(c2) = other_end(edges[sides[1]].ends, c1) else { continue };
        if other_end(edges[sides[2]].ends, c2) == Some(c0) && !found.contains(&[c0, c1, c2]) {
            found.push([c0, c1, c2]);
        }
    }
    found
}

fn ends_match(ends: [usize; 2], a: usize, b: usize) -> bool {
    (ends[0] == a && ends[1] == b) || (ends[0] == b && ends[1] == a)
}

impl TriangulatedSurface {
    /// Assemble and validate a triangulation from its description.
    pub fn build(desc: &SurfaceDescription) -> Result<Self> {
        let surface = Self::assemble(desc)?;
        let report = surface.validate();
        if !report.passed() {
            let msg = report
                .failures()
                .iter()
                .map(|c| format!("{}: {}", c.name, c.detail))
                .collect::<Vec<_>>()
                .join("; ");
            return Err(Error::Validation(msg));
        }
        Ok(surface)
    }

    /// Assemble the combinatorial structure, failing only on structural
    /// defects (unknown ids, non-manifold edges, broken vertex links).
    /// Global checks are left to [`TriangulatedSurface::validate`].
    pub fn assemble(desc: &SurfaceDescription) -> Result<Self> {
        let mut vmap = HashMap::new();
        let mut vertices = Vec::with_capacity(desc.vertices.len());
        for v in &desc.vertices {
            if vmap.insert(v.id.as_str(), vertices.len()).is_some() {
                return Err(Error::DuplicateId { kind: "vertex", id: v.id.clone() });
            }
            vertices.push(Vertex { id: v.id.clone(), kind: v.kind });
        }
        let mut emap = HashMap::new();
        let mut edges = Vec::with_capacity(desc.edges.len());
        for e in &desc.edges {
            if emap.insert(e.id.as_str(), edges.len()).is_some() {
                return Err(Error::DuplicateId { kind: "edge", id: e.id.clone() });
            }
            let ends = [
                index_of(&vmap, "vertex", &e.ends[0])?,
                index_of(&vmap, "vertex", &e.ends[1])?,
            ];
            edges.push(Edge { id: e.id.clone(), ends, kind: e.kind });
        }
        for e in &edges {
            if e.kind == EdgeKind::Boundary
                && e.ends.iter().any(|&v| vertices[v].kind != VertexKind::Spike)
            {
                return Err(Error::StarInconsistency {
                    at: e.id.clone(),
                    reason: "boundary edge must join spike vertices".into(),
                });
            }
        }

        let mut tmap: HashMap<&str, usize> = HashMap::new();
        let mut triangles = Vec::with_capacity(desc.triangles.len());
        for t in &desc.triangles {
            if tmap.insert(t.id.as_str(), triangles.len()).is_some() {
                return Err(Error::DuplicateId { kind: "triangle", id: t.id.clone() });
            }
            let sides = [
                index_of(&emap, "edge", &t.sides[0])?,
                index_of(&emap, "edge", &t.sides[1])?,
                index_of(&emap, "edge", &t.sides[2])?,
            ];
            let corners = match &t.vertices {
                Some(vs) => {
                    let c = [
                        index_of(&vmap, "vertex", &vs[0])?,
                        index_of(&vmap, "vertex", &vs[1])?,
                        index_of(&vmap, "vertex", &vs[2])?,
                    ];
                    for k in 0..3 {
                        if !ends_match(edges[sides[k]].ends, c[k], c[(k + 1) % 3]) {
                            return Err(Error::BadTriangle {
                                triangle: t.id.clone(),
                                reason: format!(
                                    "side `{}` does not join `{}` and `{}`",
                                    edges[sides[k]].id,
                                    vertices[c[k]].id,
                                    vertices[c[(k + 1) % 3]].id
                                ),
                            });
                        }
                    }
                    c
                }
                None => {
                    let found = infer_corners(&edges, sides);
                    match found.len() {
                        0 => {
                            return Err(Error::BadTriangle {
                                triangle: t.id.clone(),
                                reason: "sides do not close up into a triangle".into(),
                            })
                        }
                        1 => found[0],
                        _ => {
                            return Err(Error::BadTriangle {
                                triangle: t.id.clone(),
                                reason: "corners are ambiguous; list `vertices` explicitly"
                                    .into(),
                            })
                        }
                    }
                }
            };
            triangles.push(Triangle { id: t.id.clone(), sides, corners });
        }

        let nsides = 3 * triangles.len();
        let mut edge_sides: Vec<Vec<SideId>> = vec![Vec::new(); edges.len()];
        for (t, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                edge_sides[tri.sides[k]].push(3 * t + k);
            }
        }
        let mut twin = vec![None; nsides];
        for (e, sides) in edge_sides.iter().enumerate() {
            let edge = &edges[e];
            if sides.len() > 2 {
                return Err(Error::NonManifoldEdge(edge.id.clone()));
            }
            match (edge.kind, sides.len()) {
                (EdgeKind::Boundary, 2) => {
                    return Err(Error::BoundaryEdgeInTwoTriangles(edge.id.clone()))
                }
                (EdgeKind::Interior, 1) => return Err(Error::OpenInteriorEdge(edge.id.clone())),
                (_, 0) => {
                    return Err(Error::StarInconsistency {
                        at: edge.id.clone(),
                        reason: "edge bounds no triangle".into(),
                    })
                }
                (EdgeKind::Interior, 2) => {
                    let (a, b) = (sides[0], sides[1]);
                    let origin = |s: SideId| triangles[s / 3].corners[s % 3];
                    let dest = |s: SideId| triangles[s / 3].corners[(s % 3 + 1) % 3];
                    if origin(a) != dest(b) || dest(a) != origin(b) {
                        return Err(Error::StarInconsistency {
                            at: edge.id.clone(),
                            reason: "the two sides do not traverse the edge in opposite directions"
                                .into(),
                        });
                    }
                    twin[a] = Some(b);
                    twin[b] = Some(a);
                }
                _ => {}
            }
        }

        let mut surface = Self {
            signature: desc.signature.clone(),
            vertices,
            edges,
            triangles,
            twin,
            edge_sides,
            stars: Vec::new(),
        };
        surface.stars = surface.compute_stars()?;
        Ok(surface)
    }

    fn compute_stars(&self) -> Result<Vec<Vec<SideId>>> {
        let mut outgoing: Vec<Vec<SideId>> = vec![Vec::new(); self.vertices.len()];
        for s in 0..self.num_sides() {
            outgoing[self.origin(s)].push(s);
        }
        let mut stars = Vec::with_capacity(self.vertices.len());
        for (v, out) in outgoing.iter().enumerate() {
            let vid = &self.vertices[v].id;
            if out.is_empty() {
                return Err(Error::IsolatedVertex(vid.clone()));
            }
            let star = match self.vertices[v].kind {
                VertexKind::Puncture => {
                    let start = out[0];
                    let mut star = vec![start];
                    let mut h = start;
                    loop {
                        h = self.ccw_next(h).ok_or_else(|| Error::StarInconsistency {
                            at: vid.clone(),
                            reason: "puncture touches the boundary".into(),
                        })?;
                        if h == start {
                            break;
                        }
                        if star.len() > out.len() {
                            return Err(Error::StarInconsistency {
                                at: vid.clone(),
                                reason: "star does not close up".into(),
                            });
                        }
                        star.push(h);
                    }
                    star
                }
                VertexKind::Spike => {
                    let starts: Vec<_> =
                        out.iter().copied().filter(|&s| self.twin[s].is_none()).collect();
                    if starts.len() != 1 {
                        return Err(Error::StarInconsistency {
                            at: vid.clone(),
                            reason: format!(
                                "spike needs exactly one outgoing boundary side, found {}",
                                starts.len()
                            ),
                        });
                    }
                    let mut star = vec![starts[0]];
                    let mut h = starts[0];
                    while let Some(n) = self.ccw_next(h) {
                        if star.len() > out.len() {
                            return Err(Error::StarInconsistency {
                                at: vid.clone(),
                                reason: "fan does not terminate".into(),
                            });
                        }
                        star.push(n);
                        h = n;
                    }
                    star
                }
            };
            if star.len() != out.len() {
                return Err(Error::StarInconsistency {
                    at: vid.clone(),
                    reason: format!(
                        "link is disconnected: star reaches {} of {} edge-ends",
                        star.len(),
                        out.len()
                    ),
                });
            }
            stars.push(star);
        }
        Ok(stars)
    }

    /// Run the global consistency checks.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport { checks: Vec::new() };
        let sig = &self.signature;

        report.push(
            "spikes_per_boundary",
            sig.every_boundary_has_spike(),
            format!("spike counts {:?}", sig.spikes_per_boundary),
        );
        report.push(
            "hyperbolicity",
            sig.hyperbolicity() < 0,
            format!("4 - 4g - 2p - 2c - s = {}", sig.hyperbolicity()),
        );

        let (v, e, f) = (
            self.vertices.len() as i64,
            self.edges.len() as i64,
            self.triangles.len() as i64,
        );
        let chi = sig.euler_characteristic();
        report.push(
            "euler_characteristic",
            v - e + f == chi,
            format!("|V| - |E| + |F| = {} - {} + {} = {}, expected {}", v, e, f, v - e + f, chi),
        );

        let p = self.punctures().count() as u32;
        let s = self.spikes().count() as u32;
        report.push(
            "vertex_counts",
            p == sig.punctures && s == sig.total_spikes(),
            format!("{} punctures and {} spikes, signature says {} and {}", p, s, sig.punctures, sig.total_spikes()),
        );

        let mut found = self.boundary_cycles();
        found.sort_unstable();
        let mut expected = sig.spikes_per_boundary.clone();
        expected.sort_unstable();
        report.push(
            "boundary_components",
            found == expected,
            format!("boundary cycles with spike counts {:?}, expected {:?}", found, expected),
        );

        let mut seen = vec![0usize; self.num_sides()];
        let mut closed = true;
        for (vtx, star) in self.stars.iter().enumerate() {
            for &h in star {
                seen[h] += 1;
            }
            if self.vertices[vtx].kind == VertexKind::Puncture {
                let mut h = star[0];
                for _ in 0..star.len() {
                    h = match self.ccw_next(h) {
                        Some(n) => n,
                        None => {
                            closed = false;
                            break;
                        }
                    };
                }
                closed &= h == star[0];
            }
        }
        let covered = seen.iter().all(|&c| c == 1);
        report.push(
            "star_face_consistency",
            covered && closed,
            if covered && closed {
                "every edge-end lies in exactly one star; puncture stars close up".into()
            } else {
                "stars do not partition the edge-ends".into()
            },
        );
        report
    }

    fn boundary_cycles(&self) -> Vec<u32> {
        let boundary: Vec<SideId> =
            (0..self.num_sides()).filter(|&s| self.twin[s].is_none()).collect();
        let mut visited = vec![false; self.num_sides()];
        let mut cycles = Vec::new();
        for &b in &boundary {
            if visited[b] {
                continue;
            }
            let mut len = 0;
            let mut cur = b;
            while !visited[cur] {
                visited[cur] = true;
                len += 1;
                let w = self.dest(cur);
                match self.stars[w].first() {
                    Some(&n) if self.twin[n].is_none() => cur = n,
                    _ => break,
                }
            }
            cycles.push(len);
        }
        cycles
    }

    pub fn signature(&self) -> &SurfaceSignature {
        &self.signature
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn num_sides(&self) -> usize {
        3 * self.triangles.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn triangle_index(&self, id: &str) -> Option<usize> {
        self.triangles.iter().position(|t| t.id == id)
    }

    pub fn punctures(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].kind == VertexKind::Puncture)
    }

    pub fn spikes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].kind == VertexKind::Spike)
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(|&e| self.edges[e].kind == EdgeKind::Interior)
    }

    pub fn has_boundary(&self) -> bool {
        self.edges.iter().any(|e| e.kind == EdgeKind::Boundary)
    }

    pub fn triangle_of(&self, s: SideId) -> usize {
        s / 3
    }

    pub fn edge_of(&self, s: SideId) -> usize {
        self.triangles[s / 3].sides[s % 3]
    }

    pub fn origin(&self, s: SideId) -> usize {
        self.triangles[s / 3].corners[s % 3]
    }

    pub fn dest(&self, s: SideId) -> usize {
        self.triangles[s / 3].corners[(s % 3 + 1) % 3]
    }

    pub fn next(&self, s: SideId) -> SideId {
        3 * (s / 3) + (s % 3 + 1) % 3
    }

    pub fn prev(&self, s: SideId) -> SideId {
        3 * (s / 3) + (s % 3 + 2) % 3
    }

    pub fn twin(&self, s: SideId) -> Option<SideId> {
        self.twin[s]
    }

    pub fn sides_of_edge(&self, e: usize) -> &[SideId] {
        &self.edge_sides[e]
    }

    /// Counter-clockwise successor of the outgoing side `h` around its origin.
    pub fn ccw_next(&self, h: SideId) -> Option<SideId> {
        self.twin[self.prev(h)]
    }

    /// Outgoing sides at `v` in counter-clockwise order (see [`Self::stars`]).
    pub fn star_sides(&self, v: usize) -> &[SideId] {
        &self.stars[v]
    }

    /// Number of edge-ends at `v`; loops count twice.
    pub fn valence(&self, v: usize) -> usize {
        self.stars[v].len()
    }

    /// Star of `v` as a cyclic sequence of edge-ends with their shear-sign
    /// conventions. Spikes are only defined through the doubled surface.
    pub fn vertex_star(&self, v: usize, use_double: bool) -> Result<Vec<StarEntry>> {
        if v >= self.vertices.len() {
            return Err(Error::UnknownId { kind: "vertex", id: v.to_string() });
        }
        if !use_double {
            if self.vertices[v].kind == VertexKind::Spike {
                return Err(Error::SpikeNeedsDouble(self.vertices[v].id.clone()));
            }
            return Ok(self.stars[v]
                .iter()
                .map(|&s| StarEntry { edge: self.edge_of(s), sign: ShearSign::Original, side: s })
                .collect());
        }
        let double = self.double()?;
        Ok(double.star(v))
    }

    /// Glue the surface to its mirror image along the boundary edges.
    pub fn double(&self) -> Result<DoubledSurface> {
        DoubledSurface::new(self)
    }

    /// Export back to the description format, with explicit corners.
    pub fn to_description(&self) -> SurfaceDescription {
        SurfaceDescription {
            signature: self.signature.clone(),
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexDescription { id: v.id.clone(), kind: v.kind })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDescription {
                    id: e.id.clone(),
                    ends: [self.vertices[e.ends[0]].id.clone(), self.vertices[e.ends[1]].id.clone()],
                    kind: e.kind,
                })
                .collect(),
            triangles: self
                .triangles
                .iter()
                .map(|t| TriangleDescription {
                    id: t.id.clone(),
                    sides: t.sides.map(|e| self.edges[e].id.clone()),
                    vertices: Some(t.corners.map(|v| self.vertices[v].id.clone())),
                })
                .collect(),
        }
    }
}

/// How the shear of an edge of the doubled surface relates to the shear of
/// the edge of the original surface it comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ShearSign {
    /// Original interior edge: `x_e`.
    Original,
    /// Mirror copy `e'` of an interior edge: `-x_e`.
    Mirrored,
    /// Boundary edge of the original surface: `0`.
    Boundary,
}

impl ShearSign {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            ShearSign::Original => x,
            ShearSign::Mirrored => -x,
            ShearSign::Boundary => 0.0,
        }
    }
}

/// One entry of a vertex star: the edge of the original surface, the sign
/// rule for its shear, and the side (in the complex where the star lives)
/// leaving the vertex along it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StarEntry {
    pub edge: usize,
    pub sign: ShearSign,
    pub side: SideId,
}

/// The double `S_D` of a surface with boundary.
///
/// Indices of the original vertices, edges and triangles are preserved; the
/// mirror copies follow them.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubledSurface {
    surface: TriangulatedSurface,
    mirror: Vec<usize>,
    edge_origin: Vec<(usize, ShearSign)>,
    vertex_origin: Vec<usize>,
    original_edges: usize,
    original_triangles: usize,
}

impl DoubledSurface {
    pub fn new(s: &TriangulatedSurface) -> Result<Self> {
        if !s.has_boundary() {
            return Err(Error::NoBoundaryToDouble);
        }
        let prime = |id: &str| format!("{id}'");

        let mut vertex_origin: Vec<usize> = (0..s.vertices.len()).collect();
        let mut vertex_copy = vec![0usize; s.vertices.len()];
        let mut vertices: Vec<VertexDescription> = s
            .vertices
            .iter()
            .map(|v| VertexDescription { id: v.id.clone(), kind: VertexKind::Puncture })
            .collect();
        for (v, vert) in s.vertices.iter().enumerate() {
            vertex_copy[v] = match vert.kind {
                VertexKind::Spike => v,
                VertexKind::Puncture => {
                    vertices.push(VertexDescription {
                        id: prime(&vert.id),
                        kind: VertexKind::Puncture,
                    });
                    vertex_origin.push(v);
                    vertices.len() - 1
                }
            };
        }

        let vid = |v: usize| vertices[v].id.clone();
        let mut edges: Vec<EdgeDescription> = s
            .edges
            .iter()
            .map(|e| EdgeDescription {
                id: e.id.clone(),
                ends: [vid(e.ends[0]), vid(e.ends[1])],
                kind: EdgeKind::Interior,
            })
            .collect();
        let mut edge_origin: Vec<(usize, ShearSign)> = s
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                (i, if e.kind == EdgeKind::Boundary { ShearSign::Boundary } else { ShearSign::Original })
            })
            .collect();
        let mut edge_copy: Vec<usize> = (0..s.edges.len()).collect();
        let mut mirror: Vec<usize> = (0..s.edges.len()).collect();
        for (i, e) in s.edges.iter().enumerate() {
            if e.kind == EdgeKind::Interior {
                edges.push(EdgeDescription {
                    id: prime(&e.id),
                    ends: [vid(vertex_copy[e.ends[0]]), vid(vertex_copy[e.ends[1]])],
                    kind: EdgeKind::Interior,
                });
                let c = edges.len() - 1;
                edge_copy[i] = c;
                mirror[i] = c;
                mirror.push(i);
                edge_origin.push((i, ShearSign::Mirrored));
            }
        }

        let eid = |e: usize| edges[e].id.clone();
        let mut triangles: Vec<TriangleDescription> = s
            .triangles
            .iter()
            .map(|t| TriangleDescription {
                id: t.id.clone(),
                sides: t.sides.map(eid),
                vertices: Some(t.corners.map(vid)),
            })
            .collect();
        for t in &s.triangles {
            let [s0, s1, s2] = t.sides.map(|e| edge_copy[e]);
            let [c0, c1, c2] = t.corners.map(|v| vertex_copy[v]);
            triangles.push(TriangleDescription {
                id: prime(&t.id),
                sides: [eid(s2), eid(s1), eid(s0)],
                vertices: Some([vid(c0), vid(c2), vid(c1)]),
            });
        }

        let sig = &s.signature;
        let signature = SurfaceSignature {
            genus: 2 * sig.genus + sig.boundary_components() as u32 - 1,
            punctures: 2 * sig.punctures + sig.total_spikes(),
            spikes_per_boundary: Vec::new(),
        };
        let desc = SurfaceDescription { signature, vertices, edges, triangles };
        let surface = TriangulatedSurface::assemble(&desc)?;
        Ok(Self {
            surface,
            mirror,
            edge_origin,
            vertex_origin,
            original_edges: s.edges.len(),
            original_triangles: s.triangles.len(),
        })
    }

    pub fn surface(&self) -> &TriangulatedSurface {
        &self.surface
    }

    /// Edge involution `e <-> e'`; boundary edges of the original are fixed.
    pub fn mirror(&self, e: usize) -> usize {
        self.mirror[e]
    }

    /// Original edge and sign rule behind an edge of the double.
    pub fn edge_origin(&self, e: usize) -> (usize, ShearSign) {
        self.edge_origin[e]
    }

    pub fn vertex_origin(&self, v: usize) -> usize {
        self.vertex_origin[v]
    }

    pub fn original_edge_count(&self) -> usize {
        self.original_edges
    }

    pub fn original_triangle_count(&self) -> usize {
        self.original_triangles
    }

    /// Whether a side of the double belongs to a mirrored triangle.
    pub fn is_mirror_side(&self, s: SideId) -> bool {
        s / 3 >= self.original_triangles
    }

    /// Side of the double that mirrors `s`.
    pub fn mirror_side(&self, s: SideId) -> SideId {
        let t = s / 3;
        let k = s % 3;
        let mt = if t < self.original_triangles {
            t + self.original_triangles
        } else {
            t - self.original_triangles
        };
        // side k of a triangle becomes side (2 - k) of its mirror
        3 * mt + (2 - k)
    }

    /// Extend shears from the original surface: `x_e`, `-x_e` on mirror
    /// copies and `0` on the original boundary.
    pub fn extend_shears(&self, shear: &[f64]) -> Vec<f64> {
        self.edge_origin.iter().map(|&(e, sign)| sign.apply(shear[e])).collect()
    }

    /// Star of an original vertex in the double.
    pub fn star(&self, v: usize) -> Vec<StarEntry> {
        self.surface
            .star_sides(v)
            .iter()
            .map(|&s| {
                let (edge, sign) = self.edge_origin[self.surface.edge_of(s)];
                StarEntry { edge, sign, side: s }
            })
            .collect()
    }
}
