//! Bundled example surfaces and the special triangulations used by the
//! inverse map.

use crate::error::{Error, Result};
use crate::surface::{
    EdgeDescription, EdgeKind, SurfaceDescription, SurfaceSignature, TriangleDescription,
    TriangulatedSurface, VertexDescription, VertexKind,
};

pub const IDEAL_TRIANGLE: &str = "ideal-triangle";
pub const ONCE_PUNCTURED_MONOGON: &str = "once-punctured-monogon";
pub const THREE_PUNCTURED_SPHERE: &str = "three-punctured-sphere";
pub const ONCE_PUNCTURED_BIGON: &str = "once-punctured-bigon";

/// Names accepted by [`bundled`].
pub const BUNDLED: [&str; 4] =
    [IDEAL_TRIANGLE, ONCE_PUNCTURED_MONOGON, THREE_PUNCTURED_SPHERE, ONCE_PUNCTURED_BIGON];

pub fn bundled(name: &str) -> Result<TriangulatedSurface> {
    match name {
        IDEAL_TRIANGLE => Ok(ideal_triangle()),
        ONCE_PUNCTURED_MONOGON => Ok(once_punctured_monogon()),
        THREE_PUNCTURED_SPHERE => Ok(three_punctured_sphere()),
        ONCE_PUNCTURED_BIGON => Ok(once_punctured_bigon()),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

fn vertex(id: &str, kind: VertexKind) -> VertexDescription {
    VertexDescription { id: id.into(), kind }
}

fn edge(id: &str, a: &str, b: &str, kind: EdgeKind) -> EdgeDescription {
    EdgeDescription { id: id.into(), ends: [a.into(), b.into()], kind }
}

fn triangle(id: &str, sides: [&str; 3], corners: Option<[&str; 3]>) -> TriangleDescription {
    TriangleDescription {
        id: id.into(),
        sides: sides.map(String::from),
        vertices: corners.map(|c| c.map(String::from)),
    }
}

pub fn ideal_triangle_description() -> SurfaceDescription {
    use EdgeKind::Boundary;
    SurfaceDescription {
        signature: SurfaceSignature::new(0, 0, vec![3]),
        vertices: ["p1", "p2", "p3"].iter().map(|v| vertex(v, VertexKind::Spike)).collect(),
        edges: vec![
            edge("b12", "p1", "p2", Boundary),
            edge("b23", "p2", "p3", Boundary),
            edge("b31", "p3", "p1", Boundary),
        ],
        triangles: vec![triangle("t", ["b12", "b23", "b31"], None)],
    }
}

pub fn ideal_triangle() -> TriangulatedSurface {
    TriangulatedSurface::build(&ideal_triangle_description()).expect("bundled surface is valid")
}

/// Vertices `v1, v2, v3`, edges `e12, e13, e23`, triangles `t1 = (v1, v2, v3)`
/// and `t2 = (v1, v3, v2)`. Every vertex is 2-valent.
pub fn three_punctured_sphere_description() -> SurfaceDescription {
    use EdgeKind::Interior;
    SurfaceDescription {
        signature: SurfaceSignature::new(0, 3, vec![]),
        vertices: ["v1", "v2", "v3"].iter().map(|v| vertex(v, VertexKind::Puncture)).collect(),
        edges: vec![
            edge("e12", "v1", "v2", Interior),
            edge("e13", "v1", "v3", Interior),
            edge("e23", "v2", "v3", Interior),
        ],
        triangles: vec![
            triangle("t1", ["e12", "e23", "e13"], None),
            triangle("t2", ["e13", "e23", "e12"], None),
        ],
    }
}

pub fn three_punctured_sphere() -> TriangulatedSurface {
    TriangulatedSurface::build(&three_punctured_sphere_description())
        .expect("bundled surface is valid")
}

/// Puncture `v1`, spikes `v2, v3`, interior edges `e12, e13` and boundary
/// edges `e23` (in `t1`, running `v2 -> v3`) and `e32` (in `t2`, running
/// `v3 -> v2`).
pub fn once_punctured_bigon_description() -> SurfaceDescription {
    use EdgeKind::{Boundary, Interior};
    SurfaceDescription {
        signature: SurfaceSignature::new(0, 1, vec![2]),
        vertices: vec![
            vertex("v1", VertexKind::Puncture),
            vertex("v2", VertexKind::Spike),
            vertex("v3", VertexKind::Spike),
        ],
        edges: vec![
            edge("e12", "v1", "v2", Interior),
            edge("e13", "v1", "v3", Interior),
            edge("e23", "v2", "v3", Boundary),
            edge("e32", "v3", "v2", Boundary),
        ],
        triangles: vec![
            triangle("t1", ["e12", "e23", "e13"], Some(["v1", "v2", "v3"])),
            triangle("t2", ["e13", "e32", "e12"], Some(["v1", "v3", "v2"])),
        ],
    }
}

pub fn once_punctured_bigon() -> TriangulatedSurface {
    TriangulatedSurface::build(&once_punctured_bigon_description())
        .expect("bundled surface is valid")
}

pub fn once_punctured_monogon() -> TriangulatedSurface {
    special_triangulation(&SurfaceSignature::new(0, 1, vec![1]))
        .expect("bundled surface is valid")
}

struct PolygonSide {
    edge: usize,
    forward: bool,
}

/// Triangulation in which every puncture is 1-valent.
///
/// The surface is cut open into a polygon with word
/// `a1 b1 a1^-1 b1^-1 ... c2 B2 c2^-1 ... l_v ... D`, where `a_i, b_i` are
/// handle loops, `c_j` joins the base spike to boundary component `j` (whose
/// boundary edges are `B_j`), `l_v` is a loop enclosing the puncture `v`
/// through a self-folded triangle `(l_v, e_v, e_v)`, and `D` lists the
/// boundary edges of the first component. The base spike is the first spike
/// of the first boundary component and the polygon is fan-triangulated from
/// its first corner.
pub fn special_triangulation(signature: &SurfaceSignature) -> Result<TriangulatedSurface> {
    signature.check()?;
    if signature.boundary_components() == 0 {
        return Err(Error::NoSpecialTriangulation(
            "the surface has no spike vertex to attach the punctures to".into(),
        ));
    }
    let build = SpecialBuilder::new(signature);
    TriangulatedSurface::build(&build.finish())
}

struct SpecialBuilder {
    signature: SurfaceSignature,
    vertices: Vec<VertexDescription>,
    edges: Vec<EdgeDescription>,
    triangles: Vec<TriangleDescription>,
    polygon: Vec<PolygonSide>,
}

impl SpecialBuilder {
    fn new(signature: &SurfaceSignature) -> Self {
        let mut b = Self {
            signature: signature.clone(),
            vertices: Vec::new(),
            edges: Vec::new(),
            triangles: Vec::new(),
            polygon: Vec::new(),
        };
        let spikes = &signature.spikes_per_boundary;
        for (j, &s) in spikes.iter().enumerate() {
            for k in 0..s {
                b.vertices.push(vertex(&format!("q{}_{}", j + 1, k), VertexKind::Spike));
            }
        }
        let base = "q1_0".to_string();

        for i in 1..=signature.genus {
            let a = b.add_edge(&format!("a{i}"), &base, &base, EdgeKind::Interior);
            let bb = b.add_edge(&format!("b{i}"), &base, &base, EdgeKind::Interior);
            b.side(a, true);
            b.side(bb, true);
            b.side(a, false);
            b.side(bb, false);
        }
        for (j, &s) in spikes.iter().enumerate().skip(1) {
            let j = j + 1;
            let first = format!("q{j}_0");
            let c = b.add_edge(&format!("c{j}"), &base, &first, EdgeKind::Interior);
            b.side(c, true);
            for k in 0..s {
                let from = format!("q{j}_{k}");
                let to = format!("q{j}_{}", (k + 1) % s);
                let e = b.add_edge(&format!("B{j}_{k}"), &from, &to, EdgeKind::Boundary);
                b.side(e, true);
            }
            b.side(c, false);
        }
        let mut folded = Vec::new();
        for v in 1..=signature.punctures {
            let id = format!("v{v}");
            b.vertices.push(vertex(&id, VertexKind::Puncture));
            let l = b.add_edge(&format!("l{v}"), &base, &base, EdgeKind::Interior);
            let e = b.add_edge(&format!("e{v}"), &base, &id, EdgeKind::Interior);
            b.side(l, true);
            folded.push((v, l, e));
        }
        let s1 = spikes[0];
        let mut outer = Vec::new();
        for k in 0..s1 {
            let from = format!("q1_{k}");
            let to = format!("q1_{}", (k + 1) % s1);
            outer.push(b.add_edge(&format!("D{k}"), &from, &to, EdgeKind::Boundary));
        }
        for &d in &outer {
            b.side(d, true);
        }

        if b.polygon.len() == 2 {
            // Only (0, 1, [1]): the outer boundary edge itself encloses the
            // puncture, so the loop is dropped and the self-folded triangle
            // sits directly on the boundary.
            let (v, l, e) = folded[0];
            b.edges.remove(l);
            let e = e - 1;
            let d = outer[0] - 1;
            let ids = [b.edges[d].id.clone(), b.edges[e].id.clone(), b.edges[e].id.clone()];
            let vid = format!("v{v}");
            b.triangles.push(TriangleDescription {
                id: format!("f{v}"),
                sides: ids,
                vertices: Some([base.clone(), base.clone(), vid]),
            });
            b.polygon.clear();
            return b;
        }

        for (v, l, e) in folded {
            let vid = format!("v{v}");
            let (lid, eid) = (b.edges[l].id.clone(), b.edges[e].id.clone());
            b.triangles.push(TriangleDescription {
                id: format!("f{v}"),
                sides: [lid, eid.clone(), eid],
                vertices: Some([base.clone(), base.clone(), vid]),
            });
        }
        b.fan();
        b
    }

    fn add_edge(&mut self, id: &str, a: &str, b: &str, kind: EdgeKind) -> usize {
        self.edges.push(edge(id, a, b, kind));
        self.edges.len() - 1
    }

    fn side(&mut self, edge: usize, forward: bool) {
        self.polygon.push(PolygonSide { edge, forward });
    }

    fn origin(&self, k: usize) -> String {
        let s = &self.polygon[k];
        self.edges[s.edge].ends[if s.forward { 0 } else { 1 }].clone()
    }

    fn fan(&mut self) {
        let n = self.polygon.len();
        let corners: Vec<String> = (0..n).map(|k| self.origin(k)).collect();
        let mut diagonal = vec![String::new(); n];
        for (k, slot) in diagonal.iter_mut().enumerate().take(n - 1).skip(2) {
            let id = format!("d{k}");
            self.edges.push(edge(&id, &corners[0], &corners[k], EdgeKind::Interior));
            *slot = id;
        }
        for i in 1..n - 1 {
            let first = if i == 1 {
                self.edges[self.polygon[0].edge].id.clone()
            } else {
                diagonal[i].clone()
            };
            let middle = self.edges[self.polygon[i].edge].id.clone();
            let last = if i + 1 == n - 1 {
                self.edges[self.polygon[n - 1].edge].id.clone()
            } else {
                diagonal[i + 1].clone()
            };
            self.triangles.push(TriangleDescription {
                id: format!("t{i}"),
                sides: [first, middle, last],
                vertices: Some([corners[0].clone(), corners[i].clone(), corners[i + 1].clone()]),
            });
        }
    }

    fn finish(self) -> SurfaceDescription {
        SurfaceDescription {
            signature: self.signature,
            vertices: self.vertices,
            edges: self.edges,
            triangles: self.triangles,
        }
    }
}
