//! Measured laminations given by crossing sequences, the curve taxonomy,
//! and the lamination coordinate maps.
//!
//! A curve is stored as the sequence of triangle sides it leaves through.
//! Sign and crossing computations run on the doubled surface when the
//! surface has boundary, so spike ends spiral like puncture ends.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coordinates::{max_abs_diff, Coordinates, LambdaBoundaryPoint, ShearDecorationPoint};
use crate::error::{Error, Result};
use crate::surface::{DoubledSurface, EdgeKind, SideId, TriangulatedSurface, VertexKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveShape {
    Closed,
    Arc,
}

/// End of an arc as written in a lamination file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveEnd {
    /// Interior point of a boundary edge.
    Boundary(String),
    Vertex(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveDescription {
    pub shape: CurveShape,
    pub crossings: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ends: Vec<CurveEnd>,
    /// Triangles visited, to disambiguate crossing sequences. For a closed
    /// curve entry `i` is the triangle entered after crossing `i`; for an
    /// arc the first entry is the starting triangle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangles: Option<Vec<String>>,
    pub weight: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    A,
    X,
    AX,
    #[serde(rename = "X_D")]
    XD,
    #[serde(rename = "AX_D")]
    AXD,
}

impl Flavor {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Self::A),
            "X" | "x" => Ok(Self::X),
            "AX" | "ax" => Ok(Self::AX),
            "X_D" | "x_d" | "XD" => Ok(Self::XD),
            "AX_D" | "ax_d" | "AXD" => Ok(Self::AXD),
            other => Err(Error::Parse(format!("unknown lamination flavor `{other}`"))),
        }
    }

    fn admits(self, kind: CurveKind) -> bool {
        use CurveKind::*;
        match (self, kind) {
            (_, Contractible | General) => true,
            (Self::A, A { .. }) => true,
            (Self::A, _) => false,
            (Self::X, X) => true,
            (Self::X, _) => false,
            (Self::AX, XD) => false,
            (Self::AX, _) => true,
            (Self::XD, A { .. }) => false,
            (Self::XD, _) => true,
            (Self::AXD, _) => true,
        }
    }

    /// Whether boundary edges get signed weights through the double.
    pub fn includes_boundary(self) -> bool {
        matches!(self, Self::XD | Self::AXD)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaminationDescription {
    pub flavor: Flavor,
    #[serde(default)]
    pub orientation: BTreeMap<String, i8>,
    pub curves: Vec<CurveDescription>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum End {
    /// The boundary side the arc ends on.
    Boundary(SideId),
    /// Corner `corner` of `triangle`.
    Corner { triangle: usize, corner: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveKind {
    Contractible,
    /// Peripheral around `vertex`: a loop around a puncture, or an arc cutting
    /// off a spike.
    A { vertex: usize },
    X,
    #[serde(rename = "x_d")]
    XD,
    General,
}

/// A curve in minimal position, as the sides of the surface it leaves through.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CombinatorialCurve {
    pub shape: CurveShape,
    pub sides: Vec<SideId>,
    /// Arc ends; `None` for closed curves.
    pub start: Option<End>,
    pub end: Option<End>,
}

fn corner_vertex(s: &TriangulatedSurface, triangle: usize, corner: usize) -> usize {
    s.origin(3 * triangle + corner)
}

/// Side opposite corner `k` of the triangle of `3t + k`.
fn opposite_corner(side: SideId) -> usize {
    (side % 3 + 2) % 3
}

fn twin_of(s: &TriangulatedSurface, side: SideId) -> Result<SideId> {
    s.twin(side).ok_or_else(|| Error::NotTaut(format!("side {side} has no neighbor")))
}

impl CombinatorialCurve {
    pub fn closed(sides: Vec<SideId>) -> Self {
        Self { shape: CurveShape::Closed, sides, start: None, end: None }
    }

    pub fn arc(start: End, sides: Vec<SideId>, end: End) -> Self {
        Self { shape: CurveShape::Arc, sides, start: Some(start), end: Some(end) }
    }

    /// Loop around a puncture, or the arc cutting off a spike.
    pub fn around_vertex(s: &TriangulatedSurface, v: usize) -> Result<Self> {
        let star = s.star_sides(v);
        if star.is_empty() {
            return Err(Error::IsolatedVertex(s.vertices()[v].id.clone()));
        }
        let sides: Vec<SideId> = star.iter().map(|&h| s.prev(h)).collect();
        match s.vertices()[v].kind {
            VertexKind::Puncture => Ok(Self::closed(sides)),
            VertexKind::Spike => {
                let (&last, crossed) = sides.split_last().expect("nonempty star");
                Ok(Self::arc(End::Boundary(star[0]), crossed.to_vec(), End::Boundary(last)))
            }
        }
    }

    fn triangle_of_end(&self, s: &TriangulatedSurface, e: End) -> usize {
        match e {
            End::Boundary(side) => s.triangle_of(side),
            End::Corner { triangle, .. } => triangle,
        }
    }

    /// Checks that consecutive sides are joined through a triangle without
    /// backtracking and that the ends sit where the crossings say.
    pub fn check(&self, s: &TriangulatedSurface) -> Result<()> {
        let n = self.sides.len();
        let joined = |a: SideId, b: SideId| -> Result<()> {
            let t = twin_of(s, a)?;
            if s.triangle_of(t) != s.triangle_of(b) {
                return Err(Error::NotTaut(format!("sides {a} and {b} do not share a triangle")));
            }
            if t == b {
                return Err(Error::NotTaut(format!("curve backtracks across edge `{}`", s.edges()[s.edge_of(b)].id)));
            }
            Ok(())
        };
        for w in self.sides.windows(2) {
            joined(w[0], w[1])?;
        }
        match self.shape {
            CurveShape::Closed => {
                if n > 0 {
                    joined(self.sides[n - 1], self.sides[0])?;
                }
                self.check_turns(s)?;
            }
            CurveShape::Arc => {
                let (start, end) = (self.start.expect("arc end"), self.end.expect("arc end"));
                if n == 0 {
                    if self.triangle_of_end(s, start) != self.triangle_of_end(s, end) {
                        return Err(Error::NotTaut("arc without crossings spans two triangles".into()));
                    }
                    return Ok(());
                }
                self.check_end(s, start, self.sides[0])?;
                self.check_end(s, end, twin_of(s, self.sides[n - 1])?)?;
                self.check_turns(s)?;
            }
        }
        Ok(())
    }

    /// A full turn around a puncture in the middle of a curve can be undone,
    /// so the crossings would not be minimal.
    fn check_turns(&self, s: &TriangulatedSurface) -> Result<()> {
        let n = self.sides.len();
        let closed = self.shape == CurveShape::Closed;
        let corner = |i: usize| -> Option<usize> {
            let entry = s.twin(self.sides[(i + n - 1) % n])?;
            let exit = self.sides[i];
            if exit == s.next(entry) {
                Some(s.dest(entry))
            } else if exit == s.prev(entry) {
                Some(s.origin(entry))
            } else {
                None
            }
        };
        let segments: Vec<Option<usize>> = if closed { (0..n).map(corner).collect() } else { (1..n).map(corner).collect() };
        let m = segments.len();
        if m == 0 {
            return Ok(());
        }
        if closed && segments.iter().all(|&c| c.is_some() && c == segments[0]) {
            // the peripheral curve itself, or a multiple of it
            return match segments[0] {
                Some(v) if m > s.valence(v) => Err(Error::NotTaut("curve winds around a vertex more than once".into())),
                _ => Ok(()),
            };
        }
        let len = if closed { 2 * m } else { m };
        let mut run = 0;
        for i in 0..len {
            let c = segments[i % m];
            let same = i > 0 && c.is_some() && c == segments[(i - 1) % m];
            run = if c.is_none() { 0 } else if same { run + 1 } else { 1 };
            if let Some(v) = c {
                if s.vertices()[v].kind == VertexKind::Puncture && run >= s.valence(v) {
                    return Err(Error::NotTaut(format!(
                        "curve turns fully around `{}`",
                        s.vertices()[v].id
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_end(&self, s: &TriangulatedSurface, e: End, side: SideId) -> Result<()> {
        match e {
            End::Boundary(b) => {
                if s.triangle_of(b) != s.triangle_of(side) || b == side {
                    return Err(Error::NotTaut(format!("boundary end {b} does not meet side {side}")));
                }
            }
            End::Corner { triangle, corner } => {
                if triangle != s.triangle_of(side) || corner != opposite_corner(side) {
                    return Err(Error::NotTaut(format!(
                        "vertex end is not opposite the last crossed edge `{}`",
                        s.edges()[s.edge_of(side)].id
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn reversed(&self, s: &TriangulatedSurface) -> Self {
        let sides = self.sides.iter().rev().map(|&x| s.twin(x).expect("crossed side")).collect();
        Self { shape: self.shape, sides, start: self.end, end: self.start }
    }

    /// Representative that is the same for every traversal of the curve.
    pub fn canonical(&self, s: &TriangulatedSurface) -> Self {
        let rev = self.reversed(s);
        match self.shape {
            CurveShape::Arc => {
                if rev < *self {
                    rev
                } else {
                    self.clone()
                }
            }
            CurveShape::Closed => {
                let mut best = self.clone();
                for c in [self, &rev] {
                    for k in 0..c.sides.len() {
                        let mut r = c.clone();
                        r.sides.rotate_left(k);
                        if r < best {
                            best = r;
                        }
                    }
                }
                best
            }
        }
    }

    pub fn crossing_edges(&self, s: &TriangulatedSurface) -> Vec<usize> {
        self.sides.iter().map(|&x| s.edge_of(x)).collect()
    }

    /// Vertices at the ends of an arc.
    pub fn end_vertices(&self, s: &TriangulatedSurface) -> Vec<usize> {
        [self.start, self.end]
            .into_iter()
            .flatten()
            .filter_map(|e| match e {
                End::Corner { triangle, corner } => Some(corner_vertex(s, triangle, corner)),
                End::Boundary(_) => None,
            })
            .collect()
    }
}

/// A path on the closed complex; the ports are the sides through which the
/// end segments would continue.
#[derive(Clone, Debug, PartialEq)]
struct Path {
    closed: bool,
    sides: Vec<SideId>,
    start: Port,
    end: Port,
    /// Number of crossings added by spiral expansion at each end.
    spiral: [usize; 2],
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Port {
    None,
    Corner { triangle: usize, corner: usize },
    Side(SideId),
}

/// The surface together with its double, when it has boundary.
#[derive(Clone, Debug)]
pub struct LaminationContext {
    surface: TriangulatedSurface,
    double: Option<DoubledSurface>,
}

impl LaminationContext {
    pub fn new(surface: &TriangulatedSurface) -> Result<Self> {
        let double = if surface.has_boundary() { Some(surface.double()?) } else { None };
        Ok(Self { surface: surface.clone(), double })
    }

    pub fn surface(&self) -> &TriangulatedSurface {
        &self.surface
    }

    fn complex(&self) -> &TriangulatedSurface {
        self.double.as_ref().map_or(&self.surface, |d| d.surface())
    }

    fn original_vertex(&self, v: usize) -> usize {
        self.double.as_ref().map_or(v, |d| d.vertex_origin(v))
    }

    fn mirror_side(&self, s: SideId) -> SideId {
        self.double.as_ref().expect("double").mirror_side(s)
    }

    fn mirror_corner(&self, triangle: usize, corner: usize) -> Port {
        let m = self.mirror_side(3 * triangle);
        Port::Corner { triangle: m / 3, corner: (3 - corner) % 3 }
    }

    fn port(e: End) -> Port {
        match e {
            End::Corner { triangle, corner } => Port::Corner { triangle, corner },
            End::Boundary(_) => unreachable!("boundary ends are glued in the double"),
        }
    }

    /// Paths on the closed complex traced by the curve and, on a surface with
    /// boundary, its mirror image. Arcs ending on the boundary are glued to
    /// their mirror images.
    fn doubled(&self, c: &CombinatorialCurve) -> Vec<Path> {
        let s = &self.surface;
        let plain = |sides: Vec<SideId>, start: Port, end: Port, closed: bool| Path {
            closed,
            sides,
            start,
            end,
            spiral: [0, 0],
        };
        let Some(_) = &self.double else {
            return vec![match c.shape {
                CurveShape::Closed => plain(c.sides.clone(), Port::None, Port::None, true),
                CurveShape::Arc => plain(c.sides.clone(), Self::port(c.start.unwrap()), Self::port(c.end.unwrap()), false),
            }];
        };
        let mirrored = |sides: &[SideId]| -> Vec<SideId> { sides.iter().map(|&x| self.mirror_side(x)).collect() };
        let back = |sides: &[SideId]| -> Vec<SideId> {
            sides.iter().rev().map(|&x| self.mirror_side(s.twin(x).expect("crossed side"))).collect()
        };
        let mirror_port = |e: End| match e {
            End::Corner { triangle, corner } => self.mirror_corner(triangle, corner),
            End::Boundary(_) => unreachable!(),
        };
        match (c.shape, c.start, c.end) {
            (CurveShape::Closed, _, _) => vec![
                plain(c.sides.clone(), Port::None, Port::None, true),
                plain(mirrored(&c.sides), Port::None, Port::None, true),
            ],
            (_, Some(End::Boundary(b0)), Some(End::Boundary(b1))) => {
                let mut sides = c.sides.clone();
                sides.push(b1);
                sides.extend(back(&c.sides));
                sides.push(self.mirror_side(b0));
                vec![plain(sides, Port::None, Port::None, true)]
            }
            (_, Some(start @ End::Corner { .. }), Some(End::Boundary(b1))) => {
                let mut sides = c.sides.clone();
                sides.push(b1);
                sides.extend(back(&c.sides));
                vec![plain(sides, Self::port(start), mirror_port(start), false)]
            }
            (_, Some(End::Boundary(_)), Some(End::Corner { .. })) => self.doubled(&c.reversed(s)),
            (_, Some(start), Some(end)) => vec![
                plain(c.sides.clone(), Self::port(start), Self::port(end), false),
                plain(mirrored(&c.sides), mirror_port(start), mirror_port(end), false),
            ],
            _ => unreachable!("arc without ends"),
        }
    }

    /// Vertex of the complex whose corner every segment of a closed path
    /// cuts, when there is one.
    fn common_corner(&self, p: &Path) -> Option<usize> {
        let w = self.complex();
        let n = p.sides.len();
        let mut vertex = None;
        for i in 0..n {
            let entry = w.twin(p.sides[(i + n - 1) % n])?;
            let exit = p.sides[i];
            let v = if exit == w.next(entry) {
                w.dest(entry)
            } else if exit == w.prev(entry) {
                w.origin(entry)
            } else {
                return None;
            };
            match vertex {
                None => vertex = Some(v),
                Some(u) if u != v => return None,
                _ => {}
            }
        }
        vertex
    }

    pub fn classify(&self, c: &CombinatorialCurve) -> Result<CurveKind> {
        let s = &self.surface;
        c.check(s)?;
        if c.shape == CurveShape::Closed && c.sides.is_empty() {
            return Ok(CurveKind::Contractible);
        }
        if c.shape == CurveShape::Arc && c.sides.is_empty() {
            match (c.start.unwrap(), c.end.unwrap()) {
                (End::Boundary(a), End::Boundary(b)) if a == b => return Ok(CurveKind::Contractible),
                (End::Corner { corner: k, .. }, End::Corner { corner: j, .. }) if j == k => {
                    return Ok(CurveKind::Contractible);
                }
                (End::Corner { corner, .. }, End::Boundary(b)) | (End::Boundary(b), End::Corner { corner, .. })
                    if b % 3 == corner || (b % 3 + 1) % 3 == corner =>
                {
                    return Ok(CurveKind::Contractible);
                }
                _ => {}
            }
        }
        let ends = c.end_vertices(s);
        if ends.iter().any(|&v| s.vertices()[v].kind == VertexKind::Spike) {
            return Ok(CurveKind::XD);
        }
        if !ends.is_empty() {
            return Ok(CurveKind::X);
        }
        let paths = self.doubled(c);
        let p = &paths[0];
        if let Some(v) = self.common_corner(p) {
            let valence = self.complex().valence(v);
            if p.sides.len() == valence {
                return Ok(CurveKind::A { vertex: self.original_vertex(v) });
            }
            if p.sides.len().is_multiple_of(valence) {
                return Err(Error::NotTaut("curve winds around a vertex more than once".into()));
            }
        }
        Ok(CurveKind::General)
    }

    /// Crossings added by spiraling into the corner opposite `a`, and the
    /// side the spiral would leave through next.
    fn spiral(&self, a: SideId, eps: i8) -> (Vec<SideId>, SideId) {
        let w = self.complex();
        let v = w.origin(w.prev(a));
        let turns = w.valence(v) + 1;
        let mut out = Vec::with_capacity(turns);
        if eps > 0 {
            let mut f = w.prev(a);
            for _ in 0..turns {
                out.push(f);
                f = w.next(w.twin(f).expect("closed complex"));
            }
            (out, f)
        } else {
            let mut f = w.next(a);
            for _ in 0..turns {
                out.push(f);
                f = w.prev(w.twin(f).expect("closed complex"));
            }
            (out, f)
        }
    }

    fn eps_at(&self, eps: &[i8], triangle: usize, corner: usize) -> Result<i8> {
        let w = self.complex();
        let v = self.original_vertex(corner_vertex(w, triangle, corner));
        match eps[v] {
            0 => Err(Error::Orientation(format!(
                "curve ends at `{}` but the orientation map is 0 there",
                self.surface.vertices()[v].id
            ))),
            e => Ok(e.signum()),
        }
    }

    fn reverse_path(&self, p: &Path) -> Path {
        let w = self.complex();
        Path {
            closed: p.closed,
            sides: p.sides.iter().rev().map(|&x| w.twin(x).expect("closed complex")).collect(),
            start: p.end,
            end: p.start,
            spiral: [p.spiral[1], p.spiral[0]],
        }
    }

    /// Replace corner ends by their spiraling continuations.
    fn expand(&self, p: &Path, eps: &[i8]) -> Result<Path> {
        let w = self.complex();
        let mut p = p.clone();
        if p.closed {
            return Ok(p);
        }
        if let (true, Port::Corner { triangle: t, corner: kw }, Port::Corner { corner: kv, .. }) =
            (p.sides.is_empty(), p.start, p.end)
        {
            return self.expand_along_edge(t, kw, kv, eps);
        }
        for _ in 0..2 {
            if let Port::Corner { triangle, corner } = p.end {
                let a = w.twin(*p.sides.last().expect("crossing")).expect("closed complex");
                if w.triangle_of(a) != triangle || opposite_corner(a) != corner {
                    return Err(Error::NotTaut("vertex end is not opposite the last crossing".into()));
                }
                let (extra, term) = self.spiral(a, self.eps_at(eps, triangle, corner)?);
                p.spiral[1] = extra.len();
                p.sides.extend(extra);
                p.end = Port::Side(term);
            }
            p = self.reverse_path(&p);
        }
        Ok(p)
    }

    /// Arc without crossings between corners `kw` and `kv` of triangle `t`,
    /// homotopic to the edge joining them.
    fn expand_along_edge(&self, t: usize, kw: usize, kv: usize, eps: &[i8]) -> Result<Path> {
        let w = self.complex();
        let ew = self.eps_at(eps, t, kw)?;
        let ev = self.eps_at(eps, t, kv)?;
        let shared = if kv == (kw + 1) % 3 { 3 * t + kw } else { 3 * t + kv };
        let other = w.twin(shared).expect("closed complex");
        // in the other triangle the side runs the opposite way
        let (t2, kw2, kv2) = if kv == (kw + 1) % 3 {
            (other / 3, (other % 3 + 1) % 3, other % 3)
        } else {
            (other / 3, other % 3, (other % 3 + 1) % 3)
        };
        for (tri, a, b) in [(t, kw, kv), (t2, kw2, kv2)] {
            let a_w = 3 * tri + (a + 1) % 3;
            let a_v = 3 * tri + (b + 1) % 3;
            let (g, tw) = self.spiral(a_w, ew);
            let (f, tv) = self.spiral(a_v, ev);
            if f[0] == g[0] {
                continue;
            }
            let mut sides: Vec<SideId> = g.iter().rev().map(|&x| w.twin(x).expect("closed complex")).collect();
            let spiral = [sides.len(), f.len()];
            sides.extend(f);
            return Ok(Path { closed: false, sides, start: Port::Side(tw), end: Port::Side(tv), spiral });
        }
        Err(Error::AmbiguousCrossing("arc along an edge has no consistent spiraling".into()))
    }

    /// Signed contribution (`+1`, `-1` or `0`) of every crossing of a path.
    fn crossing_signs(&self, p: &Path) -> Result<Vec<i8>> {
        let w = self.complex();
        let n = p.sides.len();
        let side_of = |port: Port| -> Result<SideId> {
            match port {
                Port::Side(s) => Ok(s),
                _ => Err(Error::Orientation("unexpanded vertex end".into())),
            }
        };
        let rel = |s: SideId, q: SideId| -> Result<i8> {
            if q == w.next(s) {
                Ok(1)
            } else if q == w.prev(s) {
                Ok(-1)
            } else {
                Err(Error::NotTaut("curve leaves a triangle through the side it entered".into()))
            }
        };
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let c = p.sides[i];
            let entry = if i > 0 {
                w.twin(p.sides[i - 1]).expect("closed complex")
            } else if p.closed {
                w.twin(p.sides[n - 1]).expect("closed complex")
            } else {
                side_of(p.start)?
            };
            let exit = if i + 1 < n {
                p.sides[i + 1]
            } else if p.closed {
                p.sides[0]
            } else {
                side_of(p.end)?
            };
            let here = rel(c, entry)?;
            let there = rel(w.twin(c).expect("closed complex"), exit)?;
            out.push(if here == there { here } else { 0 });
        }
        Ok(out)
    }

    /// Signed crossing weights of one curve on the edges of the complex.
    fn curve_signed_weights(&self, c: &CombinatorialCurve, eps: &[i8]) -> Result<Vec<f64>> {
        let w = self.complex();
        let mut x = vec![0.0; w.edges().len()];
        for p in self.doubled(c) {
            let p = self.expand(&p, eps)?;
            let signs = self.crossing_signs(&p)?;
            let n = signs.len();
            // past the first crossing of each spiral everything must cancel
            let tail_start = p.spiral[0].saturating_sub(1);
            let tail_end = n - p.spiral[1].saturating_sub(1);
            for (i, &sg) in signs.iter().enumerate() {
                if (i < tail_start || i >= tail_end) && sg != 0 {
                    return Err(Error::Domain("spiral crossings did not cancel".into()));
                }
                x[w.edge_of(p.sides[i])] += f64::from(sg);
            }
        }
        Ok(x)
    }

    fn curve_crossing_counts(&self, c: &CombinatorialCurve) -> Vec<f64> {
        let w = self.complex();
        let mut a = vec![0.0; w.edges().len()];
        for p in self.doubled(c) {
            for &side in &p.sides {
                a[w.edge_of(side)] += 1.0;
            }
        }
        a
    }
}

/// Resolve a crossing sequence into sides, trying every consistent choice.
fn resolve(s: &TriangulatedSurface, d: &CurveDescription) -> Result<CombinatorialCurve> {
    let edge = |id: &str| s.edge_index(id).ok_or_else(|| Error::UnknownId { kind: "edge", id: id.into() });
    let edges = d.crossings.iter().map(|e| edge(e)).collect::<Result<Vec<_>>>()?;
    for &e in &edges {
        if s.edges()[e].kind == EdgeKind::Boundary {
            return Err(Error::NotTaut(format!("curve crosses boundary edge `{}`", s.edges()[e].id)));
        }
    }
    let hint = match &d.triangles {
        Some(ts) => Some(
            ts.iter()
                .map(|t| s.triangle_index(t).ok_or_else(|| Error::UnknownId { kind: "triangle", id: t.clone() }))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    match d.shape {
        CurveShape::Closed if !d.ends.is_empty() => return Err(Error::Parse("closed curve with ends".into())),
        CurveShape::Arc if d.ends.len() != 2 => {
            return Err(Error::Parse(format!("arc needs 2 ends, got {}", d.ends.len())))
        }
        _ => {}
    }
    let mut found: Vec<CombinatorialCurve> = Vec::new();
    let n = edges.len();
    let end_candidates = |e: &CurveEnd| -> Result<Vec<End>> {
        match e {
            CurveEnd::Boundary(id) => {
                let b = edge(id)?;
                if s.edges()[b].kind != EdgeKind::Boundary {
                    return Err(Error::Parse(format!("end edge `{id}` is not a boundary edge")));
                }
                Ok(vec![End::Boundary(s.sides_of_edge(b)[0])])
            }
            CurveEnd::Vertex(id) => {
                let v = s.vertex_index(id).ok_or_else(|| Error::UnknownId { kind: "vertex", id: id.clone() })?;
                Ok((0..s.triangles().len())
                    .flat_map(|t| (0..3).map(move |k| (t, k)))
                    .filter(|&(t, k)| corner_vertex(s, t, k) == v)
                    .map(|(triangle, corner)| End::Corner { triangle, corner })
                    .collect())
            }
        }
    };
    let mut push = |c: CombinatorialCurve| {
        if c.check(s).is_ok() {
            let c = c.canonical(s);
            if !found.contains(&c) {
                found.push(c);
            }
        }
    };
    let triangles_of = |c: &CombinatorialCurve| -> Vec<usize> {
        let mut t = Vec::new();
        if let Some(e) = c.start {
            t.push(c.triangle_of_end(s, e));
        }
        for &x in &c.sides {
            t.push(s.triangle_of(s.twin(x).expect("interior side")));
        }
        if c.shape == CurveShape::Arc && c.sides.is_empty() {
            t.truncate(1);
        }
        t
    };
    // depth-first over side choices
    let mut stack: Vec<Vec<SideId>> = vec![vec![]];
    let mut complete: Vec<Vec<SideId>> = Vec::new();
    while let Some(partial) = stack.pop() {
        let i = partial.len();
        if i == n {
            complete.push(partial);
            continue;
        }
        for &side in s.sides_of_edge(edges[i]) {
            if let Some(&prev) = partial.last() {
                let t = s.twin(prev).expect("interior side");
                if s.triangle_of(t) != s.triangle_of(side) || t == side {
                    continue;
                }
            }
            let mut next = partial.clone();
            next.push(side);
            stack.push(next);
        }
    }
    for sides in complete {
        match d.shape {
            CurveShape::Closed => {
                let c = CombinatorialCurve::closed(sides);
                if hint.as_ref().is_none_or(|h| *h == triangles_of(&c)) {
                    push(c);
                }
            }
            CurveShape::Arc => {
                for a in end_candidates(&d.ends[0])? {
                    for b in end_candidates(&d.ends[1])? {
                        let c = CombinatorialCurve::arc(a, sides.clone(), b);
                        if c.check(s).is_err() {
                            continue;
                        }
                        if hint.as_ref().is_none_or(|h| *h == triangles_of(&c)) {
                            push(c);
                        }
                    }
                }
            }
        }
    }
    // arcs without crossings along an edge: corners in either triangle of
    // the edge give the same curve
    if d.shape == CurveShape::Arc && n == 0 && found.len() > 1 {
        let key = |c: &CombinatorialCurve| -> Option<usize> {
            match (c.start?, c.end?) {
                (End::Corner { triangle, corner: a }, End::Corner { corner: b, .. }) => {
                    let side = if b == (a + 1) % 3 { 3 * triangle + a } else { 3 * triangle + b };
                    Some(s.edge_of(side))
                }
                _ => None,
            }
        };
        let mut seen = Vec::new();
        found.retain(|c| match key(c) {
            Some(e) if seen.contains(&e) => false,
            Some(e) => {
                seen.push(e);
                true
            }
            None => true,
        });
    }
    match found.len() {
        0 => Err(Error::NotTaut(format!("crossings {:?} do not trace a curve", d.crossings))),
        1 => Ok(found.pop().expect("one curve")),
        k => Err(Error::AmbiguousCrossing(format!(
            "crossings {:?} fit {k} different curves; list the triangles to choose one",
            d.crossings
        ))),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedCurve {
    pub curve: CombinatorialCurve,
    pub weight: f64,
    pub kind: CurveKind,
}

/// Orientation map `V -> {-1, 0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientationMap(pub Vec<i8>);

#[derive(Clone, Debug)]
pub struct Lamination {
    context: LaminationContext,
    flavor: Flavor,
    orientation: OrientationMap,
    curves: Vec<WeightedCurve>,
}

impl Lamination {
    /// Canonical form: contractible and weightless curves dropped, equal
    /// curves merged.
    pub fn new(
        surface: &TriangulatedSurface,
        flavor: Flavor,
        curves: Vec<(CombinatorialCurve, f64)>,
        orientation: Vec<i8>,
    ) -> Result<Self> {
        let context = LaminationContext::new(surface)?;
        let nv = surface.vertices().len();
        if orientation.len() != nv {
            return Err(Error::Dimension { what: "orientation", expected: nv, got: orientation.len() });
        }
        if orientation.iter().any(|e| !(-1..=1).contains(e)) {
            return Err(Error::Orientation("values must be -1, 0 or 1".into()));
        }
        let mut merged: Vec<WeightedCurve> = Vec::new();
        for (c, w) in curves {
            if !w.is_finite() {
                return Err(Error::NonFinite("curve weight".into()));
            }
            let kind = context.classify(&c)?;
            if kind == CurveKind::Contractible {
                continue;
            }
            let c = c.canonical(surface);
            match merged.iter_mut().find(|m| m.curve == c) {
                Some(m) => m.weight += w,
                None => merged.push(WeightedCurve { curve: c, weight: w, kind }),
            }
        }
        merged.retain(|m| m.weight != 0.0);
        for m in &merged {
            if m.weight < 0.0 && !matches!(m.kind, CurveKind::A { .. }) {
                return Err(Error::Flavor("only peripheral curves may have negative weight".into()));
            }
            if !flavor.admits(m.kind) {
                return Err(Error::Flavor(format!("{flavor:?}-lamination cannot contain a {:?} curve", m.kind)));
            }
        }
        let mut ends = vec![false; nv];
        for m in &merged {
            for v in m.curve.end_vertices(surface) {
                ends[v] = true;
            }
        }
        for v in 0..nv {
            if ends[v] != (orientation[v] != 0) {
                return Err(Error::Orientation(format!(
                    "vertex `{}`: orientation {} but {} curve ends",
                    surface.vertices()[v].id,
                    orientation[v],
                    if ends[v] { "has" } else { "no" }
                )));
            }
        }
        Ok(Self { context, flavor, orientation: OrientationMap(orientation), curves: merged })
    }

    pub fn from_description(surface: &TriangulatedSurface, d: &LaminationDescription) -> Result<Self> {
        let mut orientation = vec![0i8; surface.vertices().len()];
        for (id, &e) in &d.orientation {
            let v = surface.vertex_index(id).ok_or_else(|| Error::UnknownId { kind: "vertex", id: id.clone() })?;
            orientation[v] = e;
        }
        let curves = d
            .curves
            .iter()
            .map(|c| Ok((resolve(surface, c)?, c.weight)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(surface, d.flavor, curves, orientation)
    }

    pub fn to_description(&self) -> LaminationDescription {
        let s = self.context.surface();
        let orientation = s
            .vertices()
            .iter()
            .zip(&self.orientation.0)
            .filter(|(_, &e)| e != 0)
            .map(|(v, &e)| (v.id.clone(), e))
            .collect();
        let end = |e: End| match e {
            End::Boundary(b) => CurveEnd::Boundary(s.edges()[s.edge_of(b)].id.clone()),
            End::Corner { triangle, corner } => CurveEnd::Vertex(s.vertices()[corner_vertex(s, triangle, corner)].id.clone()),
        };
        let curves = self
            .curves
            .iter()
            .map(|m| {
                let c = &m.curve;
                let mut triangles = Vec::new();
                if let Some(e) = c.start {
                    triangles.push(c.triangle_of_end(s, e));
                }
                for &x in &c.sides {
                    triangles.push(s.triangle_of(s.twin(x).expect("interior side")));
                }
                if c.shape == CurveShape::Arc && c.sides.is_empty() {
                    triangles.truncate(1);
                }
                CurveDescription {
                    shape: c.shape,
                    crossings: c.sides.iter().map(|&x| s.edges()[s.edge_of(x)].id.clone()).collect(),
                    ends: [c.start, c.end].into_iter().flatten().map(end).collect(),
                    triangles: Some(triangles.into_iter().map(|t| s.triangles()[t].id.clone()).collect()),
                    weight: m.weight,
                }
            })
            .collect();
        LaminationDescription { flavor: self.flavor, orientation, curves }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn orientation(&self) -> &OrientationMap {
        &self.orientation
    }

    pub fn curves(&self) -> &[WeightedCurve] {
        &self.curves
    }

    pub fn surface(&self) -> &TriangulatedSurface {
        self.context.surface()
    }

    /// `Phi_a`: total weight crossing each edge. Boundary edges count arc
    /// endpoints.
    pub fn edge_weights_a(&self) -> Result<Vec<f64>> {
        if self.flavor != Flavor::A {
            return Err(Error::Flavor(format!("edge weights need an A-lamination, got {:?}", self.flavor)));
        }
        let ne = self.surface().edges().len();
        let mut a = vec![0.0; ne];
        for m in &self.curves {
            let counts = self.context.curve_crossing_counts(&m.curve);
            for e in 0..ne {
                a[e] += m.weight * counts[e];
            }
        }
        Ok(a)
    }

    /// `Phi_x`: positive minus negative crossing weights. Boundary edges are
    /// included, through the doubled lamination, when `include_boundary` is
    /// set; otherwise they read `0`. Peripheral curves cross every edge
    /// neutrally and contribute nothing.
    pub fn signed_weights_x(&self, include_boundary: bool) -> Result<Vec<f64>> {
        if self.flavor == Flavor::A {
            return Err(Error::Flavor("signed weights need an X-type lamination".into()));
        }
        self.signed_weights_unchecked(include_boundary)
    }

    fn signed_weights_unchecked(&self, include_boundary: bool) -> Result<Vec<f64>> {
        let s = self.surface();
        let mut x = vec![0.0; s.edges().len()];
        for m in &self.curves {
            let cx = self.context.curve_signed_weights(&m.curve, &self.orientation.0)?;
            for (e, xe) in x.iter_mut().enumerate() {
                if include_boundary || s.edges()[e].kind == EdgeKind::Interior {
                    *xe += m.weight * cx[e];
                }
            }
        }
        Ok(x)
    }

    /// `Psi_x`: shears from the non-peripheral curves and decorations from
    /// the peripheral ones.
    pub fn psi_x(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let s = self.surface();
        let mut d = vec![0.0; s.vertices().len()];
        let mut seen = vec![false; s.vertices().len()];
        let mut rest = Vec::new();
        for m in &self.curves {
            match m.kind {
                CurveKind::A { vertex } => {
                    if seen[vertex] {
                        return Err(Error::Flavor(format!(
                            "two peripheral curves around `{}`",
                            s.vertices()[vertex].id
                        )));
                    }
                    seen[vertex] = true;
                    d[vertex] = m.weight;
                }
                _ => rest.push(m.clone()),
            }
        }
        let others = Self { curves: rest, ..self.clone() };
        let x = others.signed_weights_unchecked(self.flavor.includes_boundary())?;
        Ok((x, d))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompatibilityReport {
    /// `psi(Psi_x(L))`.
    pub lhs: LambdaBoundaryPoint,
    /// `(Phi_a(L), 0)`.
    pub rhs: LambdaBoundaryPoint,
    /// Max over edges and punctures of `|lhs - rhs|`.
    pub max_error: f64,
    /// Largest `|l_v|`.
    pub max_boundary_length: f64,
    /// Same comparison with the max-plus limit of `psi`.
    pub tropical_max_error: f64,
}

impl CompatibilityReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_error <= tol && self.max_boundary_length <= 1e-12
    }
}

/// Compare both routes from an A-lamination to lambda-lengths.
pub fn compatibility_check(coords: &Coordinates, l: &Lamination) -> Result<CompatibilityReport> {
    if l.flavor() != Flavor::A {
        return Err(Error::Flavor("compatibility check needs an A-lamination".into()));
    }
    let s = coords.surface();
    let (mut x, d) = l.psi_x()?;
    for (e, xe) in x.iter_mut().enumerate() {
        if s.edges()[e].kind == EdgeKind::Boundary {
            *xe = 0.0;
        }
    }
    let p = ShearDecorationPoint { shear: x, decoration: d };
    let lhs = coords.psi_forward(&p)?;
    let trop = coords.tropical_forward(&p)?;
    let rhs = LambdaBoundaryPoint { lambda: l.edge_weights_a()?, boundary_length: vec![0.0; s.vertices().len()] };
    let max_boundary_length = lhs.boundary_length.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(CompatibilityReport {
        max_error: lhs.max_abs_diff(&rhs),
        tropical_max_error: max_abs_diff(&trop.lambda, &rhs.lambda).max(max_abs_diff(&trop.boundary_length, &rhs.boundary_length)),
        lhs,
        rhs,
        max_boundary_length,
    })
}
