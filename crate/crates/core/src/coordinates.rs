//! Shear-decoration and lambda-boundary-length charts and the maps between
//! them.
//!
//! Shears are stored per edge of the surface with boundary entries fixed at
//! `0`; decorations per vertex; lambda-lengths per edge; boundary lengths per
//! vertex with spike entries fixed at `0`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{
    DoubledSurface, EdgeKind, SideId, StarEntry, TriangulatedSurface, VertexKind,
};

/// Gap coefficients at a 1-valent puncture in the inverse map, as multiples
/// of its signed boundary length. Odd quad corners (`v_1`, `v_3`) see the
/// diagonal and the next edge, even corners only the next edge. This gives
/// `x_e = (a12 - a23 + a34 - a41 + 2 l)/2` when `v_1` is the puncture and
/// `x_e = (a12 - a23 + a34 - a41 - l)/2` when `v_2` is; both are pinned by the
/// roundtrip regression tests.
pub const PUNCTURE_GAP_ODD: f64 = 2.0;
pub const PUNCTURE_GAP_EVEN: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecorationKind {
    Cusp,
    Spike,
    Geodesic,
}

impl DecorationKind {
    pub fn of(kind: VertexKind, l: f64) -> Self {
        match kind {
            VertexKind::Spike => DecorationKind::Spike,
            VertexKind::Puncture if l == 0.0 => DecorationKind::Cusp,
            VertexKind::Puncture => DecorationKind::Geodesic,
        }
    }
}

/// Length of a decoration curve together with its lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecorationCurveLength {
    pub r: f64,
    pub lower_bound: f64,
}

impl DecorationCurveLength {
    pub fn new(r: f64, lower_bound: f64) -> Result<Self> {
        if !(r.is_finite() && lower_bound >= 0.0 && r > lower_bound) {
            return Err(Error::Domain(format!(
                "decoration curve length {r} must exceed {lower_bound}"
            )));
        }
        Ok(Self { r, lower_bound })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShearDecorationPoint {
    pub shear: Vec<f64>,
    pub decoration: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaBoundaryPoint {
    pub lambda: Vec<f64>,
    pub boundary_length: Vec<f64>,
}

fn check_finite(what: &str, values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::NonFinite(format!("{what}[{i}]"))),
        None => Ok(()),
    }
}

fn check_len(what: &'static str, expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::Dimension { what, expected, got });
    }
    Ok(())
}

impl ShearDecorationPoint {
    /// Validate against `surface`. Boundary-edge shears must be zero.
    pub fn new(surface: &TriangulatedSurface, shear: Vec<f64>, decoration: Vec<f64>) -> Result<Self> {
        check_len("shear", surface.edges().len(), shear.len())?;
        check_len("decoration", surface.vertices().len(), decoration.len())?;
        check_finite("shear", &shear)?;
        check_finite("decoration", &decoration)?;
        for (e, edge) in surface.edges().iter().enumerate() {
            if edge.kind == EdgeKind::Boundary && shear[e] != 0.0 {
                return Err(Error::Domain(format!(
                    "boundary edge `{}` carries no shear parameter",
                    edge.id
                )));
            }
        }
        Ok(Self { shear, decoration })
    }

    pub fn zero(surface: &TriangulatedSurface) -> Self {
        Self {
            shear: vec![0.0; surface.edges().len()],
            decoration: vec![0.0; surface.vertices().len()],
        }
    }

    /// Coordinates drawn uniformly from `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(surface: &TriangulatedSurface, rng: &mut R, bound: f64) -> Self {
        let shear = surface
            .edges()
            .iter()
            .map(|e| match e.kind {
                EdgeKind::Interior => rng.gen_range(-bound..=bound),
                EdgeKind::Boundary => 0.0,
            })
            .collect();
        let decoration =
            surface.vertices().iter().map(|_| rng.gen_range(-bound..=bound)).collect();
        Self { shear, decoration }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs_diff(&self.shear, &other.shear).max(max_abs_diff(&self.decoration, &other.decoration))
    }
}

impl LambdaBoundaryPoint {
    /// Validate against `surface`. Spike boundary lengths must be zero.
    pub fn new(
        surface: &TriangulatedSurface,
        lambda: Vec<f64>,
        boundary_length: Vec<f64>,
    ) -> Result<Self> {
        check_len("lambda", surface.edges().len(), lambda.len())?;
        check_len("boundary_length", surface.vertices().len(), boundary_length.len())?;
        check_finite("lambda", &lambda)?;
        check_finite("boundary_length", &boundary_length)?;
        for (v, vert) in surface.vertices().iter().enumerate() {
            if vert.kind == VertexKind::Spike && boundary_length[v] != 0.0 {
                return Err(Error::Domain(format!(
                    "spike `{}` carries no boundary length",
                    vert.id
                )));
            }
        }
        Ok(Self { lambda, boundary_length })
    }

    pub fn zero(surface: &TriangulatedSurface) -> Self {
        Self {
            lambda: vec![0.0; surface.edges().len()],
            boundary_length: vec![0.0; surface.vertices().len()],
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs_diff(&self.lambda, &other.lambda)
            .max(max_abs_diff(&self.boundary_length, &other.boundary_length))
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn log_sum_exp(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let m = values.clone().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + values.map(|v| (v - m).exp()).sum::<f64>().ln()
}

/// `log S_k` for every start `k` (0-based), where
/// `S_k = sum_{i=0}^{n-1} exp(x_{k+1} + ... + x_{k+i})` with indices mod `n`.
pub fn log_star_sums(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            let mut partial = Vec::with_capacity(n);
            let mut acc = 0.0;
            partial.push(0.0);
            for i in 1..n {
                acc += x[(k + i) % n];
                partial.push(acc);
            }
            log_sum_exp(partial.into_iter())
        })
        .collect()
}

/// Max-plus version of [`log_star_sums`]: the limit of `log_star_sums(t x) / t`.
pub fn tropical_star_sums(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            let mut acc = 0.0;
            let mut best = 0.0f64;
            for i in 1..n {
                acc += x[(k + i) % n];
                best = best.max(acc);
            }
            best
        })
        .collect()
}

/// `l / (e^l - 1)`, continuous at `0`.
fn length_factor(l: f64) -> f64 {
    if l == 0.0 {
        1.0
    } else {
        l / l.exp_m1()
    }
}

/// Lengths `r_k` of the neighborhood boundaries through the base points of
/// the star. `l` is the signed boundary length (`0` for cusps and spikes).
///
/// The signed `l` is used: the factor `l/(e^l - 1)` is what the developed
/// star produces for either enhancement.
pub fn neighborhood_radii(x: &[f64], l: f64) -> Vec<f64> {
    let c = length_factor(l);
    let em1 = l.exp_m1();
    log_star_sums(x)
        .into_iter()
        .map(|ls| {
            if l == 0.0 {
                ls.exp()
            } else {
                c * ls.exp().hypot(em1)
            }
        })
        .collect()
}

fn min_radius(radii: &[f64]) -> Result<f64> {
    let m = radii.iter().copied().fold(f64::INFINITY, f64::min);
    if !m.is_finite() {
        return Err(Error::Domain("empty or non-finite neighborhood radii".into()));
    }
    Ok(m)
}

pub fn decoration_param(
    kind: DecorationKind,
    r_v: DecorationCurveLength,
    radii: &[f64],
    l: f64,
) -> Result<f64> {
    let m = min_radius(radii)?;
    match kind {
        DecorationKind::Cusp | DecorationKind::Spike => {
            if r_v.r <= 0.0 {
                return Err(Error::Domain(format!("decoration length {} is not positive", r_v.r)));
            }
            Ok((m / r_v.r).ln())
        }
        DecorationKind::Geodesic => {
            let l2 = l * l;
            if r_v.r <= l.abs() {
                return Err(Error::Domain(format!(
                    "decoration length {} does not exceed |l| = {}",
                    r_v.r,
                    l.abs()
                )));
            }
            if m <= l.abs() {
                return Err(Error::Domain(format!(
                    "minimal neighborhood radius {m} does not exceed |l| = {}",
                    l.abs()
                )));
            }
            Ok(0.5 * ((m * m - l2) / (r_v.r * r_v.r - l2)).ln())
        }
    }
}

/// Inverse of [`decoration_param`] in `r_v`.
pub fn radius_from_decoration(d: f64, radii: &[f64], l: f64, kind: DecorationKind) -> Result<f64> {
    if !d.is_finite() {
        return Err(Error::NonFinite("decoration".into()));
    }
    let m = min_radius(radii)?;
    match kind {
        DecorationKind::Cusp | DecorationKind::Spike => Ok(m * (-d).exp()),
        DecorationKind::Geodesic => {
            let l2 = l * l;
            if m <= l.abs() {
                return Err(Error::Domain(format!(
                    "minimal neighborhood radius {m} does not exceed |l| = {}",
                    l.abs()
                )));
            }
            Ok((l2 + (m * m - l2) * (-2.0 * d).exp()).sqrt())
        }
    }
}

/// `d r_v / d d_v` is the reciprocal of these.
pub fn decoration_derivative(kind: DecorationKind, r_v: f64, l: f64) -> f64 {
    match kind {
        DecorationKind::Cusp | DecorationKind::Spike => -1.0 / r_v,
        DecorationKind::Geodesic => -r_v / (r_v * r_v - l * l),
    }
}

/// Ideal endpoints `u_1 ..= u_{n+1}` of a star developed with its center at
/// infinity, for shears `x_1 .. x_n` in star order.
pub fn endpoint_positions(x: &[f64], u1: f64, un1: f64) -> Result<Vec<f64>> {
    if u1 == un1 {
        return Err(Error::DegenerateNormalization);
    }
    let n = x.len();
    if n == 0 {
        return Err(Error::Dimension { what: "star", expected: 1, got: 0 });
    }
    // partial sums of x_2 .. x_i, shifted by their maximum for stability
    let mut logs = Vec::with_capacity(n);
    let mut acc = 0.0;
    logs.push(0.0);
    for &xi in &x[1..] {
        acc += xi;
        logs.push(acc);
    }
    let shift = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = logs.iter().map(|v| (v - shift).exp()).collect();
    let total: f64 = weights.iter().sum();
    let mut u = Vec::with_capacity(n + 1);
    let mut cum = 0.0;
    u.push(u1);
    for (i, w) in weights.iter().enumerate() {
        cum += w;
        u.push(if i + 1 == n { un1 } else { u1 + (un1 - u1) * cum / total });
    }
    Ok(u)
}

/// `sum_i x_i` over the star.
pub fn boundary_length_from_star(x: &[f64]) -> f64 {
    x.iter().sum()
}

/// Half-edge lambda-length of the star entry at `host`.
pub fn half_edge_lambda_in_star(x: &[f64], host: usize, d: f64) -> f64 {
    let ls = log_star_sums(x);
    let m = ls.iter().copied().fold(f64::INFINITY, f64::min);
    d + ls[host] - m
}

/// Gap at the center of a star: the decoration curve measured against the
/// horocyclic arc through its intersection with the `host` entry, read off
/// `steps` entries later. Zero for cusps and spikes.
pub fn gap_in_star(x: &[f64], host: usize, steps: usize, l: f64) -> f64 {
    if l == 0.0 {
        return 0.0;
    }
    let n = x.len();
    let ls = log_star_sums(x);
    let shears: f64 = (1..=steps).map(|j| x[(host + j) % n]).sum();
    shears + ls[(host + steps) % n] - ls[host]
}

/// `(a12 - a23 + a34 - a41 + t1 - t2 + t3 - t4) / 2`.
pub fn shear_from_quad(a: [f64; 4], t: [f64; 4]) -> f64 {
    0.5 * (a[0] - a[1] + a[2] - a[3] + t[0] - t[1] + t[2] - t[3])
}

/// A directed end of an edge: the side leaving `vertex` along `edge`, at
/// `position` in the star of `vertex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HalfEdge {
    pub edge: usize,
    pub vertex: usize,
    pub position: usize,
    pub side: SideId,
}

/// The two triangles around an interior edge `e`, labelled so that
/// `T = (v1, v2, v3)` and `T' = (v1, v3, v4)` with `e = v3 v1`.
/// `sides[k]` is the side leaving `v_{k+1}` along `e_{k+1, k+2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Quad {
    pub edge: usize,
    pub vertices: [usize; 4],
    pub edges: [usize; 4],
    pub sides: [SideId; 4],
}

/// Vertex stars of a surface, taken in the double when the surface has
/// boundary so that spikes get full cyclic stars.
#[derive(Clone, Debug)]
pub struct StarTable {
    complex: TriangulatedSurface,
    double: Option<DoubledSurface>,
    stars: Vec<Vec<StarEntry>>,
    position: Vec<Option<(usize, usize)>>,
    spike: Vec<bool>,
    original_vertices: usize,
}

impl StarTable {
    pub fn new(surface: &TriangulatedSurface) -> Result<Self> {
        let nv = surface.vertices().len();
        let (complex, double) = if surface.has_boundary() {
            let d = surface.double()?;
            (d.surface().clone(), Some(d))
        } else {
            (surface.clone(), None)
        };
        let mut stars = Vec::with_capacity(complex.vertices().len());
        let mut position = vec![None; complex.num_sides()];
        let mut spike = vec![false; complex.vertices().len()];
        for v in 0..complex.vertices().len() {
            let origin = double.as_ref().map_or(v, |d| d.vertex_origin(v));
            spike[v] = surface.vertices()[origin].kind == VertexKind::Spike;
            let star: Vec<StarEntry> = match &double {
                Some(d) => d.star(v),
                None => surface.vertex_star(v, false)?,
            };
            for (k, entry) in star.iter().enumerate() {
                position[entry.side] = Some((v, k));
            }
            stars.push(star);
        }
        Ok(Self { complex, double, stars, position, spike, original_vertices: nv })
    }

    /// The complex the stars live in: the double, or the surface itself.
    pub fn complex(&self) -> &TriangulatedSurface {
        &self.complex
    }

    pub fn double(&self) -> Option<&DoubledSurface> {
        self.double.as_ref()
    }

    pub fn star(&self, v: usize) -> &[StarEntry] {
        &self.stars[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.stars[v].len()
    }

    /// Whether a vertex of the complex comes from a spike.
    pub fn is_spike(&self, v: usize) -> bool {
        self.spike[v]
    }

    pub fn star_shears(&self, v: usize, shear: &[f64]) -> Vec<f64> {
        self.stars[v].iter().map(|s| s.sign.apply(shear[s.edge])).collect()
    }

    /// Shear of an edge of the complex.
    pub fn complex_shear(&self, e: usize, shear: &[f64]) -> f64 {
        match &self.double {
            Some(d) => {
                let (orig, sign) = d.edge_origin(e);
                sign.apply(shear[orig])
            }
            None => shear[e],
        }
    }

    /// Edge of the original surface behind an edge of the complex.
    pub fn original_edge(&self, e: usize) -> usize {
        match &self.double {
            Some(d) => d.edge_origin(e).0,
            None => e,
        }
    }

    pub fn position(&self, side: SideId) -> Option<(usize, usize)> {
        self.position[side]
    }

    pub fn half_edge(&self, side: SideId) -> Option<HalfEdge> {
        let (vertex, position) = self.position[side]?;
        if vertex >= self.original_vertices {
            return None;
        }
        Some(HalfEdge { edge: self.original_edge(self.complex.edge_of(side)), vertex, position, side })
    }

    /// Both ends of an edge of the original surface. Boundary edges use the
    /// side in the surface and the side in its mirror.
    pub fn half_edges(&self, e: usize) -> [HalfEdge; 2] {
        let sides = self.complex.sides_of_edge(e);
        let h = |s: SideId| self.half_edge(s).expect("original edge ends at original vertices");
        [h(sides[0]), h(sides[1])]
    }
}

/// Coordinate computations on a fixed triangulation.
#[derive(Clone, Debug)]
pub struct Coordinates {
    surface: TriangulatedSurface,
    table: StarTable,
}

impl Coordinates {
    pub fn new(surface: TriangulatedSurface) -> Result<Self> {
        let table = StarTable::new(&surface)?;
        Ok(Self { surface, table })
    }

    pub fn surface(&self) -> &TriangulatedSurface {
        &self.surface
    }

    pub fn table(&self) -> &StarTable {
        &self.table
    }

    fn check_shear(&self, shear: &[f64]) -> Result<()> {
        check_len("shear", self.surface.edges().len(), shear.len())
    }

    /// Signed boundary length of `v`; zero at spikes.
    pub fn boundary_length(&self, v: usize, shear: &[f64]) -> f64 {
        if self.surface.vertices()[v].kind == VertexKind::Spike {
            return 0.0;
        }
        boundary_length_from_star(&self.table.star_shears(v, shear))
    }

    pub fn decoration_kind(&self, v: usize, shear: &[f64]) -> DecorationKind {
        DecorationKind::of(self.surface.vertices()[v].kind, self.boundary_length(v, shear))
    }

    pub fn neighborhood_radii(&self, v: usize, shear: &[f64]) -> Vec<f64> {
        neighborhood_radii(&self.table.star_shears(v, shear), self.boundary_length(v, shear))
    }

    pub fn decoration_param(&self, v: usize, shear: &[f64], r_v: f64) -> Result<f64> {
        let l = self.boundary_length(v, shear);
        let r = DecorationCurveLength::new(r_v, l.abs())?;
        decoration_param(self.decoration_kind(v, shear), r, &self.neighborhood_radii(v, shear), l)
    }

    pub fn radius_from_decoration(&self, v: usize, shear: &[f64], d: f64) -> Result<f64> {
        let l = self.boundary_length(v, shear);
        radius_from_decoration(d, &self.neighborhood_radii(v, shear), l, self.decoration_kind(v, shear))
    }

    pub fn half_edge_lambda(&self, h: HalfEdge, p: &ShearDecorationPoint) -> f64 {
        let x = self.table.star_shears(h.vertex, &p.shear);
        half_edge_lambda_in_star(&x, h.position, p.decoration[h.vertex])
    }

    pub fn edge_lambda(&self, e: usize, p: &ShearDecorationPoint) -> f64 {
        let [h0, h1] = self.table.half_edges(e);
        p.shear[e] + self.half_edge_lambda(h0, p) + self.half_edge_lambda(h1, p)
    }

    pub fn psi_forward(&self, p: &ShearDecorationPoint) -> Result<LambdaBoundaryPoint> {
        self.check_shear(&p.shear)?;
        check_len("decoration", self.surface.vertices().len(), p.decoration.len())?;
        let lambda = (0..self.surface.edges().len()).map(|e| self.edge_lambda(e, p)).collect();
        let boundary_length =
            (0..self.surface.vertices().len()).map(|v| self.boundary_length(v, &p.shear)).collect();
        Ok(LambdaBoundaryPoint { lambda, boundary_length })
    }

    /// Limit of `psi_forward(t p) / t` as `t -> infinity`: the star sums are
    /// replaced by their max-plus counterparts.
    pub fn tropical_forward(&self, p: &ShearDecorationPoint) -> Result<LambdaBoundaryPoint> {
        self.check_shear(&p.shear)?;
        check_len("decoration", self.surface.vertices().len(), p.decoration.len())?;
        let half = |h: HalfEdge| {
            let ts = tropical_star_sums(&self.table.star_shears(h.vertex, &p.shear));
            let m = ts.iter().copied().fold(f64::INFINITY, f64::min);
            p.decoration[h.vertex] + ts[h.position] - m
        };
        let lambda = (0..self.surface.edges().len())
            .map(|e| {
                let [h0, h1] = self.table.half_edges(e);
                p.shear[e] + half(h0) + half(h1)
            })
            .collect();
        let boundary_length =
            (0..self.surface.vertices().len()).map(|v| self.boundary_length(v, &p.shear)).collect();
        Ok(LambdaBoundaryPoint { lambda, boundary_length })
    }

    /// Quad around an interior edge, with `T` the triangle of its first side.
    pub fn quad(&self, e: usize) -> Result<Quad> {
        let s = &self.surface;
        if s.edges()[e].kind != EdgeKind::Interior {
            return Err(Error::Domain(format!("edge `{}` is not interior", s.edges()[e].id)));
        }
        let sigma = s.sides_of_edge(e)[0];
        let tau = s.twin(sigma).expect("interior edge has a twin");
        let sides = [s.next(sigma), s.prev(sigma), s.next(tau), s.prev(tau)];
        Ok(Quad {
            edge: e,
            vertices: sides.map(|h| s.origin(h)),
            edges: sides.map(|h| s.edge_of(h)),
            sides,
        })
    }

    /// Gap `t_{k+1}` at the `k`-th corner (0-based) of the quad.
    pub fn gap(&self, quad: &Quad, k: usize, shear: &[f64]) -> f64 {
        let v = quad.vertices[k];
        let (_, host) = self.table.position(quad.sides[k]).expect("quad side is a star entry");
        let steps = if k.is_multiple_of(2) { 2 } else { 1 };
        let x = self.table.star_shears(v, shear);
        gap_in_star(&x, host, steps, self.boundary_length(v, shear))
    }

    /// Shear of an interior edge from lambda-lengths and gaps computed from
    /// the given shears.
    pub fn shear_from_lambda_and_gaps(&self, e: usize, lambda: &[f64], shear: &[f64]) -> Result<f64> {
        let q = self.quad(e)?;
        let t = [0, 1, 2, 3].map(|k| self.gap(&q, k, shear));
        Ok(shear_from_quad(q.edges.map(|f| lambda[f]), t))
    }

    /// Punctures of valence other than one violate the inverse map's
    /// hypothesis.
    pub fn check_special(&self) -> Result<()> {
        for v in self.surface.punctures() {
            let n = self.surface.valence(v);
            if n != 1 {
                return Err(Error::HypothesisViolation {
                    vertex: self.surface.vertices()[v].id.clone(),
                    valence: n,
                });
            }
        }
        Ok(())
    }

    /// Shear of an interior edge of a triangulation whose punctures are all
    /// 1-valent.
    pub fn shear_from_lambda_special(&self, q: &LambdaBoundaryPoint, e: usize) -> Result<f64> {
        self.shear_from_lambda_with_coefficients(q, e, [PUNCTURE_GAP_ODD, PUNCTURE_GAP_EVEN])
    }

    /// As [`Self::shear_from_lambda_special`] with the puncture gap
    /// coefficients at the first/third and second/fourth quad corners given.
    pub fn shear_from_lambda_with_coefficients(
        &self,
        q: &LambdaBoundaryPoint,
        e: usize,
        coefficients: [f64; 2],
    ) -> Result<f64> {
        self.check_special()?;
        let quad = self.quad(e)?;
        let t = [0, 1, 2, 3].map(|k| {
            let v = quad.vertices[k];
            match self.surface.vertices()[v].kind {
                VertexKind::Spike => 0.0,
                VertexKind::Puncture => {
                    let c = coefficients[k % 2];
                    c * q.boundary_length[v]
                }
            }
        });
        Ok(shear_from_quad(quad.edges.map(|f| q.lambda[f]), t))
    }

    /// Decoration of `v` read from the triangle of the star entry at
    /// `position`, eliminating the other two decorations with gaps.
    pub fn decoration_from_shear_lambda_at(
        &self,
        v: usize,
        position: usize,
        shear: &[f64],
        lambda: &[f64],
    ) -> f64 {
        let w = &self.table.complex;
        let star = self.table.star(v);
        let n = star.len();
        let s12 = star[position].side;
        let s23 = w.next(s12);
        let s31 = w.prev(s12);
        let (v2, v3) = (w.origin(s23), w.origin(s31));
        let a = |s: SideId| lambda[self.table.original_edge(w.edge_of(s))];
        let x = self.table.star_shears(v, shear);
        let ls = log_star_sums(&x);
        let m = ls.iter().copied().fold(f64::INFINITY, f64::min);
        let l_of = |u: usize| boundary_length_from_star(&self.table.star_shears(u, shear));
        let gap_at = |u: usize, side: SideId| {
            if self.table.is_spike(u) {
                return 0.0;
            }
            let (_, host) = self.table.position(side).expect("side is a star entry");
            gap_in_star(&self.table.star_shears(u, shear), host, 1, l_of(u))
        };
        let t2 = gap_at(v2, s23);
        let t3 = gap_at(v3, s31);
        let x31 = self.table.complex_shear(w.edge_of(s31), shear);
        let log_term = ls[position] + ls[(position + 1) % n] - 2.0 * m;
        0.5 * (a(s12) - a(s23) + a(s31) - t2 + t3 - x31 - log_term)
    }

    pub fn decoration_from_shear_lambda(&self, v: usize, shear: &[f64], lambda: &[f64]) -> f64 {
        self.decoration_from_shear_lambda_at(v, 0, shear, lambda)
    }

    /// Same quantity by solving the three edge equations of the triangle
    /// directly for `d_v`.
    pub fn decoration_by_elimination(
        &self,
        v: usize,
        position: usize,
        shear: &[f64],
        lambda: &[f64],
    ) -> f64 {
        let w = &self.table.complex;
        let s12 = self.table.star(v)[position].side;
        let sides = [s12, w.next(s12), w.prev(s12)];
        let reduced = sides.map(|s| {
            let e = w.edge_of(s);
            let mut r = lambda[self.table.original_edge(e)] - self.table.complex_shear(e, shear);
            for &side in w.sides_of_edge(e) {
                let (u, k) = self.table.position(side).expect("star entry");
                let x = self.table.star_shears(u, shear);
                r -= half_edge_lambda_in_star(&x, k, 0.0);
            }
            r
        });
        0.5 * (reduced[0] - reduced[1] + reduced[2])
    }

    pub fn psi_inverse(&self, q: &LambdaBoundaryPoint) -> Result<ShearDecorationPoint> {
        check_len("lambda", self.surface.edges().len(), q.lambda.len())?;
        check_len("boundary_length", self.surface.vertices().len(), q.boundary_length.len())?;
        self.check_special()?;
        let mut shear = vec![0.0; self.surface.edges().len()];
        for e in self.surface.interior_edges() {
            shear[e] = self.shear_from_lambda_special(q, e)?;
        }
        let decoration = (0..self.surface.vertices().len())
            .map(|v| self.decoration_from_shear_lambda(v, &shear, &q.lambda))
            .collect();
        Ok(ShearDecorationPoint { shear, decoration })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn symmetric_cusp_radii() {
        let r = neighborhood_radii(&[0.0; 3], 0.0);
        for v in r {
            assert_abs_diff_eq!(v, 3.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn two_valent_cusp_radii() {
        let r = neighborhood_radii(&[0.5, -0.5], 0.0);
        assert_abs_diff_eq!(r[0], 1.0 + (-0.5f64).exp(), epsilon = 1e-14);
        assert_abs_diff_eq!(r[1], 1.0 + 0.5f64.exp(), epsilon = 1e-14);
    }

    #[test]
    fn geodesic_radii_approach_cusp() {
        for t in [0.3, -1.2, 2.0] {
            let cusp = neighborhood_radii(&[t, -t], 0.0);
            let l = 1e-6;
            let geo = neighborhood_radii(&[t + l / 2.0, -t + l / 2.0], l);
            for (a, b) in cusp.iter().zip(&geo) {
                assert!((a - b).abs() < 1e-5, "{a} {b}");
            }
            let geo = neighborhood_radii(&[t, -t], 1e-6);
            for (a, b) in cusp.iter().zip(&geo) {
                assert!((a - b).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn decoration_examples() {
        let radii = [3.0, 3.0, 3.0];
        let d = |r| {
            decoration_param(DecorationKind::Cusp, DecorationCurveLength::new(r, 0.0).unwrap(), &radii, 0.0)
                .unwrap()
        };
        assert_abs_diff_eq!(d(3.0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d(3.0 * std::f64::consts::E), -1.0, epsilon = 1e-15);

        let radii = [2f64.sqrt(), 3.0];
        let r = DecorationCurveLength::new(5f64.sqrt(), 1.0).unwrap();
        let d = decoration_param(DecorationKind::Geodesic, r, &radii, 1.0).unwrap();
        assert_abs_diff_eq!(d, -(2f64.ln()), epsilon = 1e-15);
        let back = radius_from_decoration(d, &radii, 1.0, DecorationKind::Geodesic).unwrap();
        assert_abs_diff_eq!(back, 5f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn decoration_domain_errors() {
        assert!(DecorationCurveLength::new(1.0, 1.0).is_err());
        let r = DecorationCurveLength { r: 0.5, lower_bound: 0.0 };
        assert!(decoration_param(DecorationKind::Geodesic, r, &[2.0], 1.0).is_err());
    }

    #[test]
    fn endpoint_examples() {
        let u = endpoint_positions(&[0.3, 0.0], 0.0, 1.0).unwrap();
        assert_abs_diff_eq!(u[1], 0.5, epsilon = 1e-15);

        let u = endpoint_positions(&[7.0, 2f64.ln(), 3f64.ln()], 0.0, 9.0).unwrap();
        for (a, b) in u.iter().zip([0.0, 1.0, 3.0, 9.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(((u[2] - u[1]) / (u[1] - u[0])).ln(), 2f64.ln(), epsilon = 1e-12);

        let l = 2f64.ln();
        let u = endpoint_positions(&[l], 1.0, l.exp()).unwrap();
        assert_eq!(u, vec![1.0, 2.0]);

        assert!(matches!(endpoint_positions(&[1.0], 1.0, 1.0), Err(Error::DegenerateNormalization)));
    }

    #[test]
    fn half_edge_examples() {
        assert_abs_diff_eq!(half_edge_lambda_in_star(&[0.0; 4], 2, 0.7), 0.7, epsilon = 1e-15);
        let (x1, x2): (f64, f64) = (0.4, -1.3);
        let expected = ((1.0 + x2.exp()) / (1.0 + x2.exp()).min(1.0 + x1.exp())).ln();
        assert_abs_diff_eq!(half_edge_lambda_in_star(&[x1, x2], 0, 0.0), expected, epsilon = 1e-14);
    }

    #[test]
    fn gap_examples() {
        assert_eq!(gap_in_star(&[0.4, -0.4], 0, 1, 0.0), 0.0);
        assert_abs_diff_eq!(gap_in_star(&[0.3; 5], 2, 1, 1.5), 0.3, epsilon = 1e-14);
        assert_abs_diff_eq!(gap_in_star(&[0.8], 0, 1, 0.8), 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(gap_in_star(&[0.8], 0, 2, 0.8), 1.6, epsilon = 1e-15);
    }

    #[test]
    fn quad_arithmetic() {
        assert_abs_diff_eq!(shear_from_quad([1.0, 2.0, 3.0, 4.0], [0.0; 4]), -1.0);
        assert_eq!(shear_from_quad([2.5; 4], [0.0; 4]), 0.0);
    }

    #[test]
    fn log_sums_are_stable() {
        let ls = log_star_sums(&[800.0, -800.0]);
        assert!(ls.iter().all(|v| v.is_finite()));
    }
}
