//! Upper half-plane ground truth.
//!
//! Stars are developed with their center at infinity, decoration curves are
//! lifted as horizontal lines (horocycles) or rays from `0` (equidistant
//! curves), and lengths are measured with the hyperbolic distance formula.
//! Nothing here calls the closed forms of [`crate::coordinates`] except for
//! the definition of the decoration parameter itself.

use num_complex::Complex64;
use serde::Serialize;

use crate::coordinates::{
    decoration_param, radius_from_decoration, Coordinates, DecorationCurveLength,
    DecorationKind, LambdaBoundaryPoint, ShearDecorationPoint,
};
use crate::error::{Error, Result};
use crate::surface::VertexKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CenterKind {
    Cusp,
    Spike,
    Geodesic,
}

impl From<DecorationKind> for CenterKind {
    fn from(k: DecorationKind) -> Self {
        match k {
            DecorationKind::Cusp => CenterKind::Cusp,
            DecorationKind::Spike => CenterKind::Spike,
            DecorationKind::Geodesic => CenterKind::Geodesic,
        }
    }
}

impl From<CenterKind> for DecorationKind {
    fn from(k: CenterKind) -> Self {
        match k {
            CenterKind::Cusp => DecorationKind::Cusp,
            CenterKind::Spike => DecorationKind::Spike,
            CenterKind::Geodesic => DecorationKind::Geodesic,
        }
    }
}

pub fn hyperbolic_distance(z: Complex64, w: Complex64) -> f64 {
    2.0 * ((z - w).norm() / (2.0 * (z.im * w.im).sqrt())).asinh()
}

/// Apply a real Möbius transformation `[[a, b], [c, d]]`.
pub fn mobius(m: [[f64; 2]; 2], z: Complex64) -> Complex64 {
    (z * m[0][0] + m[0][1]) / (z * m[1][0] + m[1][1])
}

/// Foot of the perpendicular from the ideal point `c` onto the geodesic with
/// ideal endpoints `p` and `q`. `None` stands for infinity.
pub fn foot_of_perpendicular(p: f64, q: Option<f64>, c: Option<f64>) -> Result<Complex64> {
    match (q, c) {
        (None, Some(c)) => Ok(Complex64::new(p, (c - p).abs())),
        (Some(q), None) => Ok(Complex64::new(0.5 * (p + q), 0.5 * (q - p).abs())),
        (Some(q), Some(c)) => {
            // send p -> 0, q -> infinity, take the apex there and map back
            let m = [[1.0, -p], [-1.0, q]];
            let inv = [[q, p], [1.0, 1.0]];
            let cc = mobius(m, Complex64::new(c, 0.0)).re;
            Ok(mobius(inv, Complex64::new(0.0, cc.abs())))
        }
        (None, None) => Err(Error::Domain("geodesic and vertex share the point at infinity".into())),
    }
}

/// A vertex star developed with its center at infinity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DevelopedStar {
    pub center_kind: CenterKind,
    pub boundary_length: f64,
    pub shears: Vec<f64>,
    /// `u_0 ..= u_{n+1}`.
    endpoints: Vec<f64>,
    /// Determinant-one matrix taking `g_1` to `g_{n+1}`.
    pub holonomy: [[f64; 2]; 2],
}

/// Develop a star from its shears `x_1 .. x_n` (the first entry is `e_1`).
///
/// Cusps and spikes are normalized to `u_1 = 0, u_{n+1} = 1`; closed geodesic
/// boundaries to `u_1 = eps, u_{n+1} = eps e^l` with `eps` the sign of `l`.
pub fn develop_star(shears: &[f64], kind: CenterKind, l: f64) -> Result<DevelopedStar> {
    let n = shears.len();
    if n == 0 {
        return Err(Error::Dimension { what: "star", expected: 1, got: 0 });
    }
    let sum: f64 = shears.iter().sum();
    let scale = shears.iter().map(|x| x.abs()).sum::<f64>().max(1.0);
    let expected = if kind == CenterKind::Geodesic { l } else { 0.0 };
    if kind == CenterKind::Geodesic && l == 0.0 {
        return Err(Error::Domain("a closed geodesic boundary has nonzero length".into()));
    }
    if (sum - expected).abs() > 1e-12 * scale {
        return Err(Error::InconsistentBoundaryLength { sum, given: expected });
    }

    // raw development from the recurrence x_k = log((u_{k+1}-u_k)/(u_k-u_{k-1}))
    let mut incr = vec![0.0; n + 1];
    incr[1] = 1.0;
    for k in 2..=n {
        incr[k] = incr[k - 1] * shears[k - 1].exp();
    }
    incr[0] = incr[1] * (-shears[0]).exp();
    let mut raw = vec![0.0; n + 2];
    raw[0] = -incr[0];
    for k in 1..=n {
        raw[k + 1] = raw[k] + incr[k];
    }

    let (u1, un1) = match kind {
        CenterKind::Geodesic => {
            let eps = l.signum();
            (eps, eps * l.exp())
        }
        _ => (0.0, 1.0),
    };
    let s = (un1 - u1) / (raw[n + 1] - raw[1]);
    let endpoints: Vec<f64> = raw.iter().map(|w| u1 + s * (w - raw[1])).collect();

    let holonomy = match kind {
        CenterKind::Geodesic => [[(0.5 * l).exp(), 0.0], [0.0, (-0.5 * l).exp()]],
        _ => [[1.0, 1.0], [0.0, 1.0]],
    };
    Ok(DevelopedStar { center_kind: kind, boundary_length: expected, shears: shears.to_vec(), endpoints, holonomy })
}

impl DevelopedStar {
    pub fn valence(&self) -> usize {
        self.shears.len()
    }

    /// `u_k`; indices past `n + 1` are reached through the holonomy.
    pub fn u(&self, k: usize) -> f64 {
        match self.endpoints.get(k) {
            Some(&u) => u,
            None => self.apply_holonomy(Complex64::new(self.u(k - self.valence()), 0.0)).re,
        }
    }

    /// `u_1 ..= u_{n+1}`.
    pub fn endpoints(&self) -> &[f64] {
        &self.endpoints[1..]
    }

    pub fn apply_holonomy(&self, z: Complex64) -> Complex64 {
        mobius(self.holonomy, z)
    }

    pub fn holonomy_trace(&self) -> f64 {
        self.holonomy[0][0] + self.holonomy[1][1]
    }

    /// Largest of `|f(u_0) - u_n|` and `|f(u_1) - u_{n+1}|`.
    pub fn holonomy_residual(&self) -> f64 {
        let n = self.valence();
        let f = |k: usize| self.apply_holonomy(Complex64::new(self.u(k), 0.0)).re;
        (f(0) - self.u(n)).abs().max((f(1) - self.u(n + 1)).abs())
    }

    /// Shears read back from the developed endpoints.
    pub fn recovered_shears(&self) -> Vec<f64> {
        (1..=self.valence())
            .map(|k| ((self.u(k + 1) - self.u(k)) / (self.u(k) - self.u(k - 1))).ln())
            .collect()
    }

    /// Base point of `g_k = (u_k, inf)` with respect to the triangle
    /// `(u_k, u_{k+1}, inf)`, for `1 <= k <= n`.
    pub fn base_point(&self, k: usize) -> Complex64 {
        foot_of_perpendicular(self.u(k), None, Some(self.u(k + 1))).expect("finite vertex")
    }

    /// Boundary length read off the holonomy.
    pub fn measured_boundary_length(&self) -> f64 {
        let n = self.valence();
        ((self.u(n + 1) - self.u(n)) / (self.u(1) - self.u(0))).ln()
    }

    /// Length of the neighborhood boundary through the `k`-th base point.
    pub fn neighborhood_radius(&self, k: usize) -> f64 {
        let b = self.base_point(k);
        match self.center_kind {
            CenterKind::Geodesic => self.boundary_length.abs() * b.norm() / b.im,
            _ => (self.u(self.valence() + 1) - self.u(1)) / b.im,
        }
    }

    pub fn neighborhood_radii(&self) -> Vec<f64> {
        (1..=self.valence()).map(|k| self.neighborhood_radius(k)).collect()
    }
}

/// Lift of a decoration curve into the frame of a developed star.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecorationCurveLift {
    /// Horizontal line at `height`, with `r = 1 / height`.
    Horocycle { r: f64, height: f64 },
    /// Horizontal line at `height` in the frame where the spike's two
    /// boundary geodesics end at `0` and `1`, with `r = 2 / height`.
    HorocyclicArc { r: f64, height: f64 },
    /// Ray from `0` making angle `theta` with the boundary lift (the
    /// imaginary axis), at distance `w` from it; `r = |l| / cos(theta)`.
    Equidistant { r: f64, l: f64, theta: f64, w: f64 },
}

pub fn decoration_curve_lift(kind: CenterKind, l: f64, r: f64) -> Result<DecorationCurveLift> {
    match kind {
        CenterKind::Cusp | CenterKind::Spike => {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::Domain(format!("decoration length {r} is not positive")));
            }
            Ok(if kind == CenterKind::Cusp {
                DecorationCurveLift::Horocycle { r, height: 1.0 / r }
            } else {
                DecorationCurveLift::HorocyclicArc { r, height: 2.0 / r }
            })
        }
        CenterKind::Geodesic => {
            if !(r > l.abs() && r.is_finite()) || l == 0.0 {
                return Err(Error::Domain(format!(
                    "decoration length {r} must exceed the boundary length {}",
                    l.abs()
                )));
            }
            let theta = (l.abs() / r).acos();
            let w = ((1.0 + theta.sin()) / theta.cos()).ln();
            Ok(DecorationCurveLift::Equidistant { r, l, theta, w })
        }
    }
}

impl DecorationCurveLift {
    pub fn length(&self) -> f64 {
        match *self {
            DecorationCurveLift::Horocycle { r, .. }
            | DecorationCurveLift::HorocyclicArc { r, .. }
            | DecorationCurveLift::Equidistant { r, .. } => r,
        }
    }

    /// Height of the lift above the real point `u`, in the frame of a
    /// developed star (period one for cusps, and for spikes in the double).
    pub fn height_at(&self, u: f64) -> f64 {
        match *self {
            DecorationCurveLift::Horocycle { height, .. } => height,
            DecorationCurveLift::HorocyclicArc { height, .. } => 0.5 * height,
            DecorationCurveLift::Equidistant { theta, .. } => u.abs() / theta.tan(),
        }
    }

    pub fn point_over(&self, u: f64) -> Complex64 {
        Complex64::new(u, self.height_at(u))
    }
}

/// Hyperbolic length of the equidistant arc over one period, by composite
/// Simpson quadrature of the curve `(1 + (e^|l| - 1) t) e^{i(pi/2 - theta)}`.
pub fn equidistant_length_by_quadrature(l: f64, theta: f64, intervals: usize) -> f64 {
    let l = l.abs();
    let m = intervals + intervals % 2;
    let phi = std::f64::consts::FRAC_PI_2 - theta;
    let speed = l.exp_m1();
    let f = |t: f64| {
        let rho = 1.0 + speed * t;
        speed / (rho * phi.sin())
    };
    let h = 1.0 / m as f64;
    let mut s = f(0.0) + f(1.0);
    for i in 1..m {
        s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

fn signed_vertical_distance(from: Complex64, to: Complex64) -> f64 {
    let d = hyperbolic_distance(from, to);
    if to.im >= from.im {
        d
    } else {
        -d
    }
}

/// Signed distance along `g_k` from the base point to the decoration curve,
/// positive when the curve lies above (towards the center).
pub fn measure_half_edge_lambda(star: &DevelopedStar, lift: &DecorationCurveLift, k: usize) -> f64 {
    let u = star.u(k);
    signed_vertical_distance(star.base_point(k), lift.point_over(u))
}

/// Gap at the center of `star`: along `g_{1+steps}`, from the horocyclic arc
/// through the decoration point on `g_1` to the decoration curve.
pub fn measure_gap(star: &DevelopedStar, lift: &DecorationCurveLift, steps: usize) -> f64 {
    let y = lift.height_at(star.u(1));
    let u = star.u(1 + steps);
    signed_vertical_distance(Complex64::new(u, y), lift.point_over(u))
}

/// Distance from the decoration curve at `d_v = 0` to the star base point
/// that is highest relative to the neighborhood family.
pub fn origin_deviation(star: &DevelopedStar, lift: &DecorationCurveLift) -> f64 {
    let radii = star.neighborhood_radii();
    let k = (0..radii.len())
        .min_by(|&a, &b| radii[a].total_cmp(&radii[b]))
        .map(|i| i + 1)
        .unwrap_or(1);
    let b = star.base_point(k);
    hyperbolic_distance(b, lift.point_over(b.re))
}

/// Develop the star of `v` starting at entry `host`.
pub fn develop_vertex(coords: &Coordinates, v: usize, shear: &[f64], host: usize) -> Result<DevelopedStar> {
    let mut x = coords.table().star_shears(v, shear);
    x.rotate_left(host);
    let l = x.iter().sum::<f64>();
    let kind = match coords.surface().vertices()[v].kind {
        VertexKind::Spike => CenterKind::Spike,
        VertexKind::Puncture if l == 0.0 => CenterKind::Cusp,
        VertexKind::Puncture => CenterKind::Geodesic,
    };
    let l = if kind == CenterKind::Geodesic { l } else { 0.0 };
    develop_star(&x, kind, l)
}

/// Decoration curve of `v` determined by `d_v`, with the minimal radius
/// taken from the developed star.
pub fn vertex_lift(star: &DevelopedStar, d: f64) -> Result<DecorationCurveLift> {
    let radii = star.neighborhood_radii();
    let kind = DecorationKind::from(star.center_kind);
    let r = radius_from_decoration(d, &radii, star.boundary_length, kind)?;
    decoration_curve_lift(star.center_kind, star.boundary_length, r)
}

/// Lambda-length of an edge measured between the two decoration curves,
/// gluing the developments of its two end stars by a Möbius map.
pub fn measure_edge_lambda(coords: &Coordinates, e: usize, p: &ShearDecorationPoint) -> Result<f64> {
    let [h, k] = coords.table().half_edges(e);
    let sv = develop_vertex(coords, h.vertex, &p.shear, h.position)?;
    let sw = develop_vertex(coords, k.vertex, &p.shear, k.position)?;
    let lv = vertex_lift(&sv, p.decoration[h.vertex])?;
    let lw = vertex_lift(&sw, p.decoration[k.vertex])?;

    // v-frame: e = (u1, inf), third vertex of the triangle of h at u2.
    // w-frame: e = (u1', inf), the same third vertex at u0'.
    let (a, a2) = (sv.u(1), sv.u(2));
    let (b, b0) = (sw.u(1), sw.u(0));
    let c = (a2 - a) * (b0 - b);
    let m = [[a, c - a * b], [1.0, -b]];
    let pv = lv.point_over(a);
    let pw = mobius(m, lw.point_over(b));
    if (pw.re - a).abs() > 1e-9 * (1.0 + a.abs()) {
        return Err(Error::Domain("glued edge lifts do not coincide".into()));
    }
    Ok(signed_vertical_distance(pw, pv))
}

/// Forward map assembled from measurements.
pub fn measure_forward(coords: &Coordinates, p: &ShearDecorationPoint) -> Result<LambdaBoundaryPoint> {
    let s = coords.surface();
    let lambda = (0..s.edges().len())
        .map(|e| measure_edge_lambda(coords, e, p))
        .collect::<Result<Vec<_>>>()?;
    let boundary_length = (0..s.vertices().len())
        .map(|v| {
            if s.vertices()[v].kind == VertexKind::Spike {
                return Ok(0.0);
            }
            let star = develop_vertex(coords, v, &p.shear, 0)?;
            Ok(if star.center_kind == CenterKind::Cusp { 0.0 } else { star.measured_boundary_length() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LambdaBoundaryPoint { lambda, boundary_length })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DerivativeCheck {
    pub name: String,
    pub numeric: f64,
    pub expected: f64,
    pub abs_error: f64,
    pub rel_error: f64,
}

impl DerivativeCheck {
    fn new(name: String, numeric: f64, expected: f64) -> Self {
        let abs_error = (numeric - expected).abs();
        let rel_error = abs_error / expected.abs().max(1e-300);
        Self { name, numeric, expected, abs_error, rel_error }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiniteDifferenceReport {
    pub step: f64,
    /// `d a_h / d d_v` at the end vertex, measured geometrically.
    pub lambda_by_own_decoration: Vec<DerivativeCheck>,
    /// `d a_h / d d_u` for vertices `u` away from the half-edge.
    pub lambda_by_other_decoration: Vec<DerivativeCheck>,
    /// `d d_v / d r_v` against the Jacobian entries.
    pub decoration_by_radius: Vec<DerivativeCheck>,
    /// `d x_e / d r_v`, with `x_e` recovered from the lambda-lengths.
    pub shear_by_radius: Vec<DerivativeCheck>,
}

impl FiniteDifferenceReport {
    pub fn max_abs(checks: &[DerivativeCheck]) -> f64 {
        checks.iter().map(|c| c.abs_error).fold(0.0, f64::max)
    }

    pub fn max_rel(checks: &[DerivativeCheck]) -> f64 {
        checks.iter().map(|c| c.rel_error).fold(0.0, f64::max)
    }
}

fn measure_half_edge(coords: &Coordinates, side_vertex: usize, position: usize, p: &ShearDecorationPoint) -> Result<f64> {
    let star = develop_vertex(coords, side_vertex, &p.shear, position)?;
    let lift = vertex_lift(&star, p.decoration[side_vertex])?;
    Ok(measure_half_edge_lambda(&star, &lift, 1))
}

pub fn finite_difference_report(
    coords: &Coordinates,
    p: &ShearDecorationPoint,
    step: f64,
) -> Result<FiniteDifferenceReport> {
    let s = coords.surface();
    let nv = s.vertices().len();
    let mut own = Vec::new();
    let mut other = Vec::new();
    for e in 0..s.edges().len() {
        for h in coords.table().half_edges(e) {
            for u in 0..nv {
                let mut plus = p.clone();
                let mut minus = p.clone();
                plus.decoration[u] += step;
                minus.decoration[u] -= step;
                let fd = (measure_half_edge(coords, h.vertex, h.position, &plus)?
                    - measure_half_edge(coords, h.vertex, h.position, &minus)?)
                    / (2.0 * step);
                let name = format!("a[{}@{}]/d[{}]", s.edges()[e].id, s.vertices()[h.vertex].id, s.vertices()[u].id);
                if u == h.vertex {
                    own.push(DerivativeCheck::new(name, fd, 1.0));
                } else {
                    other.push(DerivativeCheck::new(name, fd, 0.0));
                }
            }
        }
    }

    let mut deco = Vec::new();
    let mut cross = Vec::new();
    for v in 0..nv {
        let l = coords.boundary_length(v, &p.shear);
        let kind = coords.decoration_kind(v, &p.shear);
        let radii = coords.neighborhood_radii(v, &p.shear);
        let r = radius_from_decoration(p.decoration[v], &radii, l, kind)?;
        let h = step * r;
        let d_at = |rr: f64| -> Result<f64> {
            decoration_param(kind, DecorationCurveLength::new(rr, l.abs())?, &radii, l)
        };
        let fd = (d_at(r + h)? - d_at(r - h)?) / (2.0 * h);
        let expected = crate::coordinates::decoration_derivative(kind, r, l);
        deco.push(DerivativeCheck::new(format!("d[{}]/r", s.vertices()[v].id), fd, expected));

        let mut plus = p.clone();
        let mut minus = p.clone();
        plus.decoration[v] = d_at(r + h)?;
        minus.decoration[v] = d_at(r - h)?;
        let qp = coords.psi_forward(&plus)?;
        let qm = coords.psi_forward(&minus)?;
        for e in s.interior_edges() {
            let xp = coords.shear_from_lambda_and_gaps(e, &qp.lambda, &plus.shear)?;
            let xm = coords.shear_from_lambda_and_gaps(e, &qm.lambda, &minus.shear)?;
            cross.push(DerivativeCheck::new(
                format!("x[{}]/r[{}]", s.edges()[e].id, s.vertices()[v].id),
                (xp - xm) / (2.0 * h),
                0.0,
            ));
        }
    }
    Ok(FiniteDifferenceReport {
        step,
        lambda_by_own_decoration: own,
        lambda_by_other_decoration: other,
        decoration_by_radius: deco,
        shear_by_radius: cross,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitRow {
    pub l: f64,
    pub slope: f64,
    pub intercept: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitReport {
    pub r: f64,
    pub rows: Vec<LimitRow>,
    pub monotone: bool,
}

/// Lines `y = (l x + 1) / sqrt(r^2 - l^2)` against the horocycle `y = 1/r`.
pub fn equidistant_limit_check(r: f64, ls: &[f64]) -> Result<LimitReport> {
    let mut rows = Vec::with_capacity(ls.len());
    for &l in ls {
        if !(l >= 0.0 && r > l) {
            return Err(Error::Domain(format!("need r > l >= 0, got r = {r}, l = {l}")));
        }
        let root = (r * r - l * l).sqrt();
        let slope = l / root;
        let intercept = 1.0 / root;
        let deviation = slope.abs().max((intercept - 1.0 / r).abs());
        rows.push(LimitRow { l, slope, intercept, deviation });
    }
    let monotone = rows.windows(2).all(|w| w[1].deviation < w[0].deviation);
    Ok(LimitReport { r, rows, monotone })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn two_valent_cusp_development() {
        let t: f64 = 0.7;
        let s = develop_star(&[t, -t], CenterKind::Cusp, 0.0).unwrap();
        let u = s.endpoints();
        assert_abs_diff_eq!(u[0], 0.0);
        assert_abs_diff_eq!(u[1], 1.0 / (1.0 + (-t).exp()), epsilon = 1e-15);
        assert_abs_diff_eq!(u[2], 1.0);
        assert_eq!(s.holonomy, [[1.0, 1.0], [0.0, 1.0]]);
        assert!(s.holonomy_residual() < 1e-14);
    }

    #[test]
    fn one_valent_geodesic_development() {
        let l: f64 = 0.9;
        let s = develop_star(&[l], CenterKind::Geodesic, l).unwrap();
        assert_eq!(s.endpoints(), &[1.0, l.exp()]);
        let z = s.apply_holonomy(Complex64::new(1.3, 0.2));
        assert_abs_diff_eq!(z.re, 1.3 * l.exp(), epsilon = 1e-14);
        assert!(s.holonomy_trace() > 2.0);
    }

    #[test]
    fn inconsistent_length_is_rejected() {
        let err = develop_star(&[0.5, 0.1], CenterKind::Geodesic, 0.2).unwrap_err();
        assert!(matches!(err, Error::InconsistentBoundaryLength { .. }));
    }

    #[test]
    fn lift_examples() {
        match decoration_curve_lift(CenterKind::Cusp, 0.0, 2.0).unwrap() {
            DecorationCurveLift::Horocycle { height, .. } => assert_eq!(height, 0.5),
            other => panic!("{other:?}"),
        }
        match decoration_curve_lift(CenterKind::Spike, 0.0, 2.0).unwrap() {
            DecorationCurveLift::HorocyclicArc { height, .. } => assert_eq!(height, 1.0),
            other => panic!("{other:?}"),
        }
        let theta = std::f64::consts::FRAC_PI_3;
        match decoration_curve_lift(CenterKind::Geodesic, 1.0, 1.0 / theta.cos()).unwrap() {
            DecorationCurveLift::Equidistant { r, theta: th, w, l } => {
                assert_abs_diff_eq!(r, 2.0, epsilon = 1e-12);
                assert_abs_diff_eq!(th, theta, epsilon = 1e-12);
                let expected_w = ((1.0 + 0.75f64.sqrt()) / 0.5).ln();
                assert_abs_diff_eq!(w, expected_w, epsilon = 1e-12);
                assert_abs_diff_eq!(r, l * w.cosh(), epsilon = 1e-12);
            }
            other => panic!("{other:?}"),
        }
        assert!(decoration_curve_lift(CenterKind::Geodesic, 1.0, 1.0).is_err());
    }

    #[test]
    fn equidistant_length_quadrature() {
        let (l, theta) = (0.8, 0.6);
        let q = equidistant_length_by_quadrature(l, theta, 2000);
        assert_abs_diff_eq!(q, l / theta.cos(), epsilon = 1e-10);
    }

    #[test]
    fn foot_constructions() {
        let f = foot_of_perpendicular(-1.0, Some(1.0), None).unwrap();
        assert_abs_diff_eq!(f.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(f.im, 1.0, epsilon = 1e-15);

        // the geodesic from c through the foot meets the semicircle over
        // (0, 2) orthogonally
        let c = -2.0;
        let f = foot_of_perpendicular(0.0, Some(2.0), Some(c)).unwrap();
        assert_abs_diff_eq!((f - Complex64::new(1.0, 0.0)).norm(), 1.0, epsilon = 1e-12);
        let x0 = (f.norm_sqr() - c * c) / (2.0 * (f.re - c));
        assert_abs_diff_eq!((x0 - 1.0).powi(2), 1.0 + (c - x0).powi(2), epsilon = 1e-12);
    }

    #[test]
    fn equidistant_limit_examples() {
        let rep = equidistant_limit_check(1.0, &[0.1, 0.01, 0.001]).unwrap();
        assert!(rep.monotone);
        assert!(rep.rows[2].deviation <= 2e-3);
        let rep = equidistant_limit_check(1.0, &[0.0]).unwrap();
        assert_eq!(rep.rows[0].deviation, 0.0);
        assert!(equidistant_limit_check(1.0, &[1.0]).is_err());
    }
}
