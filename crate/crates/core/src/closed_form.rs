//! Closed-form conversions on the three-punctured sphere and the once
//! punctured bigon with the labels of [`crate::fixtures`].

use serde::{Deserialize, Serialize};

use crate::coordinates::{LambdaBoundaryPoint, ShearDecorationPoint};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::surface::TriangulatedSurface;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosedFormSurface {
    ThreePuncturedSphere,
    OncePuncturedBigon,
}

impl ClosedFormSurface {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            fixtures::THREE_PUNCTURED_SPHERE => Ok(Self::ThreePuncturedSphere),
            fixtures::ONCE_PUNCTURED_BIGON => Ok(Self::OncePuncturedBigon),
            other => Err(Error::UnknownExample(other.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::ThreePuncturedSphere => fixtures::THREE_PUNCTURED_SPHERE,
            Self::OncePuncturedBigon => fixtures::ONCE_PUNCTURED_BIGON,
        }
    }

    pub fn surface(self) -> TriangulatedSurface {
        match self {
            Self::ThreePuncturedSphere => fixtures::three_punctured_sphere(),
            Self::OncePuncturedBigon => fixtures::once_punctured_bigon(),
        }
    }
}

struct Labels<'a>(&'a TriangulatedSurface);

impl Labels<'_> {
    fn v(&self, id: &str) -> Result<usize> {
        self.0.vertex_index(id).ok_or_else(|| Error::UnknownId { kind: "vertex", id: id.into() })
    }

    fn e(&self, id: &str) -> Result<usize> {
        self.0.edge_index(id).ok_or_else(|| Error::UnknownId { kind: "edge", id: id.into() })
    }
}

fn edge_name(i: usize, j: usize) -> String {
    format!("e{}{}", i.min(j), i.max(j))
}

/// `x_ij = (l_i + l_j - l_k) / 2` on the three-punctured sphere.
pub fn sphere_shears(l: [f64; 3]) -> [f64; 3] {
    [
        0.5 * (l[0] + l[1] - l[2]),
        0.5 * (l[0] + l[2] - l[1]),
        0.5 * (l[1] + l[2] - l[0]),
    ]
}

/// Decoration of `v_i` on the three-punctured sphere from the lambda-lengths
/// `a_ij, a_ik, a_jk` and the boundary lengths `l_i, l_j, l_k`.
pub fn sphere_decoration(a_ij: f64, a_ik: f64, a_jk: f64, l_i: f64, l_j: f64, l_k: f64) -> f64 {
    let x_ij = 0.5 * (l_i + l_j - l_k);
    let x_ik = 0.5 * (l_i + l_k - l_j);
    0.5 * (a_ij + a_ik - a_jk - l_i) - (2.0 * (0.25 * (l_i - l_j - l_k)).cosh()).ln()
        + (1.0 + x_ij.exp().min(x_ik.exp())).ln()
}

/// `x_1i = (l_1 + a_ij - a_ji) / 2` on the bigon, returned as `(x12, x13)`.
pub fn bigon_shears(l1: f64, a23: f64, a32: f64) -> (f64, f64) {
    (0.5 * (l1 + a23 - a32), 0.5 * (l1 + a32 - a23))
}

/// Closed-form inverse. On the bigon only the shears are given in closed
/// form; the decorations are filled in by eliminating along a triangle.
pub fn closed_form_inverse(which: ClosedFormSurface, q: &LambdaBoundaryPoint) -> Result<ShearDecorationPoint> {
    let surface = which.surface();
    let lab = Labels(&surface);
    let ne = surface.edges().len();
    let nv = surface.vertices().len();
    if q.lambda.len() != ne {
        return Err(Error::Dimension { what: "lambda", expected: ne, got: q.lambda.len() });
    }
    if q.boundary_length.len() != nv {
        return Err(Error::Dimension { what: "boundary_length", expected: nv, got: q.boundary_length.len() });
    }
    let mut shear = vec![0.0; ne];
    let mut decoration = vec![0.0; nv];
    match which {
        ClosedFormSurface::ThreePuncturedSphere => {
            let v = [lab.v("v1")?, lab.v("v2")?, lab.v("v3")?];
            let l = v.map(|i| q.boundary_length[i]);
            let x = sphere_shears(l);
            shear[lab.e("e12")?] = x[0];
            shear[lab.e("e13")?] = x[1];
            shear[lab.e("e23")?] = x[2];
            for i in 0..3 {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                let a = |p: usize, r: usize| -> Result<f64> { Ok(q.lambda[lab.e(&edge_name(p + 1, r + 1))?]) };
                decoration[v[i]] = sphere_decoration(a(i, j)?, a(i, k)?, a(j, k)?, l[i], l[j], l[k]);
            }
        }
        ClosedFormSurface::OncePuncturedBigon => {
            let l1 = q.boundary_length[lab.v("v1")?];
            let (x12, x13) = bigon_shears(l1, q.lambda[lab.e("e23")?], q.lambda[lab.e("e32")?]);
            shear[lab.e("e12")?] = x12;
            shear[lab.e("e13")?] = x13;
            let coords = crate::coordinates::Coordinates::new(surface.clone())?;
            for (v, d) in decoration.iter_mut().enumerate() {
                *d = coords.decoration_by_elimination(v, 0, &shear, &q.lambda);
            }
        }
    }
    Ok(ShearDecorationPoint { shear, decoration })
}
