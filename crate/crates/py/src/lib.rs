//! Python bindings. Coordinates are passed as lists ordered like
//! `Surface.edge_ids` and `Surface.vertex_ids`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use teich_coords::closed_form::{self, ClosedFormSurface};
use teich_coords::coordinates::{LambdaBoundaryPoint, ShearDecorationPoint};
use teich_coords::lamination::{compatibility_check, CombinatorialCurve, CurveKind, Flavor, LaminationDescription};
use teich_coords::verify::{self, SuiteKind, VerifyOptions};
use teich_coords::{fixtures, io, EdgeKind, SurfaceDescription, SurfaceSignature};

create_exception!(teich_coords, TeichError, PyValueError);

fn err(e: teich_coords::Error) -> PyErr {
    TeichError::new_err(e.to_string())
}

fn parse_err(e: serde_json::Error) -> PyErr {
    TeichError::new_err(format!("parse error: {e}"))
}

#[pyclass(frozen, skip_from_py_object, module = "teich_coords")]
#[derive(Clone)]
struct Surface {
    inner: teich_coords::TriangulatedSurface,
}

#[pymethods]
impl Surface {
    /// One of the bundled examples, by name.
    #[staticmethod]
    fn bundled(name: &str) -> PyResult<Self> {
        Ok(Self { inner: fixtures::bundled(name).map_err(err)? })
    }

    /// Special triangulation (all punctures 1-valent) for a signature.
    #[staticmethod]
    #[pyo3(signature = (genus, punctures, spikes))]
    fn special(genus: u32, punctures: u32, spikes: Vec<u32>) -> PyResult<Self> {
        let sig = SurfaceSignature::new(genus, punctures, spikes);
        Ok(Self { inner: fixtures::special_triangulation(&sig).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let desc: SurfaceDescription = serde_json::from_str(text).map_err(parse_err)?;
        Ok(Self { inner: teich_coords::TriangulatedSurface::build(&desc).map_err(err)? })
    }

    /// Bundled name or path of a surface file.
    #[staticmethod]
    fn load(reference: &str) -> PyResult<Self> {
        Ok(Self { inner: io::load_surface(reference, None).map_err(err)? })
    }

    fn to_json(&self) -> String {
        io::to_json(&self.inner.to_description())
    }

    #[getter]
    fn vertex_ids(&self) -> Vec<String> {
        self.inner.vertices().iter().map(|v| v.id.clone()).collect()
    }

    #[getter]
    fn edge_ids(&self) -> Vec<String> {
        self.inner.edges().iter().map(|e| e.id.clone()).collect()
    }

    #[getter]
    fn interior_edge_ids(&self) -> Vec<String> {
        self.inner.edges().iter().filter(|e| e.kind == EdgeKind::Interior).map(|e| e.id.clone()).collect()
    }

    #[getter]
    fn triangle_count(&self) -> usize {
        self.inner.triangles().len()
    }

    /// Names of failed validation checks; empty when valid.
    fn validate(&self) -> Vec<String> {
        self.inner.validate().failures().iter().map(|c| c.name.clone()).collect()
    }

    fn valence(&self, vertex: &str) -> PyResult<usize> {
        let v = self
            .inner
            .vertex_index(vertex)
            .ok_or_else(|| err(teich_coords::Error::UnknownId { kind: "vertex", id: vertex.into() }))?;
        Ok(self.inner.valence(v))
    }

    fn __repr__(&self) -> String {
        format!(
            "Surface(vertices={}, edges={}, triangles={})",
            self.inner.vertices().len(),
            self.inner.edges().len(),
            self.inner.triangles().len()
        )
    }
}

#[pyclass(frozen, module = "teich_coords")]
struct Coordinates {
    inner: teich_coords::coordinates::Coordinates,
}

#[pymethods]
impl Coordinates {
    #[new]
    fn new(surface: &Surface) -> PyResult<Self> {
        Ok(Self { inner: teich_coords::coordinates::Coordinates::new(surface.inner.clone()).map_err(err)? })
    }

    #[getter]
    fn surface(&self) -> Surface {
        Surface { inner: self.inner.surface().clone() }
    }

    /// `(lambda, boundary_length)` from `(shear, decoration)`.
    fn psi_forward(&self, shear: Vec<f64>, decoration: Vec<f64>) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let p = ShearDecorationPoint::new(self.inner.surface(), shear, decoration).map_err(err)?;
        let q = self.inner.psi_forward(&p).map_err(err)?;
        Ok((q.lambda, q.boundary_length))
    }

    /// `(shear, decoration)` from `(lambda, boundary_length)`; needs a
    /// special triangulation.
    fn psi_inverse(&self, lambda_: Vec<f64>, boundary_length: Vec<f64>) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let q = LambdaBoundaryPoint::new(self.inner.surface(), lambda_, boundary_length).map_err(err)?;
        let p = self.inner.psi_inverse(&q).map_err(err)?;
        Ok((p.shear, p.decoration))
    }

    fn boundary_lengths(&self, shear: Vec<f64>) -> PyResult<Vec<f64>> {
        let s = self.inner.surface();
        if shear.len() != s.edges().len() {
            return Err(err(teich_coords::Error::Dimension { what: "shear", expected: s.edges().len(), got: shear.len() }));
        }
        Ok((0..s.vertices().len()).map(|v| self.inner.boundary_length(v, &shear)).collect())
    }
}

#[pyclass(frozen, module = "teich_coords")]
struct Lamination {
    inner: teich_coords::lamination::Lamination,
}

#[pymethods]
impl Lamination {
    /// Parse the lamination part of a lamination file (flavor, orientation,
    /// curves) on `surface`.
    #[staticmethod]
    fn from_json(surface: &Surface, text: &str) -> PyResult<Self> {
        let desc: LaminationDescription = serde_json::from_str(text).map_err(parse_err)?;
        let inner = teich_coords::lamination::Lamination::from_description(&surface.inner, &desc).map_err(err)?;
        Ok(Self { inner })
    }

    /// A-lamination of curves around vertices, one weight per vertex.
    #[staticmethod]
    fn around_vertices(surface: &Surface, weights: Vec<f64>) -> PyResult<Self> {
        let s = &surface.inner;
        if weights.len() != s.vertices().len() {
            return Err(err(teich_coords::Error::Dimension { what: "weights", expected: s.vertices().len(), got: weights.len() }));
        }
        let curves = (0..s.vertices().len())
            .map(|v| Ok((CombinatorialCurve::around_vertex(s, v)?, weights[v])))
            .collect::<teich_coords::Result<Vec<_>>>()
            .map_err(err)?;
        let inner = teich_coords::lamination::Lamination::new(s, Flavor::A, curves, vec![0; s.vertices().len()])
            .map_err(err)?;
        Ok(Self { inner })
    }

    fn to_json(&self) -> String {
        io::to_json(&self.inner.to_description())
    }

    #[getter]
    fn flavor(&self) -> String {
        serde_json::to_value(self.inner.flavor()).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
    }

    /// `(kind, weight)` per stored curve.
    fn curves(&self) -> Vec<(String, f64)> {
        self.inner
            .curves()
            .iter()
            .map(|c| {
                let kind = match c.kind {
                    CurveKind::Contractible => "contractible",
                    CurveKind::A { .. } => "a",
                    CurveKind::X => "x",
                    CurveKind::XD => "x_d",
                    CurveKind::General => "general",
                };
                (kind.to_string(), c.weight)
            })
            .collect()
    }

    fn edge_weights_a(&self) -> PyResult<Vec<f64>> {
        self.inner.edge_weights_a().map_err(err)
    }

    #[pyo3(signature = (include_boundary = false))]
    fn signed_weights_x(&self, include_boundary: bool) -> PyResult<Vec<f64>> {
        self.inner.signed_weights_x(include_boundary).map_err(err)
    }

    fn psi_x(&self) -> PyResult<(Vec<f64>, Vec<f64>)> {
        self.inner.psi_x().map_err(err)
    }

    /// `(max_error, max_boundary_length)` of the compatibility check.
    fn compatibility(&self, coordinates: &Coordinates) -> PyResult<(f64, f64)> {
        let r = compatibility_check(&coordinates.inner, &self.inner).map_err(err)?;
        Ok((r.max_error, r.max_boundary_length))
    }
}

#[pyfunction]
fn sphere_shears(l1: f64, l2: f64, l3: f64) -> (f64, f64, f64) {
    let [a, b, c] = closed_form::sphere_shears([l1, l2, l3]);
    (a, b, c)
}

#[pyfunction]
fn bigon_shears(l1: f64, a23: f64, a32: f64) -> (f64, f64) {
    closed_form::bigon_shears(l1, a23, a32)
}

/// Closed-form inverse on `three-punctured-sphere` or `once-punctured-bigon`.
#[pyfunction]
fn closed_form_inverse(name: &str, lambda_: Vec<f64>, boundary_length: Vec<f64>) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let which = ClosedFormSurface::parse(name).map_err(err)?;
    let q = LambdaBoundaryPoint { lambda: lambda_, boundary_length };
    let p = closed_form::closed_form_inverse(which, &q).map_err(err)?;
    Ok((p.shear, p.decoration))
}

/// Run verification suites; returns `(passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (suites = None, seed = verify::DEFAULT_SEED, samples = 100, tolerance = None))]
fn run_verify(suites: Option<Vec<String>>, seed: u64, samples: usize, tolerance: Option<f64>) -> PyResult<(bool, String)> {
    let kinds = match suites {
        None => SuiteKind::ALL.to_vec(),
        Some(names) => names
            .iter()
            .map(|n| SuiteKind::parse(n).ok_or_else(|| TeichError::new_err(format!("unknown suite `{n}`"))))
            .collect::<PyResult<Vec<_>>>()?,
    };
    let report = verify::run(&kinds, VerifyOptions { seed, samples, tolerance }).map_err(err)?;
    Ok((report.passed, io::to_json(&report)))
}

#[pymodule]
#[pyo3(name = "teich_coords")]
fn teich_coords_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TeichError", m.py().get_type::<TeichError>())?;
    m.add_class::<Surface>()?;
    m.add_class::<Coordinates>()?;
    m.add_class::<Lamination>()?;
    m.add_function(wrap_pyfunction!(sphere_shears, m)?)?;
    m.add_function(wrap_pyfunction!(bigon_shears, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    m.add("BUNDLED", fixtures::BUNDLED.to_vec())?;
    Ok(())
}
