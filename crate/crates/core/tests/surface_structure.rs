use teich_coords::fixtures::{self, special_triangulation};
use teich_coords::surface::{EdgeKind, ShearSign, SurfaceSignature, TriangulatedSurface};
use teich_coords::Error;

fn star_edges(s: &TriangulatedSurface, v: &str, double: bool) -> Vec<(String, ShearSign)> {
    let v = s.vertex_index(v).unwrap();
    let d = s.double().ok();
    s.vertex_star(v, double)
        .unwrap()
        .into_iter()
        .map(|e| {
            let id = match (&d, double) {
                (Some(d), true) => d.surface().edges()[e.edge].id.clone(),
                _ => s.edges()[e.edge].id.clone(),
            };
            (id, e.sign)
        })
        .collect()
}

#[test]
fn sphere_star_of_first_vertex() {
    let s = fixtures::three_punctured_sphere();
    let star: Vec<_> = star_edges(&s, "v1", false).into_iter().map(|(e, _)| e).collect();
    assert_eq!(star, ["e12", "e13"]);
}

#[test]
fn bigon_puncture_star() {
    let s = fixtures::once_punctured_bigon();
    let star: Vec<_> = star_edges(&s, "v1", false).into_iter().map(|(e, _)| e).collect();
    assert_eq!(star.len(), 2);
    assert!(star.contains(&"e12".to_string()) && star.contains(&"e13".to_string()));
}

#[test]
fn ideal_triangle_spike_star_uses_double() {
    let s = fixtures::ideal_triangle();
    let v = s.vertex_index("p1").unwrap();
    assert!(matches!(s.vertex_star(v, false), Err(Error::SpikeNeedsDouble(_))));
    let star = s.vertex_star(v, true).unwrap();
    assert_eq!(star.len(), 2);
    assert!(star.iter().all(|e| e.sign == ShearSign::Boundary));
}

#[test]
fn double_of_ideal_triangle() {
    let s = fixtures::ideal_triangle();
    let d = s.double().unwrap();
    let w = d.surface();
    assert_eq!(w.triangles().len(), 2);
    assert_eq!(w.edges().len(), 3);
    assert!(w.edges().iter().all(|e| e.kind == EdgeKind::Interior));
    assert!(w.validate().passed());
    assert_eq!(d.extend_shears(&[0.3, -0.2, 0.9]), vec![0.0; 3]);
}

#[test]
fn mirror_is_an_involution() {
    for sig in [SurfaceSignature::new(0, 1, vec![2]), SurfaceSignature::new(1, 1, vec![1, 2])] {
        let s = special_triangulation(&sig).unwrap();
        let d = s.double().unwrap();
        let w = d.surface();
        for e in 0..w.edges().len() {
            assert_eq!(d.mirror(d.mirror(e)), e);
        }
        for side in 0..w.num_sides() {
            assert_eq!(d.mirror_side(d.mirror_side(side)), side);
            assert_ne!(d.is_mirror_side(side), d.is_mirror_side(d.mirror_side(side)));
        }
        let sig_w = w.signature();
        assert_eq!(sig_w.genus, 2 * sig.genus + sig.boundary_components() as u32 - 1);
        assert_eq!(sig_w.punctures, 2 * sig.punctures + sig.total_spikes());
        assert!(sig_w.spikes_per_boundary.is_empty());
    }
}

#[test]
fn closed_surface_has_no_double() {
    let s = fixtures::three_punctured_sphere();
    assert!(matches!(s.double(), Err(Error::NoBoundaryToDouble)));
}

#[test]
fn non_hyperbolic_signature_fails_validation() {
    let mut desc = fixtures::three_punctured_sphere_description();
    desc.signature = SurfaceSignature::new(0, 1, vec![]);
    assert!(TriangulatedSurface::build(&desc).is_err());
    let s = TriangulatedSurface::assemble(&desc).unwrap();
    let report = s.validate();
    assert!(!report.passed());
    assert!(!report.check("hyperbolicity").unwrap().passed);
}

#[test]
fn boundary_without_spike_fails_validation() {
    let mut desc = fixtures::ideal_triangle_description();
    desc.signature = SurfaceSignature::new(0, 3, vec![0]);
    let report = TriangulatedSurface::assemble(&desc).map(|s| s.validate());
    match report {
        Ok(r) => assert!(!r.check("spikes_per_boundary").unwrap().passed),
        Err(e) => assert!(matches!(e, Error::InvalidSignature(_) | Error::Validation(_)), "{e}"),
    }
}

#[test]
fn non_manifold_edge_is_rejected() {
    let mut desc = fixtures::three_punctured_sphere_description();
    let mut extra = desc.triangles[0].clone();
    extra.id = "t3".into();
    desc.triangles.push(extra);
    let err = TriangulatedSurface::build(&desc).unwrap_err();
    assert!(matches!(err, Error::NonManifoldEdge(_)), "{err}");
}

#[test]
fn description_roundtrip() {
    for name in fixtures::BUNDLED {
        let s = fixtures::bundled(name).unwrap();
        let again = TriangulatedSurface::build(&s.to_description()).unwrap();
        assert_eq!(again.to_description(), s.to_description());
    }
}
