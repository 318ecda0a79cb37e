use proptest::prelude::*;
use teich_coords::coordinates::{
    boundary_length_from_star, half_edge_lambda_in_star, log_star_sums, neighborhood_radii,
    Coordinates, ShearDecorationPoint,
};
use teich_coords::fixtures::special_triangulation;
use teich_coords::surface::SurfaceSignature;

fn special(sig: (u32, u32, Vec<u32>)) -> Coordinates {
    Coordinates::new(special_triangulation(&SurfaceSignature::new(sig.0, sig.1, sig.2)).unwrap()).unwrap()
}

fn signatures() -> impl Strategy<Value = (u32, u32, Vec<u32>)> {
    prop_oneof![
        Just((0, 1, vec![1])),
        Just((0, 2, vec![1])),
        Just((0, 1, vec![2])),
        Just((0, 0, vec![3])),
        Just((1, 1, vec![1])),
        Just((0, 2, vec![1, 1])),
        Just((1, 0, vec![2])),
    ]
}

fn point(c: &Coordinates, raw: &[f64]) -> ShearDecorationPoint {
    let s = c.surface();
    let ne = s.edges().len();
    let shear = (0..ne)
        .map(|e| if s.edges()[e].kind == teich_coords::EdgeKind::Boundary { 0.0 } else { raw[e % raw.len()] })
        .collect();
    let decoration = (0..s.vertices().len()).map(|v| raw[(ne + v) % raw.len()]).collect();
    ShearDecorationPoint { shear, decoration }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_after_forward(sig in signatures(), raw in prop::collection::vec(-3.0f64..3.0, 1..40)) {
        let c = special(sig);
        let p = point(&c, &raw);
        let q = c.psi_forward(&p).unwrap();
        let back = c.psi_inverse(&q).unwrap();
        prop_assert!(back.max_abs_diff(&p) <= 1e-9);
    }

    #[test]
    fn forward_after_inverse(sig in signatures(), raw in prop::collection::vec(-3.0f64..3.0, 1..40)) {
        // every lambda point with admissible boundary lengths comes from the fiber over it
        let c = special(sig);
        let q = c.psi_forward(&point(&c, &raw)).unwrap();
        let again = c.psi_forward(&c.psi_inverse(&q).unwrap()).unwrap();
        prop_assert!(again.max_abs_diff(&q) <= 1e-9);
    }

    #[test]
    fn star_quantities_rotate_with_start(x in prop::collection::vec(-4.0f64..4.0, 1..7), shift in 0usize..7) {
        let n = x.len();
        let k = shift % n;
        let mut y = x.clone();
        y.rotate_left(k);
        let l = boundary_length_from_star(&x);
        prop_assert!((boundary_length_from_star(&y) - l).abs() <= 1e-12);
        let (sx, sy) = (log_star_sums(&x), log_star_sums(&y));
        let (rx, ry) = (neighborhood_radii(&x, l), neighborhood_radii(&y, l));
        for i in 0..n {
            prop_assert!((sy[i] - sx[(i + k) % n]).abs() <= 1e-12);
            prop_assert!((ry[i] - rx[(i + k) % n]).abs() <= 1e-12 * rx[(i + k) % n].max(1.0));
        }
    }

    #[test]
    fn half_edge_lambda_is_linear_in_decoration(x in prop::collection::vec(-4.0f64..4.0, 1..7), d in -5.0f64..5.0, t in -5.0f64..5.0) {
        for host in 0..x.len() {
            let a = half_edge_lambda_in_star(&x, host, d);
            let b = half_edge_lambda_in_star(&x, host, d + t);
            prop_assert!((b - a - t).abs() <= 1e-12);
        }
    }

    #[test]
    fn boundary_length_is_linear_in_shears(sig in signatures(), raw in prop::collection::vec(-3.0f64..3.0, 1..40), s in -2.0f64..2.0) {
        let c = special(sig);
        let p = point(&c, &raw);
        let scaled: Vec<f64> = p.shear.iter().map(|x| s * x).collect();
        for v in 0..c.surface().vertices().len() {
            let l = c.boundary_length(v, &p.shear);
            prop_assert!((c.boundary_length(v, &scaled) - s * l).abs() <= 1e-12 * (1.0 + l.abs()));
        }
    }
}
