use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use teich_coords::coordinates::{Coordinates, ShearDecorationPoint};
use teich_coords::fixtures::{self, special_triangulation};
use teich_coords::oracle::{
    develop_vertex, equidistant_limit_check, finite_difference_report, origin_deviation,
    vertex_lift, FiniteDifferenceReport,
};
use teich_coords::surface::SurfaceSignature;

fn surfaces() -> Vec<Coordinates> {
    let mut out: Vec<_> = fixtures::BUNDLED
        .iter()
        .map(|n| Coordinates::new(fixtures::bundled(n).unwrap()).unwrap())
        .collect();
    out.push(Coordinates::new(special_triangulation(&SurfaceSignature::new(1, 2, vec![2, 1])).unwrap()).unwrap());
    out
}

#[test]
fn decoration_does_not_depend_on_triangle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for c in surfaces() {
        for _ in 0..20 {
            let p = ShearDecorationPoint::random(c.surface(), &mut rng, 2.0);
            let q = c.psi_forward(&p).unwrap();
            for v in 0..c.surface().vertices().len() {
                for pos in 0..c.table().valence(v) {
                    let a = c.decoration_from_shear_lambda_at(v, pos, &p.shear, &q.lambda);
                    let b = c.decoration_by_elimination(v, pos, &p.shear, &q.lambda);
                    worst = worst.max((a - p.decoration[v]).abs()).max((b - p.decoration[v]).abs());
                }
            }
        }
    }
    assert!(worst <= 1e-12, "worst {worst:e}");
}

#[test]
fn zero_decoration_passes_through_highest_base_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for c in surfaces() {
        for _ in 0..20 {
            let p = ShearDecorationPoint::random(c.surface(), &mut rng, 2.0);
            for v in 0..c.surface().vertices().len() {
                let star = develop_vertex(&c, v, &p.shear, 0).unwrap();
                let lift = vertex_lift(&star, 0.0).unwrap();
                worst = worst.max(origin_deviation(&star, &lift));
            }
        }
    }
    assert!(worst <= 1e-10, "worst {worst:e}");
}

#[test]
fn finite_differences_match_jacobian() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for c in surfaces() {
        let p = ShearDecorationPoint::random(c.surface(), &mut rng, 1.5);
        let r = finite_difference_report(&c, &p, 1e-5).unwrap();
        let own = FiniteDifferenceReport::max_abs(&r.lambda_by_own_decoration);
        let other = FiniteDifferenceReport::max_abs(&r.lambda_by_other_decoration);
        let deco = FiniteDifferenceReport::max_rel(&r.decoration_by_radius);
        let cross = FiniteDifferenceReport::max_abs(&r.shear_by_radius);
        assert!(own <= 1e-6, "own {own:e}");
        assert!(other <= 1e-6, "other {other:e}");
        assert!(deco <= 1e-6, "deco {deco:e}");
        assert!(cross <= 1e-6, "cross {cross:e}");
    }
}

#[test]
fn equidistants_converge_to_horocycle() {
    let r = equidistant_limit_check(1.0, &[0.5, 0.1, 0.01, 1e-4]).unwrap();
    assert!(r.monotone);
    assert!(r.rows.last().unwrap().deviation < 1e-3);
    assert!(equidistant_limit_check(0.5, &[0.6]).is_err());
}
