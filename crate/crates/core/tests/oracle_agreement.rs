use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use teich_coords::coordinates::{gap_in_star, neighborhood_radii, Coordinates, ShearDecorationPoint};
use teich_coords::fixtures;
use teich_coords::oracle;

fn coords(name: &str) -> Coordinates {
    Coordinates::new(fixtures::bundled(name).unwrap()).unwrap()
}

#[test]
fn forward_map_matches_measurement() {
    for name in fixtures::BUNDLED {
        let c = coords(name);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let p = ShearDecorationPoint::random(c.surface(), &mut rng, 2.0);
            let closed = c.psi_forward(&p).unwrap();
            let measured = oracle::measure_forward(&c, &p).unwrap();
            worst = worst.max(closed.max_abs_diff(&measured));
        }
        assert!(worst <= 1e-9, "{name}: {worst}");
    }
}

#[test]
fn radii_match_developed_stars() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    use rand::Rng;
    for n in 1..6 {
        for _ in 0..50 {
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let l: f64 = x.iter().sum();
            let star = oracle::develop_star(&x, oracle::CenterKind::Geodesic, l).unwrap();
            let closed = neighborhood_radii(&x, l);
            let geo = star.neighborhood_radii();
            for (a, b) in closed.iter().zip(&geo) {
                assert!((a - b).abs() <= 1e-9 * a.max(1.0), "n={n} l={l}: {a} vs {b}");
            }
            for k in 0..n {
                for steps in [1, 2] {
                    let mut rot = x.clone();
                    rot.rotate_left(k);
                    let s = oracle::develop_star(&rot, oracle::CenterKind::Geodesic, l).unwrap();
                    let lift = oracle::vertex_lift(&s, rng.gen_range(-1.0..1.0)).unwrap();
                    let measured = oracle::measure_gap(&s, &lift, steps);
                    let closed = gap_in_star(&x, k, steps, l);
                    assert!((measured - closed).abs() <= 1e-9, "gap n={n}: {measured} vs {closed}");
                }
            }
        }
    }
}
