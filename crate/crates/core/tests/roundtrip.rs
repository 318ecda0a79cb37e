use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use teich_coords::coordinates::{Coordinates, ShearDecorationPoint};
use teich_coords::fixtures;
use teich_coords::surface::SurfaceSignature;

fn roundtrip_error(sig: SurfaceSignature, samples: usize, seed: u64) -> f64 {
    let surface = fixtures::special_triangulation(&sig).unwrap();
    let coords = Coordinates::new(surface.clone()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let p = ShearDecorationPoint::random(&surface, &mut rng, 2.0);
        let q = coords.psi_forward(&p).unwrap();
        let back = coords.psi_inverse(&q).unwrap();
        worst = worst.max(back.max_abs_diff(&p));
        let again = coords.psi_forward(&back).unwrap();
        worst = worst.max(again.max_abs_diff(&q));
    }
    worst
}

#[test]
fn roundtrip_on_special_triangulations() {
    let sigs = [
        (0, 1, vec![1]),
        (0, 2, vec![1]),
        (0, 1, vec![2]),
        (0, 0, vec![3]),
        (1, 1, vec![1]),
        (0, 2, vec![1, 1]),
        (1, 2, vec![2, 1]),
    ];
    for (g, p, b) in sigs {
        let sig = SurfaceSignature::new(g, p, b);
        let err = roundtrip_error(sig.clone(), 100, 7);
        assert!(err <= 1e-9, "{sig:?}: {err}");
    }
}
