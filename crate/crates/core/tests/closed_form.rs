use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use teich_coords::closed_form::{closed_form_inverse, ClosedFormSurface};
use teich_coords::coordinates::{Coordinates, ShearDecorationPoint};

fn roundtrip(which: ClosedFormSurface) -> (f64, f64) {
    let coords = Coordinates::new(which.surface()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut ex, mut ed) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let p = ShearDecorationPoint::random(coords.surface(), &mut rng, 2.0);
        let q = coords.psi_forward(&p).unwrap();
        let back = closed_form_inverse(which, &q).unwrap();
        for (a, b) in back.shear.iter().zip(&p.shear) {
            ex = ex.max((a - b).abs());
        }
        for (a, b) in back.decoration.iter().zip(&p.decoration) {
            ed = ed.max((a - b).abs());
        }
    }
    (ex, ed)
}

#[test]
fn sphere_closed_form_inverts_forward_map() {
    let (ex, ed) = roundtrip(ClosedFormSurface::ThreePuncturedSphere);
    println!("sphere shear err {ex:e}, decoration err {ed:e}");
    assert!(ex <= 1e-12);
    assert!(ed <= 1e-10);
}

#[test]
fn bigon_closed_form_inverts_forward_map() {
    let (ex, ed) = roundtrip(ClosedFormSurface::OncePuncturedBigon);
    println!("bigon shear err {ex:e}, decoration err {ed:e}");
    assert!(ex <= 1e-12);
    assert!(ed <= 1e-10);
}
