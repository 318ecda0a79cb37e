use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use teich_coords::coordinates::{Coordinates, PUNCTURE_GAP_EVEN, PUNCTURE_GAP_ODD};
use teich_coords::fixtures;
use teich_coords::verify::gap_coefficient_error;

#[test]
fn chosen_coefficients() {
    assert_eq!(PUNCTURE_GAP_ODD, 2.0);
    assert_eq!(PUNCTURE_GAP_EVEN, 1.0);
}

#[test]
fn monogon_fixes_the_first_coefficient() {
    let c = Coordinates::new(fixtures::once_punctured_monogon()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    assert!(gap_coefficient_error(&c, [PUNCTURE_GAP_ODD, PUNCTURE_GAP_EVEN], &mut rng, 50).unwrap() <= 1e-10);
    for first in [0.0, 1.0, 3.0] {
        assert!(gap_coefficient_error(&c, [first, PUNCTURE_GAP_EVEN], &mut rng, 50).unwrap() > 1e-3);
    }
}
