mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trackpaths::fvs::{fvs_2approx, fvs_exact, is_feedback_set};
use trackpaths::gen::random_weighted;
use trackpaths::Weight;

#[test]
fn approx_examples() {
    let tree = inst(5, &[(0, 1), (1, 2), (1, 3), (3, 4)], 0, 4);
    assert!(fvs_2approx(&tree).vertices.is_empty());
    let triangle = inst(3, &[(0, 1), (1, 2), (0, 2)], 0, 2);
    assert_eq!(fvs_2approx(&triangle).vertices.len(), 1);
    let f = fvs_2approx(&k4());
    assert!(f.vertices.len() <= 4 && is_forest_without(&k4().graph, &f.vertices));
    assert!(is_feedback_set(&k4(), &f.vertices));
}

#[test]
fn exact_examples() {
    let triangle = weighted(3, &[(0, 1), (1, 2), (0, 2)], 0, 2, &[2, 1, 3]);
    let f = fvs_exact(&triangle, 16).unwrap();
    assert_eq!((f.vertices, f.weight), (set(&[1]), Weight::from_integer(1)));
    assert_eq!(fvs_exact(&k4(), 16).unwrap().vertices, set(&[0, 1]));
    // Triangles 0-1-2 and 4-5-6 joined by the path 2-3-4.
    let two = inst(7, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6)], 0, 6);
    let f = fvs_exact(&two, 16).unwrap();
    assert_eq!(f.vertices.len(), 2);
    assert!(f.vertices.iter().any(|&v| v <= 2) && f.vertices.iter().any(|&v| v >= 4));
    assert!(fvs_exact(&trackpaths::gen::planar_grid(5, 5, 0.0, 0), 16).unwrap_err().is_cap());
}

#[test]
fn within_twice_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for seed in 0..200 {
        let i = random_weighted(rng.gen_range(3..=11), rng.gen_range(0.2..0.6), 10, seed);
        let approx = fvs_2approx(&i);
        let exact = fvs_exact(&i, 16).unwrap();
        assert!(is_forest_without(&i.graph, &approx.vertices), "seed {seed}");
        assert_eq!(approx.weight, i.weight_of(&approx.vertices));
        assert_eq!(exact.weight, brute_fvs_weight(&i), "seed {seed}");
        assert!(approx.weight <= exact.weight * Weight::from_integer(2), "seed {seed}");
        assert_eq!(fvs_2approx(&i), approx);
    }
}
