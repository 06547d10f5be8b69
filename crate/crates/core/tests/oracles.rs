//! Independent oracles: quantities recomputed from closed-form descriptions
//! rather than from the hull and face lattice.

use multitile::fixtures;
use multitile::polytope::PointClass;
use multitile::rational::{abs, frac, int, Scalar};
use multitile::tiling::{count_points, sample_general_position};
use multitile::{TranslationMultiset, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The 24-cell conv(perm(±1, ±1, 0, 0)) as inequalities: `|x_i| <= 1` and
/// `|x_1| + |x_2| + |x_3| + |x_4| <= 2`.
fn cell24_slack(x: &[Scalar]) -> Scalar {
    let one = int(1);
    let box_slack = x.iter().map(|c| &one - abs(c)).min().unwrap();
    let l1: Scalar = x.iter().map(abs).sum();
    box_slack.min(int(2) - l1)
}

#[test]
fn cell24_facets_match_inequalities() {
    let p = fixtures::cell24();
    assert_eq!(p.vertices().len(), 24);
    assert_eq!(p.facets().len(), 24);
    let axis = p.facets().iter().filter(|f| f.offset == int(1)).count();
    let diagonal = p.facets().iter().filter(|f| f.offset == int(2)).count();
    assert_eq!((axis, diagonal), (8, 16));
    for f in p.facets() {
        let l1: Scalar = f.normal.iter().map(abs).sum();
        assert!(l1 == int(1) || l1 == int(4), "{}", f.normal);
    }
}

#[test]
fn cell24_volume_and_lattice_count() {
    let p = fixtures::cell24();
    assert_eq!(p.volume(), int(8));
    // Count Z^4 points strictly inside P + v from the inequalities alone.
    let z4 = TranslationMultiset::integer_lattice(4);
    for seed in 0..5 {
        let v = sample_general_position(&p, &z4, seed, 64).unwrap();
        let counts = count_points(&z4, &p, &v);
        let mut inside = 0;
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for c in -3i64..=3 {
                    for d in -3i64..=3 {
                        let x: Vec<Scalar> = [a, b, c, d]
                            .iter()
                            .zip(v.iter())
                            .map(|(&z, t)| int(z) - t)
                            .collect();
                        if cell24_slack(&x) > int(0) {
                            inside += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(inside, 8);
        assert_eq!(counts.interior, 8);
    }
}

#[test]
fn classification_matches_inequalities() {
    let p = fixtures::cell24();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let x: Vec<Scalar> = (0..4).map(|_| frac(rng.random_range(-5..=5), 4)).collect();
        let slack = cell24_slack(&x);
        let class = p.classify_point(&Vector::new(x));
        match class {
            PointClass::Interior => assert!(slack > int(0)),
            PointClass::Boundary(_) => assert_eq!(slack, int(0)),
            PointClass::Exterior => assert!(slack < int(0)),
        }
    }
}

/// Pick's theorem for lattice polygons: `A = I + B/2 - 1`.
#[test]
fn pick_theorem_for_lattice_polygons() {
    let z2 = TranslationMultiset::integer_lattice(2);
    for p in [fixtures::square(), fixtures::triangle(), fixtures::oct14()] {
        let c = count_points(&z2, &p, &Vector::zeros(2));
        let area = Scalar::from_integer(c.interior.into()) + frac(c.boundary as i64, 2) - int(1);
        assert_eq!(p.volume(), area);
    }
}

/// The tangent cone of `|x|+|y|+|z| <= 1` at (0, 0, 1) is a right pyramid
/// over a square with half-angles `a = b`, `sin a = 1/sqrt 3`; a right
/// rectangular pyramid subtends `4 asin(sin a sin b)`.
#[test]
fn octahedron_vertex_angle() {
    let p = fixtures::octahedron();
    let top = Vector::from_ints(&[0, 0, 1]);
    let w = multitile::solid_angle::solid_angle(&p, &top);
    let expected = 4.0 * (1.0f64 / 3.0).asin() / (4.0 * std::f64::consts::PI);
    assert!(
        (w.value - expected).abs() <= w.absolute_error_bound.max(1e-14),
        "{} vs {expected}",
        w.value
    );
}
