//! Every runnable example, executed as a test.

macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(octagon, "octagon_seven_tiling.rs");
example!(rational, "rational_k.rs");
example!(minkowski, "minkowski_conditions.rs");
example!(boundary, "boundary_identities.rs");
example!(angles, "solid_angle_sum.rs");
example!(fourier, "fourier_recursion.rs");
example!(hull, "hull_and_faces.rs");
example!(cosets, "two_coset_multiset.rs");

#[test]
fn octagon_covers_seven_times() {
    assert_eq!(octagon::run_example().unwrap(), 7);
}

#[test]
fn rational_multiplicities() {
    let rows = rational::run_example().unwrap();
    assert!(rows.contains(&("oct7", 2, 28)));
    assert!(rows.contains(&("oct14", 1, 14)));
    assert!(!rows.iter().any(|r| r.0 == "triangle"));
}

#[test]
fn minkowski_verdicts() {
    let rows = minkowski::run_example().unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows
        .iter()
        .any(|(n, o)| *n == "triangle" && *o == multitile::symmetry::Overall::FailBody));
}

#[test]
fn boundary_identities_run() {
    boundary::run_example().unwrap();
}

#[test]
fn octagon_angle_sum() {
    assert!((angles::run_example().unwrap() - 7.0).abs() < 1e-9);
}

#[test]
fn fourier_agrees_with_quadrature() {
    assert!(fourier::run_example().unwrap() < 1e-8);
}

#[test]
fn pyramid_f_vector() {
    assert_eq!(hull::run_example().unwrap(), vec![5, 8, 5, 1]);
}

#[test]
fn coset_multiplicities() {
    assert_eq!(cosets::run_example().unwrap(), vec![2, 3]);
}
