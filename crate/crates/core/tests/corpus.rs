//! Every bundled fixture reproduces its recorded expectations.

use multitile::fixtures::{self, ExpectedSymmetry};
use multitile::symmetry::{minkowski_verdict, Overall};
use multitile::tiling::{compute_k_rational, verify_k_tiling_sampled};

#[test]
fn corpus_lists_required_fixtures() {
    let names: Vec<_> = fixtures::names().collect();
    for n in [
        "square",
        "box2",
        "triangle",
        "simplex3",
        "cube",
        "octahedron",
        "hexprism",
        "oct7",
        "oct14",
        "cell24",
    ] {
        assert!(names.contains(&n), "{n}");
    }
}

#[test]
fn expectations_hold() {
    for f in fixtures::all() {
        let overall = minkowski_verdict(&f.polytope).overall;
        let symmetry = match overall {
            Overall::Pass => ExpectedSymmetry::Pass,
            Overall::FailBody => ExpectedSymmetry::FailBody,
            Overall::FailFacet(_) => ExpectedSymmetry::FailFacet,
        };
        assert_eq!(symmetry, f.expected.symmetry, "{}", f.name);

        let report = verify_k_tiling_sampled(&f.polytope, &f.multiset, 200, 42).unwrap();
        assert_eq!(report.k(), f.expected.k_integer_lattice, "{}", f.name);

        let rational = compute_k_rational(&f.polytope).ok().map(|rk| (rk.n, rk.k));
        assert_eq!(rational, f.expected.rational, "{}", f.name);
    }
}
