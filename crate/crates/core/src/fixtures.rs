//! Bundled fixture corpus with expected verdicts.

use serde::Serialize;

use crate::lattice::TranslationMultiset;
use crate::polytope::RationalPolytope;
use crate::rational::{frac, int, Scalar, Vector};

fn build(points: Vec<Vec<Scalar>>) -> RationalPolytope {
    RationalPolytope::from_points(points.into_iter().map(Vector::new).collect())
        .expect("fixture polytopes are valid")
}

fn ints(points: &[&[i64]]) -> RationalPolytope {
    build(
        points
            .iter()
            .map(|p| p.iter().map(|&x| int(x)).collect())
            .collect(),
    )
}

/// Cartesian product of a point list with `[lo, hi]` in a new last coordinate.
fn prism(base: &[&[i64]], lo: i64, hi: i64) -> RationalPolytope {
    let mut pts = Vec::new();
    for p in base {
        for h in [lo, hi] {
            let mut q: Vec<Scalar> = p.iter().map(|&x| int(x)).collect();
            q.push(int(h));
            pts.push(q);
        }
    }
    build(pts)
}

fn axis_box(dim: usize, side: i64) -> RationalPolytope {
    let pts = (0..1u32 << dim)
        .map(|mask| {
            (0..dim)
                .map(|i| int(if mask >> i & 1 == 1 { side } else { 0 }))
                .collect()
        })
        .collect();
    build(pts)
}

/// `[0,1]^2`.
pub fn square() -> RationalPolytope {
    axis_box(2, 1)
}

/// `[0,2]^3`.
pub fn box2() -> RationalPolytope {
    axis_box(3, 2)
}

/// `[0,1]^3`.
pub fn cube() -> RationalPolytope {
    axis_box(3, 1)
}

/// `conv{(0,0), (1,0), (0,1)}`.
pub fn triangle() -> RationalPolytope {
    ints(&[&[0, 0], &[1, 0], &[0, 1]])
}

/// `conv{0, e1, e2, e3}`.
pub fn simplex3() -> RationalPolytope {
    ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
}

/// `conv{+-e1, +-e2, +-e3}`.
pub fn octahedron() -> RationalPolytope {
    ints(&[
        &[1, 0, 0],
        &[-1, 0, 0],
        &[0, 1, 0],
        &[0, -1, 0],
        &[0, 0, 1],
        &[0, 0, -1],
    ])
}

/// Lattice hexagon `(1,0),(1,1),(0,1),(-1,0),(-1,-1),(0,-1)` times `[0,1]`.
pub fn hexprism() -> RationalPolytope {
    prism(
        &[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]],
        0,
        1,
    )
}

/// The area-7 octagon `(+-3/2, +-1/2), (+-1/2, +-3/2)`, which 7-tiles with
/// `Z^2` but does not tile.
pub fn oct7() -> RationalPolytope {
    let mut pts = Vec::new();
    for (a, b) in [(3, 1), (1, 3)] {
        for sa in [-1, 1] {
            for sb in [-1, 1] {
                pts.push(vec![frac(sa * a, 2), frac(sb * b, 2)]);
            }
        }
    }
    build(pts)
}

/// The integer octagon `(+-2, +-1), (+-1, +-2)` of area 14.
pub fn oct14() -> RationalPolytope {
    let mut pts: Vec<Vec<i64>> = Vec::new();
    for (a, b) in [(2, 1), (1, 2)] {
        for sa in [-1, 1] {
            for sb in [-1, 1] {
                pts.push(vec![sa * a, sb * b]);
            }
        }
    }
    let refs: Vec<&[i64]> = pts.iter().map(Vec::as_slice).collect();
    ints(&refs)
}

/// The 24-cell with vertices the permutations of `(+-1, +-1, 0, 0)`.
pub fn cell24() -> RationalPolytope {
    let mut pts = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for si in [-1, 1] {
                for sj in [-1, 1] {
                    let mut p = vec![int(0); 4];
                    p[i] = int(si);
                    p[j] = int(sj);
                    pts.push(p);
                }
            }
        }
    }
    build(pts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExpectedSymmetry {
    Pass,
    FailBody,
    FailFacet,
}

/// Expectations attached to a fixture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Expected {
    pub symmetry: ExpectedSymmetry,
    /// Common multiplicity with the integer lattice, `None` if refuted.
    pub k_integer_lattice: Option<u64>,
    /// `(N, k)` for the rational lattice `(1/N) Z^d`, `None` if the symmetry
    /// precondition fails.
    pub rational: Option<(u64, u64)>,
}

pub struct Fixture {
    pub name: &'static str,
    pub polytope: RationalPolytope,
    /// `Z^d` for every bundled fixture.
    pub multiset: TranslationMultiset,
    pub expected: Expected,
}

type Builder = fn() -> RationalPolytope;

/// Name, builder, symmetry, `k` with `Z^d`, `(N, k)` with `(1/N) Z^d`.
type Entry = (
    &'static str,
    Builder,
    ExpectedSymmetry,
    Option<u64>,
    Option<(u64, u64)>,
);

const CORPUS: [Entry; 10] = {
    use ExpectedSymmetry::*;
    [
        ("square", square, Pass, Some(1), Some((1, 1))),
        ("box2", box2, Pass, Some(8), Some((1, 8))),
        ("triangle", triangle, FailBody, None, None),
        ("simplex3", simplex3, FailBody, None, None),
        ("cube", cube, Pass, Some(1), Some((1, 1))),
        ("octahedron", octahedron, FailFacet, None, None),
        ("hexprism", hexprism, Pass, Some(3), Some((1, 3))),
        ("oct7", oct7, Pass, Some(7), Some((2, 28))),
        ("oct14", oct14, Pass, Some(14), Some((1, 14))),
        // Volume 8: the orthant pieces {x in [0,1]^4 : sum x <= 2} have volume 1/2.
        ("cell24", cell24, Pass, Some(8), Some((1, 8))),
    ]
};

fn load(entry: &Entry) -> Fixture {
    let &(name, builder, symmetry, k_integer_lattice, rational) = entry;
    let polytope = builder();
    let multiset = TranslationMultiset::integer_lattice(polytope.dim());
    Fixture {
        name,
        polytope,
        multiset,
        expected: Expected {
            symmetry,
            k_integer_lattice,
            rational,
        },
    }
}

pub fn names() -> impl Iterator<Item = &'static str> {
    CORPUS.iter().map(|e| e.0)
}

/// The whole corpus, in a fixed order.
pub fn all() -> Vec<Fixture> {
    CORPUS.iter().map(load).collect()
}

/// Builds only the named fixture.
pub fn by_name(name: &str) -> Option<Fixture> {
    CORPUS.iter().find(|e| e.0 == name).map(load)
}
