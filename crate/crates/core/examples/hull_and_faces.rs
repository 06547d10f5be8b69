// Convex hull, face lattice and exact volume of a point set given with
// fraction coordinates; interior and repeated points are dropped.

use multitile::polytope::PointClass;
use multitile::{RationalPolytope, Vector};

pub fn run_example() -> multitile::Result<Vec<usize>> {
    let pts: Vec<Vector> = [
        "0,0,0", "2,0,0", "0,2,0", "2,2,0", "1,1,3/2", "1,1,1/2", "0,0,0",
    ]
    .iter()
    .map(|s| Vector::parse(s))
    .collect::<multitile::Result<_>>()?;
    let pyramid = RationalPolytope::from_points(pts)?;

    println!("vertices: {}", pyramid.vertices().len());
    println!(
        "discarded: {:?}",
        pyramid
            .discarded_points()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
    );
    let f_vector: Vec<usize> = (0..=pyramid.dim())
        .map(|k| pyramid.faces_of_dim(k).count())
        .collect();
    println!("f-vector: {f_vector:?}");
    for f in pyramid.facets() {
        println!("  <{}, x> <= {}", f.normal, f.offset);
    }
    println!("volume: {}", pyramid.volume());
    let probe = Vector::parse("1,0,0")?;
    match pyramid.classify_point(&probe) {
        PointClass::Boundary(face) => println!(
            "{probe} lies in a face of dimension {}",
            pyramid.face(face).dim
        ),
        other => println!("{probe}: {other:?}"),
    }
    Ok(f_vector)
}

#[allow(dead_code)]
fn main() -> multitile::Result<()> {
    run_example().map(drop)
}
