// Iterated boundary operators along orthogonal facet normals. For a
// multi-tiler the signed volume of every boundary sum vanishes, and so does
// the signed number of lattice points on it at a general translate.

use multitile::boundary::{apply_frame, facet_normal_frames, sample_frame_translate, Frame};
use multitile::fixtures;
use multitile::tiling::{DEFAULT_MAX_ATTEMPTS, DEFAULT_SEED};
use multitile::{TranslationMultiset, Vector};

pub fn run_example() -> multitile::Result<()> {
    let cube = fixtures::cube();
    let z3 = TranslationMultiset::integer_lattice(3);
    for frame in facet_normal_frames(&cube) {
        let sum = apply_frame(&cube, &frame)?;
        let mut counts = Vec::new();
        for i in 0..5 {
            let v =
                sample_frame_translate(&cube, &frame, &z3, DEFAULT_SEED, i, DEFAULT_MAX_ATTEMPTS)?;
            counts.push(sum.lambda_sum(&z3, &v)?);
        }
        let dirs: Vec<String> = frame.directions().iter().map(|d| d.to_string()).collect();
        println!(
            "frame [{}]: {} terms, signed volume {}, lattice sums {counts:?}",
            dirs.join(", "),
            sum.terms().count(),
            sum.signed_volume()
        );
    }

    // The simplex is not symmetric: its x-boundary has unequal halves.
    let simplex = fixtures::simplex3();
    let frame = Frame::new(vec![Vector::from_ints(&[1, 0, 0])])?;
    println!(
        "simplex3, frame [(1, 0, 0)]: signed volume {}",
        apply_frame(&simplex, &frame)?.signed_volume()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> multitile::Result<()> {
    run_example()
}
