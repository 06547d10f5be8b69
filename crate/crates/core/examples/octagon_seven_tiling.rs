// The octagon with vertices (±3/2, ±1/2), (±1/2, ±3/2) covers the plane
// exactly seven times by its integer translates, although it does not tile.

use multitile::arrangement::verify_k_tiling_exact_2d;
use multitile::fixtures;
use multitile::rational::frac;
use multitile::tiling::{count_points, verify_k_tiling_sampled, Verdict};
use multitile::{TranslationMultiset, Vector};

pub fn run_example() -> multitile::Result<u64> {
    let oct = fixtures::oct7();
    let z2 = TranslationMultiset::integer_lattice(2);
    println!("area = {}", oct.volume());

    // At v = 0 four lattice points sit on edges; a generic shift clears them.
    for v in [Vector::zeros(2), Vector::new(vec![frac(1, 10), frac(1, 5)])] {
        let c = count_points(&z2, &oct, &v);
        println!(
            "v = {v}: {} interior, {} on the boundary",
            c.interior, c.boundary
        );
    }

    let sampled = verify_k_tiling_sampled(&oct, &z2, 1000, 42)?;
    println!("sampled: {:?}", sampled.verdict);

    let exact = verify_k_tiling_exact_2d(&oct, &z2)?;
    let Verdict::ExactVerified { k, cells_checked } = exact.verdict else {
        unreachable!("the octagon multi-tiles");
    };
    println!("exact: k = {k} on all {cells_checked} cells of the critical arrangement");
    Ok(k)
}

#[allow(dead_code)]
fn main() -> multitile::Result<()> {
    run_example().map(drop)
}
