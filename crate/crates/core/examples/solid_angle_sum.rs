// For a k-tiling, the solid angles of P + v at the lattice points add up to
// k for every v, including translates with lattice points on the boundary.

use multitile::fixtures;
use multitile::solid_angle::{solid_angle_sum, AngleMethod};
use multitile::{TranslationMultiset, Vector};

pub fn run_example() -> multitile::Result<f64> {
    let oct = fixtures::oct7();
    let z2 = TranslationMultiset::integer_lattice(2);
    let s = solid_angle_sum(&oct, &z2, &Vector::zeros(2));
    for c in &s.contributions {
        if c.angle.method != AngleMethod::Exact || c.angle.value != 1.0 {
            println!("  {} -> {:.6}", c.lambda, c.angle.value);
        }
    }
    println!(
        "oct7 at v = 0: sum = {:.12} (± {:.1e})",
        s.sum, s.error_bound
    );

    let cube = fixtures::cube();
    let z3 = TranslationMultiset::integer_lattice(3);
    let s3 = solid_angle_sum(&cube, &z3, &Vector::zeros(3));
    println!(
        "cube at v = 0: sum = {:.12} over {} lattice points",
        s3.sum,
        s3.contributions.len()
    );
    Ok(s.sum)
}

#[allow(dead_code)]
fn main() -> multitile::Result<()> {
    run_example().map(drop)
}
