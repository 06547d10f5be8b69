// Fourier transform of a polytope indicator by recursion over its faces,
// checked against the closed form for a box and against quadrature.

use multitile::fixtures;
use multitile::fourier::{box_transform, hat_indicator, hat_quadrature};
use multitile::rational::frac;
use multitile::{RationalPolytope, Vector};

pub fn run_example() -> multitile::Result<f64> {
    let centered = RationalPolytope::from_points(
        [(-1, -1), (1, -1), (1, 1), (-1, 1)]
            .iter()
            .map(|&(a, b)| Vector::new(vec![frac(a, 2), frac(b, 2)]))
            .collect(),
    )?;
    let xi = Vector::new(vec![frac(1, 2), frac(0, 1)]);
    let r = hat_indicator(&centered, &xi)?;
    let (bre, bim) = box_transform(&[-0.5, -0.5], &[0.5, 0.5], &xi.to_f64());
    println!(
        "box at {xi}: recursion {:.15} {:+.1e}i, closed form {bre:.15} {bim:+.1e}i (2/pi = {:.15})",
        r.re,
        r.im,
        2.0 / std::f64::consts::PI
    );

    let oct = fixtures::oct7();
    let xi = Vector::new(vec![frac(1, 3), frac(-2, 7)]);
    let r = hat_indicator(&oct, &xi)?;
    let q = hat_quadrature(&oct, &xi, 1e-10)?;
    let gap = r.distance(&q);
    println!(
        "oct7 at {xi}: recursion {:.12}{:+.12}i, quadrature {:.12}{:+.12}i, |diff| = {gap:.1e}",
        r.re, r.im, q.re, q.im
    );
    Ok(gap)
}

#[allow(dead_code)]
fn main() -> multitile::Result<()> {
    run_example().map(drop)
}
