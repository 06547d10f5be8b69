// Multisets with several lattice cosets: the unit square together with
// Z^2 ∪ (Z^2 + (1/2, 1/2)) covers the plane twice. The checkerboard lattice
// alone has density 1/2, but its two cosets together with a doubled Z^2
// cover three times.

use multitile::arrangement::verify_k_tiling_exact_2d;
use multitile::fixtures;
use multitile::io::parse_multiset;

pub fn run_example() -> multitile::Result<Vec<u64>> {
    let square = fixtures::square();
    let docs = [
        r#"{"components": [
            {"basis": [["1","0"],["0","1"]], "offset": ["0","0"], "multiplicity": 1},
            {"basis": [["1","0"],["0","1"]], "offset": ["1/2","1/2"], "multiplicity": 1}]}"#,
        r#"{"components": [
            {"basis": [["1","0"],["0","1"]], "offset": ["0","0"], "multiplicity": 2},
            {"basis": [["1","1"],["1","-1"]], "offset": ["0","0"], "multiplicity": 1},
            {"basis": [["1","1"],["1","-1"]], "offset": ["1","0"], "multiplicity": 1}]}"#,
    ];
    let mut ks = Vec::new();
    for doc in docs {
        let lambda = parse_multiset(doc)?;
        let report = verify_k_tiling_exact_2d(&square, &lambda)?;
        println!("period {}: {:?}", lambda.period(), report.verdict);
        ks.extend(report.k());
    }
    Ok(ks)
}

#[allow(dead_code)]
fn main() -> multitile::Result<()> {
    run_example().map(drop)
}
