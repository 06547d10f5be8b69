// A centrally symmetric rational polytope with centrally symmetric facets
// multi-tiles with the lattice (1/N)Z^d, N the common denominator of its
// vertices, and the multiplicity is N^d times its volume.

use multitile::fixtures;
use multitile::tiling::compute_k_rational;

pub fn run_example() -> multitile::Result<Vec<(&'static str, u64, u64)>> {
    let mut rows = Vec::new();
    for f in fixtures::all() {
        match compute_k_rational(&f.polytope) {
            Ok(rk) => {
                println!(
                    "{:<10} N = {}  k = {:>2}  vol = {}",
                    f.name,
                    rk.n,
                    rk.k,
                    f.polytope.volume()
                );
                rows.push((f.name, rk.n, rk.k));
            }
            Err(e) => println!("{:<10} {e}", f.name),
        }
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> multitile::Result<()> {
    run_example().map(drop)
}
