// Central symmetry of the body and of each facet: necessary for any
// multi-tiling by translates.

use multitile::fixtures;
use multitile::symmetry::{minkowski_verdict, Overall};

pub fn run_example() -> multitile::Result<Vec<(&'static str, Overall)>> {
    let mut out = Vec::new();
    for f in fixtures::all() {
        let v = minkowski_verdict(&f.polytope);
        let center = v
            .body_center
            .as_ref()
            .map_or_else(|| "-".to_string(), |c| c.to_string());
        println!("{:<10} center {:<16} {:?}", f.name, center, v.overall);
        out.push((f.name, v.overall));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> multitile::Result<()> {
    run_example().map(drop)
}
