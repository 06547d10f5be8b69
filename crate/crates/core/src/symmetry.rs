//! Central symmetry of a polytope and of each of its facets.
//!
//! A finite point set is centrally symmetric iff the reflection through its
//! mean permutes it: symmetric pairs average to the center, so the mean is the
//! only possible center. Facets are tested in ambient coordinates, reflecting
//! through each facet's own vertex mean.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::{centroid, RationalPolytope};
use crate::rational::{int, Vector};

/// Center of symmetry of `points`, if the set is centrally symmetric.
pub fn symmetry_center(points: &[Vector]) -> Result<Option<Vector>> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let center = centroid(points.iter());
    let twice = center.scale(&int(2));
    let set: HashSet<&Vector> = points.iter().collect();
    let symmetric = points.iter().all(|p| set.contains(&(&twice - p)));
    Ok(symmetric.then_some(center))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Overall {
    Pass,
    FailBody,
    /// Indices of the asymmetric facets.
    FailFacet(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetReport {
    pub facet: usize,
    pub symmetric: bool,
    pub center: Option<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SymmetryVerdict {
    pub body_center: Option<Vector>,
    pub body_symmetric: bool,
    pub facet_reports: Vec<FacetReport>,
    pub overall: Overall,
}

impl SymmetryVerdict {
    pub fn passed(&self) -> bool {
        self.overall == Overall::Pass
    }
}

/// Decides whether `p` and all of its facets are centrally symmetric.
/// An asymmetric body takes precedence over asymmetric facets in `overall`.
pub fn minkowski_verdict(p: &RationalPolytope) -> SymmetryVerdict {
    let body_center = symmetry_center(p.vertices()).expect("polytopes have vertices");
    let facet_reports: Vec<FacetReport> = p
        .facets()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let pts: Vec<Vector> = f
                .vertices
                .iter()
                .map(|&v| p.vertices()[v].clone())
                .collect();
            let center = symmetry_center(&pts).expect("facets have vertices");
            FacetReport {
                facet: i,
                symmetric: center.is_some(),
                center,
            }
        })
        .collect();
    let bad: Vec<usize> = facet_reports
        .iter()
        .filter(|r| !r.symmetric)
        .map(|r| r.facet)
        .collect();
    let body_symmetric = body_center.is_some();
    let overall = if !body_symmetric {
        Overall::FailBody
    } else if !bad.is_empty() {
        Overall::FailFacet(bad)
    } else {
        Overall::Pass
    };
    SymmetryVerdict {
        body_center,
        body_symmetric,
        facet_reports,
        overall,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::frac;

    #[test]
    fn centers() {
        let sq = fixtures::square();
        assert_eq!(
            symmetry_center(sq.vertices()).unwrap(),
            Some(Vector::new(vec![frac(1, 2), frac(1, 2)]))
        );
        assert_eq!(
            symmetry_center(fixtures::triangle().vertices()).unwrap(),
            None
        );
        assert_eq!(
            symmetry_center(fixtures::oct7().vertices()).unwrap(),
            Some(Vector::zeros(2))
        );
        assert!(matches!(symmetry_center(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn verdicts() {
        assert!(minkowski_verdict(&fixtures::cube()).passed());
        let oct = minkowski_verdict(&fixtures::octahedron());
        assert!(oct.body_symmetric);
        assert_eq!(oct.overall, Overall::FailFacet((0..8).collect()));
        assert_eq!(
            minkowski_verdict(&fixtures::triangle()).overall,
            Overall::FailBody
        );
        // Body asymmetry wins even though every facet of the simplex fails too.
        assert_eq!(
            minkowski_verdict(&fixtures::simplex3()).overall,
            Overall::FailBody
        );
    }

    #[test]
    fn lower_dimensional_sets_in_ambient_space() {
        // A parallelogram sitting in a plane of R^3.
        let pts = vec![
            Vector::from_ints(&[0, 0, 1]),
            Vector::from_ints(&[2, 1, 1]),
            Vector::from_ints(&[3, 3, 1]),
            Vector::from_ints(&[1, 2, 1]),
        ];
        assert_eq!(
            symmetry_center(&pts).unwrap(),
            Some(Vector::new(vec![frac(3, 2), frac(3, 2), frac(1, 1)]))
        );
    }
}
