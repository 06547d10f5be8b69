//! Boundary operators on indicator functions of faces.
//!
//! For a direction `n`, the operator sends `1_F` to `1_{F+} - 1_{F-}`, where
//! `F+` and `F-` are the faces of `F` on which `<n, x>` is maximal and minimal.
//! Iterating along an orthogonal frame `(n_1, ..., n_m)` gives an integer
//! combination of faces of the source polytope, all parallel to the
//! orthogonal complement of the frame. For a polytope that `k`-tiles, two
//! identities hold for every nonempty frame: the signed volume of the
//! combination is zero, and so is its signed count of multiset points at any
//! translate in general position.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::TranslationMultiset;
use crate::polytope::{centroid, PointClass, RationalPolytope};
use crate::rational::{independent_rows, nullspace, transpose, Scalar, Vector};
use crate::tiling::{sample_general_position_with, trial_rng, SAMPLE_PRIME};

/// Ordered, pairwise orthogonal, nonzero directions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Frame {
    directions: Vec<Vector>,
}

impl Frame {
    pub fn new(directions: Vec<Vector>) -> Result<Self> {
        let mut frame = Frame::default();
        for n in directions {
            frame.push(n)?;
        }
        Ok(frame)
    }

    pub fn empty() -> Self {
        Frame::default()
    }

    fn push(&mut self, n: Vector) -> Result<()> {
        if n.is_zero() {
            return Err(Error::ZeroDirection);
        }
        if let Some(first) = self.directions.first() {
            if first.dim() != n.dim() {
                return Err(Error::DimensionMismatch {
                    expected: first.dim(),
                    got: n.dim(),
                });
            }
        }
        if self.directions.iter().any(|m| !m.dot(&n).is_zero()) {
            return Err(Error::NonOrthogonalDirection {
                index: self.directions.len(),
            });
        }
        self.directions.push(n);
        Ok(())
    }

    /// Parses `"1,0;0,1"`: directions separated by `;`, coordinates by `,`.
    pub fn parse(s: &str) -> Result<Self> {
        let dirs = s
            .split(';')
            .filter(|t| !t.trim().is_empty())
            .map(Vector::parse)
            .collect::<Result<Vec<_>>>()?;
        Frame::new(dirs)
    }

    pub fn directions(&self) -> &[Vector] {
        &self.directions
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }
}

/// Integer combination of faces of one source polytope.
#[derive(Clone, Debug)]
pub struct SignedFaceSum<'a> {
    polytope: &'a RationalPolytope,
    terms: BTreeMap<usize, i64>,
    frame: Frame,
}

impl<'a> SignedFaceSum<'a> {
    /// `1_P`.
    pub fn indicator(polytope: &'a RationalPolytope) -> Self {
        SignedFaceSum {
            polytope,
            terms: BTreeMap::from([(polytope.top(), 1)]),
            frame: Frame::empty(),
        }
    }

    pub fn polytope(&self) -> &'a RationalPolytope {
        self.polytope
    }

    /// Face index and nonzero coefficient, ordered by face index.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.terms.iter().map(|(&f, &c)| (f, c))
    }

    pub fn coefficient(&self, face: usize) -> i64 {
        self.terms.get(&face).copied().unwrap_or(0)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies the boundary operator in direction `n`, which must be
    /// orthogonal to every direction applied so far.
    pub fn apply_boundary(&self, n: &Vector) -> Result<SignedFaceSum<'a>> {
        let p = self.polytope;
        if n.dim() != p.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                got: n.dim(),
            });
        }
        let mut frame = self.frame.clone();
        frame.push(n.clone())?;
        let neg = -n;
        let mut terms: BTreeMap<usize, i64> = BTreeMap::new();
        for (&face, &c) in &self.terms {
            let plus = p.support_subface(face, n)?;
            if plus == face {
                // <n, .> is constant on the face: F+ = F- = F cancels.
                continue;
            }
            let minus = p.support_subface(face, &neg)?;
            *terms.entry(plus).or_default() += c;
            *terms.entry(minus).or_default() -= c;
        }
        terms.retain(|_, c| *c != 0);
        Ok(SignedFaceSum {
            polytope: p,
            terms,
            frame,
        })
    }

    /// Signed sum of `(d - m)`-volumes of the terms, `m` the frame length.
    /// Terms of lower dimension contribute zero. All full-dimensional terms are
    /// parallel to the orthogonal complement of the frame, so their volumes are
    /// measured through one common coordinate projection: the result is a
    /// fixed positive multiple of the true signed volume, and exactly zero iff
    /// it is.
    pub fn signed_volume(&self) -> Scalar {
        let p = self.polytope;
        let target = p.dim() - self.frame.len();
        let coords = projection_coordinates(&self.frame, p.dim());
        self.terms
            .iter()
            .filter(|(&f, _)| p.face(f).dim == target)
            .fold(Scalar::zero(), |acc, (&f, &c)| {
                acc + p.projected_face_volume(f, &coords) * Scalar::from_integer(c.into())
            })
    }

    /// `sum_lambda (sum_F c_F 1_{F+v})(lambda)`. Every multiset point on a
    /// term face must lie in the face's relative interior.
    pub fn lambda_sum(&self, lambda: &TranslationMultiset, v: &Vector) -> Result<i64> {
        let p = self.polytope;
        let mut total = 0i64;
        for (&face, &c) in &self.terms {
            let pts: Vec<&Vector> = p.face_vertices(face).collect();
            let (lo, hi) = crate::polytope::bounding_box(pts.into_iter());
            for (x, m) in lambda.points_in_box(&(&lo + v), &(&hi + v)) {
                let minimal = match p.classify_point(&(&x - v)) {
                    PointClass::Exterior => continue,
                    PointClass::Interior => p.top(),
                    PointClass::Boundary(g) => g,
                };
                if minimal == face {
                    total += c * m as i64;
                } else if p.is_subface(minimal, face) {
                    return Err(Error::NotGeneralPosition {
                        lambda: x,
                        face: p.face(face).vertex_indices.clone(),
                    });
                }
            }
        }
        Ok(total)
    }
}

/// Coordinates onto which the orthogonal complement of the frame projects
/// injectively.
fn projection_coordinates(frame: &Frame, dim: usize) -> Vec<usize> {
    let complement = nullspace(frame.directions(), dim);
    if complement.is_empty() {
        return Vec::new();
    }
    independent_rows(&transpose(&complement))
}

/// `d_{n_m} ... d_{n_1} 1_P`. The empty frame gives `1_P`.
pub fn apply_frame<'a>(p: &'a RationalPolytope, frame: &Frame) -> Result<SignedFaceSum<'a>> {
    frame
        .directions()
        .iter()
        .try_fold(SignedFaceSum::indicator(p), |s, n| s.apply_boundary(n))
}

/// Signed multiset count of `apply_frame(P, frame)` at translate `v`.
pub fn discrete_lambda_sum(
    p: &RationalPolytope,
    frame: &Frame,
    v: &Vector,
    lambda: &TranslationMultiset,
) -> Result<i64> {
    apply_frame(p, frame)?.lambda_sum(lambda, v)
}

/// Orthogonal frames of size 1 and 2 built from facet normal directions, one
/// representative per pair `+-n`; pairs are taken in both orders.
pub fn facet_normal_frames(p: &RationalPolytope) -> Vec<Frame> {
    orthogonal_frames(p, 2)
}

/// Every ordered frame of pairwise orthogonal facet normal directions with
/// `1..=max_len` entries, shortest first.
pub fn orthogonal_frames(p: &RationalPolytope, max_len: usize) -> Vec<Frame> {
    let mut dirs: Vec<Vector> = Vec::new();
    for f in p.facets() {
        if !dirs.contains(&f.normal) && !dirs.contains(&-&f.normal) {
            dirs.push(f.normal.clone());
        }
    }
    let mut frames = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for chain in &layer {
            for (i, d) in dirs.iter().enumerate() {
                if chain.iter().all(|&j| j != i && dirs[j].dot(d).is_zero()) {
                    let mut c = chain.clone();
                    c.push(i);
                    next.push(c);
                }
            }
        }
        frames.extend(next.iter().map(|c| {
            Frame::new(c.iter().map(|&i| dirs[i].clone()).collect())
                .expect("pairwise orthogonal nonzero directions")
        }));
        layer = next;
    }
    frames
}

/// Samples a translate in general position for the frame. Most draws place a
/// multiset point in the relative interior of a randomly chosen term face, so
/// the signed count is a nontrivial sum rather than `0 - 0`.
pub fn sample_frame_translate(
    p: &RationalPolytope,
    frame: &Frame,
    lambda: &TranslationMultiset,
    seed: u64,
    index: u64,
    max_attempts: usize,
) -> Result<Vector> {
    let sum = apply_frame(p, frame)?;
    let faces: Vec<usize> = sum.terms().map(|(f, _)| f).collect();
    let mut rng = trial_rng(seed, index);
    let anchor = lambda.components()[0].offset().clone();
    for _ in 0..max_attempts {
        if faces.is_empty() {
            break;
        }
        let face = faces[rng.random_range(0..faces.len())];
        let f = p.face(face);
        // Small random offset inside the face's direction space, keeping the
        // anchor point near the vertex centroid.
        let scale = Scalar::new(1.into(), (8 * p.vertices().len() as i64).into());
        let shift = f
            .affine_span
            .directions
            .iter()
            .fold(Vector::zeros(p.dim()), |acc, dir| {
                let t = Scalar::new(
                    rng.random_range(-SAMPLE_PRIME..SAMPLE_PRIME).into(),
                    SAMPLE_PRIME.into(),
                );
                &acc + &dir.scale(&(t * &scale))
            });
        let target = &centroid(p.face_vertices(face)) + &shift;
        let v = &anchor - &target;
        if sum.lambda_sum(lambda, &v).is_ok() {
            return Ok(v);
        }
    }
    // Fall back to a fully generic translate, which is in general position
    // for every frame.
    sample_general_position_with(p, lambda, &mut rng, max_attempts).map(|(v, _)| v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{frac, int};

    fn d(xs: &[i64]) -> Vector {
        Vector::from_ints(xs)
    }

    fn face_with(p: &RationalPolytope, pts: &[&[i64]]) -> usize {
        let mut idx: Vec<usize> = pts
            .iter()
            .map(|q| p.vertices().iter().position(|v| v == &d(q)).unwrap())
            .collect();
        idx.sort();
        p.face_by_vertices(&idx).unwrap()
    }

    #[test]
    fn square_edges_and_corners() {
        let sq = fixtures::square();
        let s1 = apply_frame(&sq, &Frame::new(vec![d(&[1, 0])]).unwrap()).unwrap();
        let right = face_with(&sq, &[&[1, 0], &[1, 1]]);
        let left = face_with(&sq, &[&[0, 0], &[0, 1]]);
        assert_eq!(s1.terms().collect::<Vec<_>>().len(), 2);
        assert_eq!(s1.coefficient(right), 1);
        assert_eq!(s1.coefficient(left), -1);

        let s2 = s1.apply_boundary(&d(&[0, 1])).unwrap();
        assert_eq!(s2.coefficient(face_with(&sq, &[&[1, 1]])), 1);
        assert_eq!(s2.coefficient(face_with(&sq, &[&[1, 0]])), -1);
        assert_eq!(s2.coefficient(face_with(&sq, &[&[0, 1]])), -1);
        assert_eq!(s2.coefficient(face_with(&sq, &[&[0, 0]])), 1);
        assert_eq!(s2.terms().count(), 4);
    }

    #[test]
    fn triangle_degenerate_positive_part() {
        let t = fixtures::triangle();
        let s = apply_frame(&t, &Frame::new(vec![d(&[1, 0])]).unwrap()).unwrap();
        assert_eq!(s.coefficient(face_with(&t, &[&[1, 0]])), 1);
        assert_eq!(s.coefficient(face_with(&t, &[&[0, 0], &[0, 1]])), -1);
        assert_eq!(s.terms().count(), 2);
    }

    #[test]
    fn empty_frame_is_identity() {
        let sq = fixtures::square();
        let s = apply_frame(&sq, &Frame::empty()).unwrap();
        assert_eq!(s.terms().collect::<Vec<_>>(), vec![(sq.top(), 1)]);
        assert_eq!(s.signed_volume(), sq.volume());
    }

    #[test]
    fn cube_frame_gives_vertical_edges() {
        let cube = fixtures::cube();
        let s = apply_frame(
            &cube,
            &Frame::new(vec![d(&[1, 0, 0]), d(&[0, 1, 0])]).unwrap(),
        )
        .unwrap();
        let terms: Vec<(usize, i64)> = s.terms().collect();
        assert_eq!(terms.len(), 4);
        for (f, c) in terms {
            let verts: Vec<&Vector> = cube.face_vertices(f).collect();
            assert_eq!(verts.len(), 2);
            assert_eq!(verts[0][0], verts[1][0]);
            assert_eq!(verts[0][1], verts[1][1]);
            // Sign is + on x=y (both max or both min), - otherwise.
            let same = verts[0][0] == verts[0][1];
            assert_eq!(c, if same { 1 } else { -1 });
        }
    }

    #[test]
    fn signed_volume_examples() {
        let sq = fixtures::square();
        let one = Frame::new(vec![d(&[1, 0])]).unwrap();
        let two = Frame::new(vec![d(&[1, 0]), d(&[0, 1])]).unwrap();
        assert_eq!(apply_frame(&sq, &one).unwrap().signed_volume(), int(0));
        assert_eq!(apply_frame(&sq, &two).unwrap().signed_volume(), int(0));
        let simplex = fixtures::simplex3();
        let f = Frame::new(vec![d(&[1, 0, 0])]).unwrap();
        assert_eq!(
            apply_frame(&simplex, &f).unwrap().signed_volume(),
            frac(-1, 2)
        );
    }

    #[test]
    fn frame_validation() {
        assert!(matches!(
            Frame::new(vec![d(&[1, 0]), d(&[1, 1])]),
            Err(Error::NonOrthogonalDirection { index: 1 })
        ));
        assert!(matches!(
            Frame::new(vec![d(&[0, 0])]),
            Err(Error::ZeroDirection)
        ));
        let sq = fixtures::square();
        let s = apply_frame(&sq, &Frame::new(vec![d(&[1, 0])]).unwrap()).unwrap();
        assert!(matches!(
            s.apply_boundary(&d(&[1, 1])),
            Err(Error::NonOrthogonalDirection { index: 1 })
        ));
        assert_eq!(Frame::parse("1,0;0,1").unwrap().len(), 2);
        assert!(Frame::parse("1,0;1,1").is_err());
    }

    #[test]
    fn lambda_sum_examples() {
        let z2 = TranslationMultiset::integer_lattice(2);
        let oct = fixtures::oct7();
        let f = Frame::new(vec![d(&[1, 0])]).unwrap();
        let v = Vector::new(vec![frac(1, 10), frac(1, 10)]);
        assert_eq!(discrete_lambda_sum(&oct, &f, &v, &z2).unwrap(), 0);
        let sq = fixtures::square();
        let v = Vector::new(vec![frac(1, 3), frac(1, 3)]);
        assert_eq!(discrete_lambda_sum(&sq, &f, &v, &z2).unwrap(), 0);
        // Nontrivial: edges x = 2 and x = -1 each carry the point with y = 0.
        let v = Vector::new(vec![frac(1, 2), frac(1, 10)]);
        let s = apply_frame(&oct, &f).unwrap();
        assert_eq!(s.lambda_sum(&z2, &v).unwrap(), 0);
    }

    #[test]
    fn lambda_sum_detects_relative_boundary() {
        let z2 = TranslationMultiset::integer_lattice(2);
        let sq = fixtures::square();
        let f = Frame::new(vec![d(&[1, 0])]).unwrap();
        // Corner (1, 1) of the right edge is a lattice point.
        assert!(matches!(
            discrete_lambda_sum(&sq, &f, &Vector::zeros(2), &z2),
            Err(Error::NotGeneralPosition { .. })
        ));
    }

    #[test]
    fn frame_translates_hit_faces() {
        let z2 = TranslationMultiset::integer_lattice(2);
        let oct = fixtures::oct7();
        let f = Frame::new(vec![d(&[1, 1])]).unwrap();
        let s = apply_frame(&oct, &f).unwrap();
        let mut nontrivial = 0;
        for i in 0..20 {
            let v = sample_frame_translate(&oct, &f, &z2, 5, i, 32).unwrap();
            assert_eq!(s.lambda_sum(&z2, &v).unwrap(), 0);
            let hits: usize = s
                .terms()
                .map(|(face, _)| {
                    let pts: Vec<&Vector> = oct.face_vertices(face).collect();
                    let (lo, hi) = crate::polytope::bounding_box(pts.into_iter());
                    z2.points_in_box(&(&lo + &v), &(&hi + &v)).len()
                })
                .sum();
            if hits > 0 {
                nontrivial += 1;
            }
        }
        assert!(nontrivial > 10);
    }
}
