//! Full-dimensional rational polytopes in `R^d`, `2 <= d <= 4`.
//!
//! The hull is found by exhaustive candidate-hyperplane enumeration over
//! `d`-subsets of the input points with exact side tests. At fixture scale
//! (tens of vertices) this is fast and needs no degeneracy handling: every
//! supporting hyperplane spanned by input points is tested directly.
//!
//! The face lattice is the closure of the facet vertex sets under
//! intersection. Faces are indexed; the polytope itself is the last face.

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{
    cross_normal, denominator_lcm, determinant, factorial, independent_rows, rank, Scalar, Vector,
};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 4;

/// A facet `<normal, x> <= offset`, with `normal` a primitive integer vector
/// pointing outward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vector,
    pub offset: Scalar,
    /// Sorted indices into the polytope's vertex list.
    pub vertices: Vec<usize>,
    /// Index of this facet in the face lattice.
    pub face: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpan {
    pub point: Vector,
    /// Linearly independent, `len() == dim` of the face.
    pub directions: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub dim: usize,
    pub vertex_indices: Vec<usize>,
    pub affine_span: AffineSpan,
    /// Faces of dimension `dim - 1` contained in this face.
    pub subfaces: Vec<usize>,
    /// Facets of the parent polytope that contain this face.
    pub facets: Vec<usize>,
}

/// Exact position of a point relative to a polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointClass {
    Interior,
    /// Carries the index of the unique minimal face containing the point.
    Boundary(usize),
    Exterior,
}

#[derive(Clone, Debug)]
pub struct RationalPolytope {
    dim: usize,
    vertices: Vec<Vector>,
    facets: Vec<Facet>,
    faces: Vec<Face>,
    face_lookup: HashMap<Vec<usize>, usize>,
    discarded: Vec<Vector>,
}

fn check_dim(dim: usize) -> Result<()> {
    if !(MIN_DIM..=MAX_DIM).contains(&dim) {
        return Err(Error::DimensionUnsupported {
            dim,
            supported: "2..=4",
        });
    }
    Ok(())
}

/// Calls `f` on every `k`-subset of `0..n`, in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Supporting hyperplanes spanned by `d`-subsets of `points`, keyed by
/// primitive outward normal.
fn supporting_hyperplanes(points: &[Vector], dim: usize) -> BTreeMap<Vector, Scalar> {
    let mut hyperplanes: BTreeMap<Vector, Scalar> = BTreeMap::new();
    for_each_subset(points.len(), dim, |subset| {
        let base = &points[subset[0]];
        let spanning: Vec<Vector> = subset[1..].iter().map(|&i| &points[i] - base).collect();
        let raw = cross_normal(&spanning);
        if raw.is_zero() {
            return;
        }
        let normal = raw.primitive();
        let offset = normal.dot(base);
        let (mut above, mut below) = (false, false);
        for p in points {
            let s = normal.dot(p) - &offset;
            if s.is_positive() {
                above = true;
            } else if s.is_negative() {
                below = true;
            }
            if above && below {
                return;
            }
        }
        // Parallel opposite facets share the line of `normal`; the
        // outward orientation tells them apart.
        let (normal, offset) = if above {
            (-&normal, -offset)
        } else {
            (normal, offset)
        };
        hyperplanes.entry(normal).or_insert(offset);
    });
    hyperplanes
}

/// Coordinates below this bound after clearing denominators keep every
/// cofactor and side test of the integer hull within `i128`.
const INT_HULL_BOUND: i64 = 1 << 20;

/// The points scaled by the lcm of their denominators, if the result is small.
fn scaled_integers(points: &[Vector]) -> Option<(Vec<Vec<i64>>, Scalar)> {
    let l = denominator_lcm(points.iter().flat_map(|p| p.iter()));
    let scale = Scalar::from_integer(l);
    let pts = points
        .iter()
        .map(|p| {
            p.iter()
                .map(|x| {
                    (x * &scale)
                        .to_integer()
                        .to_i64()
                        .filter(|c| c.abs() < INT_HULL_BOUND)
                })
                .collect::<Option<Vec<i64>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    Some((pts, scale))
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let c = m[0][j] * det_i128(&minor);
                if j % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum(),
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i128(b, a % b)
    }
}

/// [`supporting_hyperplanes`] on integer points scaled by `scale`, in machine
/// integers. Same result, an order of magnitude faster.
fn supporting_hyperplanes_int(
    points: &[Vec<i64>],
    dim: usize,
    scale: &Scalar,
) -> BTreeMap<Vector, Scalar> {
    let mut found: BTreeMap<Vec<i128>, i128> = BTreeMap::new();
    for_each_subset(points.len(), dim, |subset| {
        let base = &points[subset[0]];
        let spanning: Vec<Vec<i128>> = subset[1..]
            .iter()
            .map(|&i| {
                points[i]
                    .iter()
                    .zip(base)
                    .map(|(a, b)| (*a - *b) as i128)
                    .collect()
            })
            .collect();
        let mut normal: Vec<i128> = (0..dim)
            .map(|i| {
                let minor: Vec<Vec<i128>> = spanning
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != i)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let m = det_i128(&minor);
                if i % 2 == 0 {
                    m
                } else {
                    -m
                }
            })
            .collect();
        let g = normal.iter().fold(0, |g, &x| gcd_i128(g, x));
        if g == 0 {
            return;
        }
        normal.iter_mut().for_each(|x| *x /= g);
        let dot = |p: &[i64]| -> i128 { normal.iter().zip(p).map(|(a, &b)| a * b as i128).sum() };
        let offset = dot(base);
        let (mut above, mut below) = (false, false);
        for p in points {
            let s = dot(p) - offset;
            above |= s > 0;
            below |= s < 0;
            if above && below {
                return;
            }
        }
        let (normal, offset) = if above {
            (normal.iter().map(|x| -x).collect(), -offset)
        } else {
            (normal, offset)
        };
        found.entry(normal).or_insert(offset);
    });
    found
        .into_iter()
        .map(|(n, b)| {
            let normal: Vector = n
                .into_iter()
                .map(|x| Scalar::from_integer(x.into()))
                .collect();
            (normal, Scalar::from_integer(b.into()) / scale)
        })
        .collect()
}

fn affine_span(points: &[&Vector]) -> AffineSpan {
    let base = points[0].clone();
    let diffs: Vec<Vector> = points[1..].iter().map(|p| *p - &base).collect();
    let directions = independent_rows(&diffs)
        .into_iter()
        .map(|i| diffs[i].clone())
        .collect();
    AffineSpan {
        point: base,
        directions,
    }
}

impl RationalPolytope {
    /// Builds the convex hull of `points`. Points that are not extreme
    /// (including duplicates) are dropped and reported by
    /// [`discarded_points`](Self::discarded_points).
    pub fn from_points(points: Vec<Vector>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput)?;
        let dim = first.dim();
        check_dim(dim)?;
        if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.dim(),
            });
        }

        let mut unique: Vec<Vector> = Vec::with_capacity(points.len());
        let mut discarded = Vec::new();
        for p in points {
            if unique.contains(&p) {
                discarded.push(p);
            } else {
                unique.push(p);
            }
        }
        if unique.len() < dim + 1 {
            return Err(Error::DegenerateInput(format!(
                "{} distinct points cannot span R^{dim}",
                unique.len()
            )));
        }
        let diffs: Vec<Vector> = unique[1..].iter().map(|p| p - &unique[0]).collect();
        if rank(&diffs) < dim {
            return Err(Error::DegenerateInput(format!(
                "points do not affinely span R^{dim}"
            )));
        }

        let hyperplanes = match scaled_integers(&unique) {
            Some((pts, scale)) => supporting_hyperplanes_int(&pts, dim, &scale),
            None => supporting_hyperplanes(&unique, dim),
        };

        // A point is a vertex iff the facet normals through it have full rank.
        let is_vertex: Vec<bool> = unique
            .iter()
            .map(|p| {
                let active: Vec<Vector> = hyperplanes
                    .iter()
                    .filter(|(n, b)| &n.dot(p) == *b)
                    .map(|(n, _)| n.clone())
                    .collect();
                rank(&active) == dim
            })
            .collect();
        let mut vertices = Vec::new();
        for (p, keep) in unique.into_iter().zip(is_vertex) {
            if keep {
                vertices.push(p);
            } else {
                discarded.push(p);
            }
        }

        let mut facets: Vec<Facet> = hyperplanes
            .into_iter()
            .map(|(normal, offset)| {
                let on: Vec<usize> = vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| normal.dot(v) == offset)
                    .map(|(i, _)| i)
                    .collect();
                Facet {
                    normal,
                    offset,
                    vertices: on,
                    face: usize::MAX,
                }
            })
            .collect();

        let (faces, face_lookup) = build_face_lattice(dim, &vertices, &mut facets);
        Ok(RationalPolytope {
            dim,
            vertices,
            facets,
            faces,
            face_lookup,
            discarded,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, idx: usize) -> &Face {
        &self.faces[idx]
    }

    /// Index of the polytope itself in the face list.
    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    /// Input points dropped because they were duplicates or not extreme.
    pub fn discarded_points(&self) -> &[Vector] {
        &self.discarded
    }

    pub fn face_by_vertices(&self, vertex_indices: &[usize]) -> Option<usize> {
        self.face_lookup.get(vertex_indices).copied()
    }

    pub fn face_vertices(&self, face: usize) -> impl Iterator<Item = &Vector> {
        self.faces[face]
            .vertex_indices
            .iter()
            .map(move |&i| &self.vertices[i])
    }

    pub fn faces_of_dim(&self, dim: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(move |&i| self.faces[i].dim == dim)
    }

    /// `true` if every vertex of `inner` is a vertex of `outer`.
    pub fn is_subface(&self, inner: usize, outer: usize) -> bool {
        let outer = &self.faces[outer].vertex_indices;
        self.faces[inner]
            .vertex_indices
            .iter()
            .all(|v| outer.binary_search(v).is_ok())
    }

    pub fn translated(&self, t: &Vector) -> RationalPolytope {
        let pts = self.vertices.iter().map(|v| v + t).collect();
        RationalPolytope::from_points(pts).expect("translate of a valid polytope")
    }

    /// The point reflection `-P`.
    pub fn reflected(&self) -> RationalPolytope {
        let pts = self.vertices.iter().map(|v| -v).collect();
        RationalPolytope::from_points(pts).expect("reflection of a valid polytope")
    }

    /// Componentwise bounds of the vertex set.
    pub fn bounding_box(&self) -> (Vector, Vector) {
        bounding_box(self.vertices.iter())
    }

    pub fn vertex_centroid(&self) -> Vector {
        centroid(self.vertices.iter())
    }

    /// Face of `face` on which `<direction, x>` is maximal.
    pub fn support_subface(&self, face: usize, direction: &Vector) -> Result<usize> {
        if direction.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let values: Vec<(usize, Scalar)> = self.faces[face]
            .vertex_indices
            .iter()
            .map(|&i| (i, direction.dot(&self.vertices[i])))
            .collect();
        let best = values
            .iter()
            .map(|(_, s)| s)
            .max()
            .expect("faces are nonempty")
            .clone();
        let argmax: Vec<usize> = values
            .into_iter()
            .filter(|(_, s)| *s == best)
            .map(|(i, _)| i)
            .collect();
        Ok(self
            .face_by_vertices(&argmax)
            .expect("a maximizing vertex set is always a face"))
    }

    /// The face on which `<direction, x>` attains its maximum over `P`.
    pub fn support_face(&self, direction: &Vector) -> Result<usize> {
        self.support_subface(self.top(), direction)
    }

    pub fn classify_point(&self, x: &Vector) -> PointClass {
        let mut tight = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            let s = f.normal.dot(x);
            if s > f.offset {
                return PointClass::Exterior;
            }
            if s == f.offset {
                tight.push(i);
            }
        }
        if tight.is_empty() {
            return PointClass::Interior;
        }
        let mut common: Vec<usize> = self.facets[tight[0]].vertices.clone();
        for &i in &tight[1..] {
            let other = &self.facets[i].vertices;
            common.retain(|v| other.binary_search(v).is_ok());
        }
        PointClass::Boundary(
            self.face_by_vertices(&common)
                .expect("intersection of facets is a face"),
        )
    }

    /// Pulling triangulation of a face: simplices as vertex index lists of
    /// length `dim + 1`, the first entry being the apex of the outermost cone.
    pub fn triangulate_face(&self, face: usize, apex: Option<usize>) -> Vec<Vec<usize>> {
        let f = &self.faces[face];
        if f.dim == 0 {
            return vec![f.vertex_indices.clone()];
        }
        let apex = apex.unwrap_or(f.vertex_indices[0]);
        debug_assert!(f.vertex_indices.contains(&apex));
        let mut out = Vec::new();
        for &g in &f.subfaces {
            if self.faces[g].vertex_indices.binary_search(&apex).is_ok() {
                continue;
            }
            for mut s in self.triangulate_face(g, None) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    }

    pub fn triangulate(&self) -> Vec<Vec<usize>> {
        self.triangulate_face(self.top(), None)
    }

    /// Exact `d`-volume.
    pub fn volume(&self) -> Scalar {
        self.volume_from_apex(self.faces[self.top()].vertex_indices[0])
    }

    /// Exact `d`-volume from the pulling triangulation with the given apex
    /// vertex. The value does not depend on the apex.
    pub fn volume_from_apex(&self, apex: usize) -> Scalar {
        let total =
            self.triangulate_face(self.top(), Some(apex))
                .iter()
                .fold(Scalar::zero(), |acc, s| {
                    let rows: Vec<Vector> = s[1..]
                        .iter()
                        .map(|&i| &self.vertices[i] - &self.vertices[s[0]])
                        .collect();
                    acc + determinant(&rows).abs()
                });
        total / factorial(self.dim)
    }

    /// Volume of a face after projecting it onto the coordinates in `coords`
    /// (which must have `face.dim` entries). Zero if the projection is
    /// degenerate.
    pub fn projected_face_volume(&self, face: usize, coords: &[usize]) -> Scalar {
        let k = self.faces[face].dim;
        debug_assert_eq!(coords.len(), k);
        if k == 0 {
            return Scalar::from_integer(1.into());
        }
        let total = self
            .triangulate_face(face, None)
            .iter()
            .fold(Scalar::zero(), |acc, s| {
                let rows: Vec<Vector> = s[1..]
                    .iter()
                    .map(|&i| {
                        let diff = &self.vertices[i] - &self.vertices[s[0]];
                        coords.iter().map(|&c| diff[c].clone()).collect()
                    })
                    .collect();
                acc + determinant(&rows).abs()
            });
        total / factorial(k)
    }

    /// Comparable proxies for the `(d-1)`-volumes of the support faces in
    /// directions `n` and `-n`: both are projected onto the coordinate
    /// hyperplane that drops the coordinate where `|n_i|` is largest.
    /// Lower-dimensional support faces give zero.
    pub fn facet_pair_volumes(&self, n: &Vector) -> Result<(Scalar, Scalar)> {
        if n.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: n.dim(),
            });
        }
        let plus = self.support_face(n)?;
        let minus = self.support_face(&-n)?;
        let drop = (0..self.dim)
            .max_by(|&a, &b| n[a].abs().cmp(&n[b].abs()).then(b.cmp(&a)))
            .expect("dim >= 2");
        let coords: Vec<usize> = (0..self.dim).filter(|&c| c != drop).collect();
        let proxy = |f: usize| {
            if self.faces[f].dim == self.dim - 1 {
                self.projected_face_volume(f, &coords)
            } else {
                Scalar::zero()
            }
        };
        Ok((proxy(plus), proxy(minus)))
    }
}

pub(crate) fn bounding_box<'a>(mut pts: impl Iterator<Item = &'a Vector>) -> (Vector, Vector) {
    let first = pts.next().expect("nonempty point set").clone();
    let (mut lo, mut hi) = (first.clone().into_coords(), first.into_coords());
    for p in pts {
        for (i, x) in p.iter().enumerate() {
            if *x < lo[i] {
                lo[i] = x.clone();
            }
            if *x > hi[i] {
                hi[i] = x.clone();
            }
        }
    }
    (Vector::new(lo), Vector::new(hi))
}

pub(crate) fn centroid<'a>(pts: impl Iterator<Item = &'a Vector>) -> Vector {
    let mut count = 0i64;
    let mut sum: Option<Vector> = None;
    for p in pts {
        count += 1;
        sum = Some(match sum {
            None => p.clone(),
            Some(s) => &s + p,
        });
    }
    let sum = sum.expect("nonempty point set");
    sum.scale(&Scalar::new(1.into(), count.into()))
}

fn build_face_lattice(
    dim: usize,
    vertices: &[Vector],
    facets: &mut [Facet],
) -> (Vec<Face>, HashMap<Vec<usize>, usize>) {
    // Closure of facet vertex sets under intersection.
    let mut sets: Vec<Vec<usize>> = facets.iter().map(|f| f.vertices.clone()).collect();
    let mut seen: HashMap<Vec<usize>, ()> = sets.iter().map(|s| (s.clone(), ())).collect();
    let mut frontier = sets.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for f in facets.iter() {
                let meet: Vec<usize> = s
                    .iter()
                    .copied()
                    .filter(|v| f.vertices.binary_search(v).is_ok())
                    .collect();
                if meet.is_empty() || seen.contains_key(&meet) {
                    continue;
                }
                seen.insert(meet.clone(), ());
                next.push(meet);
            }
        }
        sets.extend(next.iter().cloned());
        frontier = next;
    }
    sets.push((0..vertices.len()).collect());

    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|vs| {
            let pts: Vec<&Vector> = vs.iter().map(|&i| &vertices[i]).collect();
            let span = affine_span(&pts);
            let facet_ids = facets
                .iter()
                .enumerate()
                .filter(|(_, f)| vs.iter().all(|v| f.vertices.binary_search(v).is_ok()))
                .map(|(i, _)| i)
                .collect();
            Face {
                dim: span.directions.len(),
                vertex_indices: vs,
                affine_span: span,
                subfaces: Vec::new(),
                facets: facet_ids,
            }
        })
        .collect();
    // Stable order: by dimension, then by vertex set. The polytope stays last.
    faces.sort_by(|a, b| {
        a.dim
            .cmp(&b.dim)
            .then_with(|| a.vertex_indices.cmp(&b.vertex_indices))
    });
    debug_assert_eq!(faces.last().map(|f| f.dim), Some(dim));

    let lookup: HashMap<Vec<usize>, usize> = faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.vertex_indices.clone(), i))
        .collect();
    for i in 0..faces.len() {
        let d = faces[i].dim;
        if d == 0 {
            continue;
        }
        let subs: Vec<usize> = (0..faces.len())
            .filter(|&j| {
                faces[j].dim + 1 == d
                    && faces[j]
                        .vertex_indices
                        .iter()
                        .all(|v| faces[i].vertex_indices.binary_search(v).is_ok())
            })
            .collect();
        faces[i].subfaces = subs;
    }
    for f in facets.iter_mut() {
        f.face = lookup[&f.vertices];
    }
    (faces, lookup)
}
