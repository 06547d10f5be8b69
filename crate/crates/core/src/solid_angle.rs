//! Solid angles `omega_P(x)`: the fraction of a small ball around `x` that lies
//! in `P`.
//!
//! The angle only depends on the minimal face containing `x`, so values are
//! computed per face and cached. Interior points and exterior points are exact
//! (1 and 0), as is the relative interior of a facet (1/2). Faces lying on
//! exactly two facets form a wedge whose angle has a closed form in every
//! dimension. Remaining cones are handled by dimension: polygon vertices from
//! the interior angle, 3D vertices by splitting the tangent cone into
//! simplicial cones and summing their spherical excesses, and 4D by Monte
//! Carlo on the sphere.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::lattice::TranslationMultiset;
use crate::polytope::{PointClass, RationalPolytope};
use crate::rational::Vector;
use crate::tiling::{points_in_translate, DEFAULT_SEED};

pub const DEFAULT_MC_SAMPLES: u64 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum AngleMethod {
    /// Value known in closed form without evaluation: interior, exterior, or
    /// the relative interior of a facet.
    Exact,
    Exact2D,
    Exact3D,
    MonteCarlo {
        samples: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SolidAngleValue {
    pub value: f64,
    pub absolute_error_bound: f64,
    pub method: AngleMethod,
}

impl SolidAngleValue {
    fn exact(value: f64) -> Self {
        SolidAngleValue {
            value,
            absolute_error_bound: 0.0,
            method: AngleMethod::Exact,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AngleOptions {
    pub mc_samples: u64,
    pub seed: u64,
}

impl Default for AngleOptions {
    fn default() -> Self {
        AngleOptions {
            mc_samples: DEFAULT_MC_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

/// Solid angle evaluator for one polytope with a per-face cache.
pub struct SolidAngles<'a> {
    polytope: &'a RationalPolytope,
    options: AngleOptions,
    cache: Vec<OnceLock<SolidAngleValue>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Contribution {
    pub lambda: Vector,
    pub multiplicity: u64,
    pub angle: SolidAngleValue,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AngleSum {
    pub sum: f64,
    pub error_bound: f64,
    pub contributions: Vec<Contribution>,
}

const EPS: f64 = f64::EPSILON;

impl<'a> SolidAngles<'a> {
    pub fn new(polytope: &'a RationalPolytope, options: AngleOptions) -> Self {
        let cache = (0..polytope.faces().len())
            .map(|_| OnceLock::new())
            .collect();
        SolidAngles {
            polytope,
            options,
            cache,
        }
    }

    pub fn at(&self, x: &Vector) -> SolidAngleValue {
        match self.polytope.classify_point(x) {
            PointClass::Interior => SolidAngleValue::exact(1.0),
            PointClass::Exterior => SolidAngleValue::exact(0.0),
            PointClass::Boundary(face) => self.at_face(face),
        }
    }

    /// Angle at any point of the relative interior of `face`.
    pub fn at_face(&self, face: usize) -> SolidAngleValue {
        *self.cache[face].get_or_init(|| self.compute(face))
    }

    fn compute(&self, face: usize) -> SolidAngleValue {
        let p = self.polytope;
        let f = p.face(face);
        if face == p.top() {
            return SolidAngleValue::exact(1.0);
        }
        let normals: Vec<Vec<f64>> = f
            .facets
            .iter()
            .map(|&i| p.facets()[i].normal.to_f64())
            .collect();
        match normals.len() {
            1 => return SolidAngleValue::exact(0.5),
            2 if p.dim() > 2 => {
                let method = if p.dim() == 3 {
                    AngleMethod::Exact3D
                } else {
                    AngleMethod::Exact
                };
                return wedge(&normals[0], &normals[1], method);
            }
            _ => {}
        }
        match p.dim() {
            2 => self.polygon_vertex(face),
            3 => self.spherical_vertex(face),
            _ => self.monte_carlo(face, &normals),
        }
    }

    fn polygon_vertex(&self, face: usize) -> SolidAngleValue {
        let p = self.polytope;
        let v = p.face(face).vertex_indices[0];
        let x = p.vertices()[v].to_f64();
        let rays: Vec<Vec<f64>> = p
            .faces_of_dim(1)
            .filter(|&e| p.face(e).vertex_indices.contains(&v))
            .map(|e| {
                let other = *p.face(e).vertex_indices.iter().find(|&&w| w != v).unwrap();
                let y = p.vertices()[other].to_f64();
                vec![y[0] - x[0], y[1] - x[1]]
            })
            .collect();
        let (a, b) = (&rays[0], &rays[1]);
        let cross = a[0] * b[1] - a[1] * b[0];
        let dot = a[0] * b[0] + a[1] * b[1];
        let angle = cross.abs().atan2(dot);
        SolidAngleValue {
            value: angle / (2.0 * PI),
            absolute_error_bound: 16.0 * EPS,
            method: AngleMethod::Exact2D,
        }
    }

    /// Tangent cone at a vertex, split into the simplicial cones of the
    /// pulling triangulation from that vertex.
    fn spherical_vertex(&self, face: usize) -> SolidAngleValue {
        let p = self.polytope;
        let apex = p.face(face).vertex_indices[0];
        let x = p.vertices()[apex].to_f64();
        let simplices = p.triangulate_face(p.top(), Some(apex));
        let mut omega = 0.0;
        for s in &simplices {
            let r: Vec<[f64; 3]> = s[1..]
                .iter()
                .map(|&i| {
                    let y = p.vertices()[i].to_f64();
                    [y[0] - x[0], y[1] - x[1], y[2] - x[2]]
                })
                .collect();
            omega += triangle_solid_angle(&r[0], &r[1], &r[2]);
        }
        SolidAngleValue {
            value: omega / (4.0 * PI),
            absolute_error_bound: 64.0 * EPS * simplices.len() as f64,
            method: AngleMethod::Exact3D,
        }
    }

    fn monte_carlo(&self, face: usize, normals: &[Vec<f64>]) -> SolidAngleValue {
        let n = self.options.mc_samples.max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(self.options.seed);
        rng.set_stream(face as u64);
        let d = self.polytope.dim();
        let mut hits = 0u64;
        let mut u = vec![0.0f64; d];
        for _ in 0..n {
            for c in u.iter_mut() {
                *c = StandardNormal.sample(&mut rng);
            }
            let inside = normals
                .iter()
                .all(|a| a.iter().zip(&u).map(|(x, y)| x * y).sum::<f64>() <= 0.0);
            if inside {
                hits += 1;
            }
        }
        let p_hat = hits as f64 / n as f64;
        // Four standard errors; floor at 1/n so a zero-variance estimate still
        // reports a nonzero bound.
        let se = (p_hat * (1.0 - p_hat) / n as f64)
            .sqrt()
            .max(1.0 / n as f64);
        SolidAngleValue {
            value: p_hat,
            absolute_error_bound: 4.0 * se,
            method: AngleMethod::MonteCarlo { samples: n },
        }
    }

    /// `sum_lambda omega_{P+v}(lambda)` with multiplicities. Only points of
    /// the closed translate contribute.
    pub fn sum(&self, lambda: &TranslationMultiset, v: &Vector) -> AngleSum {
        let pts = points_in_translate(lambda, self.polytope, v);
        let contributions: Vec<Contribution> = pts
            .into_par_iter()
            .map(|(x, m, class)| {
                let angle = match class {
                    PointClass::Interior => SolidAngleValue::exact(1.0),
                    PointClass::Boundary(face) => self.at_face(face),
                    PointClass::Exterior => unreachable!("filtered by points_in_translate"),
                };
                Contribution {
                    lambda: x,
                    multiplicity: m,
                    angle,
                }
            })
            .collect();
        let (sum, error_bound) = contributions.iter().fold((0.0, 0.0), |(s, e), c| {
            let m = c.multiplicity as f64;
            (s + m * c.angle.value, e + m * c.angle.absolute_error_bound)
        });
        AngleSum {
            sum,
            error_bound: error_bound + EPS * contributions.len() as f64 * sum.abs(),
            contributions,
        }
    }
}

/// Dihedral wedge bounded by two facets with outward normals `a` and `b`.
fn wedge(a: &[f64], b: &[f64], method: AngleMethod) -> SolidAngleValue {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    let cos = (dot / (na * nb)).clamp(-1.0, 1.0);
    // Interior dihedral angle is pi minus the angle between outward normals.
    let interior = PI - cos.acos();
    // acos amplifies the error in `cos` by 1/sin.
    let sin = (1.0 - cos * cos).sqrt().max(EPS);
    SolidAngleValue {
        value: interior / (2.0 * PI),
        absolute_error_bound: (8.0 * EPS / sin + 8.0 * EPS) / (2.0 * PI),
        method,
    }
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Solid angle (steradians) of the cone spanned by three rays: the spherical
/// excess of the triangle they cut from the unit sphere, in the
/// `tan(E/2)` form that stays accurate for thin triangles.
pub fn triangle_solid_angle(a: &[f64; 3], b: &[f64; 3], c: &[f64; 3]) -> f64 {
    let (la, lb, lc) = (dot3(a, a).sqrt(), dot3(b, b).sqrt(), dot3(c, c).sqrt());
    let triple = dot3(a, &cross(b, c)).abs();
    let denom = la * lb * lc + dot3(a, b) * lc + dot3(a, c) * lb + dot3(b, c) * la;
    2.0 * triple.atan2(denom)
}

/// Solid angle of `P` at `x` with default options.
pub fn solid_angle(p: &RationalPolytope, x: &Vector) -> SolidAngleValue {
    SolidAngles::new(p, AngleOptions::default()).at(x)
}

/// `sum_lambda omega_{P+v}(lambda)` with default options.
pub fn solid_angle_sum(p: &RationalPolytope, lambda: &TranslationMultiset, v: &Vector) -> AngleSum {
    SolidAngles::new(p, AngleOptions::default()).sum(lambda, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::frac;

    fn z(d: usize) -> TranslationMultiset {
        TranslationMultiset::integer_lattice(d)
    }

    #[test]
    fn corner_angles() {
        let a = solid_angle(&fixtures::square(), &Vector::zeros(2));
        assert!((a.value - 0.25).abs() <= a.absolute_error_bound);
        assert!(a.absolute_error_bound <= 1e-12);
        let a = solid_angle(&fixtures::cube(), &Vector::zeros(3));
        assert!((a.value - 0.125).abs() <= a.absolute_error_bound);
        assert!(a.absolute_error_bound <= 1e-9);
    }

    #[test]
    fn edge_interior_is_half() {
        let a = solid_angle(&fixtures::oct7(), &Vector::from_ints(&[1, 1]));
        assert_eq!(a.value, 0.5);
        assert_eq!(a.absolute_error_bound, 0.0);
    }

    #[test]
    fn interior_and_exterior() {
        let sq = fixtures::square();
        let mid = Vector::new(vec![frac(1, 2), frac(1, 2)]);
        assert_eq!(solid_angle(&sq, &mid).value, 1.0);
        assert_eq!(solid_angle(&sq, &Vector::from_ints(&[3, 3])).value, 0.0);
    }

    #[test]
    fn cube_edge_is_quarter() {
        let a = solid_angle(
            &fixtures::cube(),
            &Vector::new(vec![frac(1, 2), frac(0, 1), frac(0, 1)]),
        );
        assert!((a.value - 0.25).abs() <= 1e-12);
    }

    #[test]
    fn octahedron_vertex() {
        // The tangent cone at e1 is spanned by the rays towards the other
        // four vertices adjacent to e1; fan it around the axis -e1.
        let a = solid_angle(&fixtures::octahedron(), &Vector::from_ints(&[1, 0, 0]));
        let r = [
            [-1.0, 1.0, 0.0],
            [-1.0, 0.0, 1.0],
            [-1.0, -1.0, 0.0],
            [-1.0, 0.0, -1.0],
        ];
        let o = [-1.0, 0.0, 0.0];
        let oracle: f64 = (0..4)
            .map(|i| triangle_solid_angle(&o, &r[i], &r[(i + 1) % 4]))
            .sum::<f64>()
            / (4.0 * PI);
        assert!((a.value - oracle).abs() < 1e-12);
    }

    #[test]
    fn angle_sums() {
        let s = solid_angle_sum(&fixtures::square(), &z(2), &Vector::zeros(2));
        assert_eq!(s.contributions.len(), 4);
        assert!((s.sum - 1.0).abs() <= s.error_bound);
        let s = solid_angle_sum(&fixtures::oct7(), &z(2), &Vector::zeros(2));
        assert!((s.sum - 7.0).abs() <= 1e-9);
        let s = solid_angle_sum(
            &fixtures::oct7(),
            &z(2),
            &Vector::new(vec![frac(1, 10), frac(1, 10)]),
        );
        assert_eq!(s.sum, 7.0);
    }
}
