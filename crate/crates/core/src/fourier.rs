//! Fourier transform of face indicators,
//! `hat 1_F(xi) = int_F exp(2 pi i <xi, x>) dF`.
//!
//! [`hat_indicator`] descends the face lattice. On a face `F` let `p` be the
//! orthogonal projection of `xi` onto the direction space of `F`. If `p = 0`
//! (decided exactly) the phase is constant on `F` and the transform is
//! `vol(F) exp(2 pi i <xi, x_F>)`. Otherwise the divergence theorem on `F`
//! gives
//!
//! ```text
//! hat 1_F(xi) = 1/(2 pi i) * sum_{G facet of F} <p, n_G> / |p|^2 * hat 1_G(xi)
//! ```
//!
//! with `n_G` the outward unit normal of `G` inside the affine hull of `F`.
//! Everything up to the unit normals and relative volumes is exact rational;
//! those need square roots and carry a tracked floating error bound.
//!
//! [`hat_quadrature`] is an independent check: it integrates over a
//! triangulation with tensor Gauss-Legendre rules on Duffy-collapsed cubes.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::{centroid, RationalPolytope};
use crate::rational::{
    determinant, factorial, fract, gram_determinant, project_onto_span, to_f64, Scalar, Vector,
};

const EPS: f64 = f64::EPSILON;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
    pub error_bound: f64,
}

impl ComplexValue {
    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn conj(&self) -> ComplexValue {
        ComplexValue {
            im: -self.im,
            ..*self
        }
    }

    /// Distance to another value.
    pub fn distance(&self, other: &ComplexValue) -> f64 {
        (self.re - other.re).hypot(self.im - other.im)
    }
}

/// `exp(2 pi i phi)` with the phase reduced modulo 1 exactly first.
fn unit_phase(phi: &Scalar) -> (f64, f64) {
    let t = 2.0 * PI * to_f64(&fract(phi));
    (t.cos(), t.sin())
}

/// Relative `k`-volume of a face, `k` its dimension. The top face uses the
/// exact volume; lower faces sum `sqrt(Gram) / k!` over a triangulation.
fn relative_volume(p: &RationalPolytope, face: usize) -> (f64, f64) {
    let f = p.face(face);
    if face == p.top() {
        let v = to_f64(&p.volume());
        return (v, 2.0 * EPS * v);
    }
    if f.dim == 0 {
        return (1.0, 0.0);
    }
    let k_fact = to_f64(&factorial(f.dim));
    let simplices = p.triangulate_face(face, None);
    let total: f64 = simplices
        .iter()
        .map(|s| {
            let edges: Vec<Vector> = s[1..]
                .iter()
                .map(|&i| &p.vertices()[i] - &p.vertices()[s[0]])
                .collect();
            to_f64(&gram_determinant(&edges)).sqrt() / k_fact
        })
        .sum();
    (total, 4.0 * EPS * total * simplices.len() as f64)
}

struct Recursion<'a> {
    p: &'a RationalPolytope,
    xi: &'a Vector,
    memo: HashMap<usize, ComplexValue>,
}

impl Recursion<'_> {
    fn eval(&mut self, face: usize) -> ComplexValue {
        if let Some(v) = self.memo.get(&face) {
            return *v;
        }
        let p = self.p;
        let f = p.face(face);
        let proj = project_onto_span(&f.affine_span.directions, self.xi);
        let value = if proj.is_zero() {
            let (vol, vol_err) = relative_volume(p, face);
            let (c, s) = unit_phase(&self.xi.dot(&f.affine_span.point));
            ComplexValue {
                re: vol * c,
                im: vol * s,
                error_bound: vol_err + 4.0 * EPS * vol,
            }
        } else {
            let proj_sq = proj.norm_sq();
            let inner = centroid(p.face_vertices(face));
            let (mut sre, mut sim, mut err) = (0.0, 0.0, 0.0);
            for &g in &f.subfaces {
                let gf = p.face(g);
                // Outward normal of G inside aff(F): the part of
                // (point of G - centroid of F) orthogonal to G's directions.
                let w = &gf.affine_span.point - &inner;
                let u = &w - &project_onto_span(&gf.affine_span.directions, &w);
                let ratio = proj.dot(&u) / &proj_sq;
                if ratio.is_zero() {
                    continue;
                }
                let coef = to_f64(&ratio) / to_f64(&u.norm_sq()).sqrt();
                let h = self.eval(g);
                sre += coef * h.re;
                sim += coef * h.im;
                err += coef.abs() * (h.error_bound + 4.0 * EPS * h.abs());
            }
            // Multiply by 1/(2 pi i) = -i/(2 pi).
            let scale = 1.0 / (2.0 * PI);
            let (re, im) = (sim * scale, -sre * scale);
            let n_terms = f.subfaces.len() as f64;
            ComplexValue {
                re,
                im,
                error_bound: err * scale + 4.0 * EPS * n_terms * re.hypot(im),
            }
        };
        self.memo.insert(face, value);
        value
    }
}

/// Fourier transform of `1_F` for a face `F` of `P`, measured with the
/// relative `dim F`-volume on `F`.
pub fn hat_face(p: &RationalPolytope, face: usize, xi: &Vector) -> Result<ComplexValue> {
    if xi.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: xi.dim(),
        });
    }
    let mut r = Recursion {
        p,
        xi,
        memo: HashMap::new(),
    };
    Ok(r.eval(face))
}

/// Fourier transform of `1_P` by recursion over the face lattice.
pub fn hat_indicator(p: &RationalPolytope, xi: &Vector) -> Result<ComplexValue> {
    hat_face(p, p.top(), xi)
}

/// Gauss-Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and its derivative.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push(((1.0 - x) / 2.0, w / 2.0));
    }
    out
}

/// Integral of `exp(2 pi i <xi, x>)` over one simplex with an `n`-point rule
/// per axis of the Duffy-collapsed cube.
fn simplex_integral(verts: &[Vec<f64>], xi: &[f64], rule: &[(f64, f64)]) -> (f64, f64) {
    let d = xi.len();
    // Phase is affine in x: <xi, v0> + sum_j s_j <xi, v_j - v_{j-1}>.
    let base: f64 = xi.iter().zip(&verts[0]).map(|(a, b)| a * b).sum();
    let steps: Vec<f64> = (1..=d)
        .map(|j| {
            xi.iter()
                .zip(verts[j].iter().zip(&verts[j - 1]))
                .map(|(a, (b, c))| a * (b - c))
                .sum()
        })
        .collect();
    let mut idx = vec![0usize; d];
    let (mut re, mut im) = (0.0, 0.0);
    loop {
        // s_j = u_1 * ... * u_j; Jacobian prod u_i^(d - i).
        let (mut s, mut phase, mut weight) = (1.0, base, 1.0);
        for (j, &i) in idx.iter().enumerate() {
            let (u, w) = rule[i];
            s *= u;
            phase += s * steps[j];
            weight *= w * u.powi((d - j - 1) as i32);
        }
        let t = 2.0 * PI * phase;
        re += weight * t.cos();
        im += weight * t.sin();
        let mut k = 0;
        loop {
            if k == d {
                return (re, im);
            }
            idx[k] += 1;
            if idx[k] < rule.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Largest number of nodes per axis the quadrature will try in dimension
/// `dim`: about 2^20 nodes per simplex.
pub fn quadrature_budget(dim: usize) -> usize {
    match dim {
        0..=2 => 1024,
        3 => 128,
        _ => 32,
    }
}

/// Fourier transform of `1_P` by numerical integration over a triangulation.
/// The node count per axis doubles until successive estimates agree to within
/// `tolerance`; the reported error bound is that last difference.
pub fn hat_quadrature(p: &RationalPolytope, xi: &Vector, tolerance: f64) -> Result<ComplexValue> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::parse("tolerance", "must be positive"));
    }
    if xi.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: xi.dim(),
        });
    }
    let xf = xi.to_f64();
    let simplices: Vec<(Vec<Vec<f64>>, f64)> = p
        .triangulate()
        .into_iter()
        .map(|s| {
            let rows: Vec<Vector> = s[1..]
                .iter()
                .map(|&i| &p.vertices()[i] - &p.vertices()[s[0]])
                .collect();
            let jac = to_f64(&determinant(&rows)).abs();
            let verts = s.iter().map(|&i| p.vertices()[i].to_f64()).collect();
            (verts, jac)
        })
        .collect();
    let integrate = |n: usize| -> (f64, f64) {
        let rule = gauss_legendre(n);
        simplices.iter().fold((0.0, 0.0), |(re, im), (verts, jac)| {
            let (a, b) = simplex_integral(verts, &xf, &rule);
            (re + jac * a, im + jac * b)
        })
    };
    let budget = quadrature_budget(p.dim());
    let mut n = 4;
    let mut prev = integrate(n);
    while n < budget {
        n *= 2;
        let cur = integrate(n);
        let diff = (cur.0 - prev.0).hypot(cur.1 - prev.1);
        if diff <= tolerance {
            return Ok(ComplexValue {
                re: cur.0,
                im: cur.1,
                error_bound: diff.max(EPS * 64.0),
            });
        }
        prev = cur;
    }
    Err(Error::ToleranceNotReached { budget })
}

/// Closed form for an axis-parallel box `[lo, hi]`.
pub fn box_transform(lo: &[f64], hi: &[f64], xi: &[f64]) -> (f64, f64) {
    let (mut re, mut im) = (1.0, 0.0);
    for ((a, b), x) in lo.iter().zip(hi).zip(xi) {
        let (fr, fi) = if *x == 0.0 {
            (b - a, 0.0)
        } else {
            // (exp(2 pi i x b) - exp(2 pi i x a)) / (2 pi i x)
            let (cb, sb) = ((2.0 * PI * x * b).cos(), (2.0 * PI * x * b).sin());
            let (ca, sa) = ((2.0 * PI * x * a).cos(), (2.0 * PI * x * a).sin());
            let (nr, ni) = (cb - ca, sb - sa);
            let den = 2.0 * PI * x;
            (ni / den, -nr / den)
        };
        let t = re * fr - im * fi;
        im = re * fi + im * fr;
        re = t;
    }
    (re, im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{frac, int};

    fn centered_square() -> RationalPolytope {
        let h = frac(1, 2);
        let pts = [(-1, -1), (1, -1), (1, 1), (-1, 1)]
            .iter()
            .map(|&(a, b)| Vector::new(vec![&h * int(a), &h * int(b)]))
            .collect();
        RationalPolytope::from_points(pts).unwrap()
    }

    #[test]
    fn zero_frequency_is_volume() {
        for p in [fixtures::oct7(), fixtures::cube(), fixtures::cell24()] {
            let h = hat_indicator(&p, &Vector::zeros(p.dim())).unwrap();
            assert_eq!(h.re, to_f64(&p.volume()));
            assert_eq!(h.im, 0.0);
        }
    }

    #[test]
    fn centered_box_half_frequency() {
        let h = hat_indicator(&centered_square(), &Vector::new(vec![frac(1, 2), int(0)])).unwrap();
        assert!((h.re - 2.0 / PI).abs() < 1e-12);
        assert!(h.im.abs() < 1e-12);
    }

    #[test]
    fn segment_face_case_one() {
        let sq = fixtures::square();
        let left: Vec<usize> = sq
            .faces_of_dim(1)
            .filter(|&e| sq.face_vertices(e).all(|v| v[0].is_zero()))
            .collect();
        let h = hat_face(&sq, left[0], &Vector::from_ints(&[1, 0])).unwrap();
        assert!((h.re - 1.0).abs() < 1e-15);
        assert!(h.im.abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let rule = gauss_legendre(5);
        let total: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((total - 1.0).abs() < 1e-14);
        // Exact through degree 9.
        let m: f64 = rule.iter().map(|(x, w)| w * x.powi(9)).sum();
        assert!((m - 0.1).abs() < 1e-14);
    }

    #[test]
    fn quadrature_matches_box() {
        let q = hat_quadrature(
            &centered_square(),
            &Vector::new(vec![frac(1, 2), int(0)]),
            1e-8,
        )
        .unwrap();
        assert!((q.re - 2.0 / PI).abs() <= 1e-8);
        assert!(q.im.abs() <= 1e-8);
        let z = hat_quadrature(&fixtures::oct7(), &Vector::zeros(2), 1e-10).unwrap();
        assert!((z.re - 7.0).abs() < 1e-10);
    }

    #[test]
    fn recursion_matches_quadrature_on_octagon() {
        let xi = Vector::new(vec![frac(1, 3), frac(1, 5)]);
        let h = hat_indicator(&fixtures::oct7(), &xi).unwrap();
        let q = hat_quadrature(&fixtures::oct7(), &xi, 1e-9).unwrap();
        assert!(h.distance(&q) <= 1e-6, "{h:?} vs {q:?}");
    }

    #[test]
    fn unreachable_tolerance_is_reported() {
        let xi = Vector::from_ints(&[40, 40, 40]);
        assert!(matches!(
            hat_quadrature(&fixtures::cube(), &xi, 1e-14),
            Err(Error::ToleranceNotReached { budget: 128 })
        ));
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(hat_quadrature(&fixtures::square(), &Vector::zeros(2), 0.0).is_err());
    }
}
