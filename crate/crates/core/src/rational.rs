//! Exact rational scalars, vectors, and the small amount of dense linear
//! algebra the polytope kernel needs.
//!
//! Everything here is exact. Floating point only appears in [`Vector::to_f64`]
//! and [`to_f64`], which callers use when they leave the exact world on purpose
//! (solid angles, Fourier values).

// Row operations below index two rows of one matrix at a time.
#![allow(clippy::needless_range_loop)]

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always stored reduced with a positive
/// denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3/2"`, `"-1"`, `"0"`. Decimal points and exponents are rejected so
/// that no coordinate ever passes through a float.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::parse("scalar", "empty string"));
    }
    if t.contains(['.', 'e', 'E']) {
        return Err(Error::parse(
            "scalar",
            format!("`{t}` looks like a float; use a fraction string such as \"3/2\""),
        ));
    }
    let parse_int = |p: &str| -> Result<BigInt> {
        p.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::parse("scalar", format!("`{t}`: {e}")))
    };
    match t.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::parse(
                    "scalar",
                    format!("`{t}` has zero denominator"),
                ));
            }
            Ok(Scalar::new(n, d))
        }
        None => Ok(Scalar::from_integer(parse_int(t)?)),
    }
}

pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 only fails on overflow of both parts; fall back to a
        // scaled division.
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Least common multiple of denominators.
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Fractional part in `[0, 1)`.
pub fn fract(x: &Scalar) -> Scalar {
    x - x.floor()
}

/// Dense vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Scalar::zero(); dim])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = Scalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> Scalar {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector(self.0.iter().map(|x| x * s).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }

    /// Scales the vector to the unique primitive integer vector with the same
    /// direction (coprime entries, positive multiple).
    pub fn primitive(&self) -> Vector {
        let l = denominator_lcm(self.0.iter());
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|x| (x * Scalar::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return self.clone();
        }
        Vector(
            ints.into_iter()
                .map(|x| Scalar::from_integer(x / &g))
                .collect(),
        )
    }

    pub fn parse(s: &str) -> Result<Vector> {
        s.split(',')
            .map(parse_scalar)
            .collect::<Result<Vec<_>>>()
            .map(Vector)
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl From<Vec<Scalar>> for Vector {
    fn from(v: Vec<Scalar>) -> Self {
        Vector(v)
    }
}

impl FromIterator<Scalar> for Vector {
    fn from_iter<I: IntoIterator<Item = Scalar>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_scalar(x))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.dim()))?;
        for x in &self.0 {
            seq.serialize_element(&format_scalar(x))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        raw.iter()
            .map(|s| parse_scalar(s).map_err(de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Vector)
    }
}

/// Serializes a scalar as a fraction string.
pub fn serialize_scalar<S: Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_scalar(x))
}

/// Basis of the orthogonal complement of the row space of `rows` in `R^dim`.
pub fn nullspace(rows: &[Vector], dim: usize) -> Vec<Vector> {
    // Reduced row echelon form.
    let mut m: Vec<Vec<Scalar>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..dim {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(p, row);
        let pivot = m[row][col].clone();
        for c in 0..dim {
            m[row][c] = &m[row][c] / &pivot;
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..dim {
                let delta = &f * &m[row][c];
                m[r][c] -= delta;
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Scalar::zero(); dim];
            v[free] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            Vector(v)
        })
        .collect()
}

/// Row-reduces a copy of `rows` and returns the indices of a maximal linearly
/// independent subset, chosen greedily in input order.
pub fn independent_rows(rows: &[Vector]) -> Vec<usize> {
    let mut basis: Vec<(Vector, usize)> = Vec::new();
    let mut picked = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        for (b, pivot) in &basis {
            if !r.0[*pivot].is_zero() {
                let f = &r.0[*pivot] / &b.0[*pivot];
                r = &r - &b.scale(&f);
            }
        }
        if let Some(pivot) = r.0.iter().position(|x| !x.is_zero()) {
            basis.push((r, pivot));
            picked.push(idx);
        }
    }
    picked
}

pub fn rank(rows: &[Vector]) -> usize {
    independent_rows(rows).len()
}

/// Determinant of a square matrix given by rows.
pub fn determinant(rows: &[Vector]) -> Scalar {
    let n = rows.len();
    let mut m: Vec<Vec<Scalar>> = rows.iter().map(|r| r.0.clone()).collect();
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Solves `a x = b` for square nonsingular `a` (rows). Returns `None` when `a`
/// is singular.
pub fn solve(a: &[Vector], b: &Vector) -> Option<Vector> {
    let n = a.len();
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b.iter())
        .map(|(r, bi)| {
            let mut row = r.0.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(p, col);
        let pivot = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &pivot;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..=n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Inverse of a square matrix given by rows.
pub fn inverse(a: &[Vector]) -> Option<Vec<Vector>> {
    let n = a.len();
    // Solve for each column of the identity, then transpose.
    let cols: Vec<Vector> = (0..n)
        .map(|j| solve(a, &Vector::unit(n, j)))
        .collect::<Option<_>>()?;
    Some(transpose(&cols))
}

pub fn transpose(rows: &[Vector]) -> Vec<Vector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let n = rows[0].dim();
    (0..n)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// `m * x` where `m` is given by rows.
pub fn mat_vec(m: &[Vector], x: &Vector) -> Vector {
    m.iter().map(|r| r.dot(x)).collect()
}

/// Normal vector of the hyperplane spanned by `d - 1` vectors in `R^d`,
/// computed as the generalized cross product (signed cofactors). Zero when the
/// vectors are dependent.
pub fn cross_normal(vectors: &[Vector]) -> Vector {
    let d = vectors.len() + 1;
    (0..d)
        .map(|i| {
            let minor: Vec<Vector> = vectors
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let m = determinant(&minor);
            if i % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect()
}

/// Orthogonal projection of `x` onto the span of `basis` (assumed linearly
/// independent), via the Gram system.
pub fn project_onto_span(basis: &[Vector], x: &Vector) -> Vector {
    if basis.is_empty() {
        return Vector::zeros(x.dim());
    }
    let gram: Vec<Vector> = basis
        .iter()
        .map(|a| basis.iter().map(|b| a.dot(b)).collect())
        .collect();
    let rhs: Vector = basis.iter().map(|a| a.dot(x)).collect();
    let coeffs = solve(&gram, &rhs).expect("basis vectors must be independent");
    basis
        .iter()
        .zip(coeffs.iter())
        .fold(Vector::zeros(x.dim()), |acc, (b, c)| &acc + &b.scale(c))
}

/// Gram determinant `det(V V^T)` of the rows of `v`; equals the squared
/// `k`-volume of the parallelotope they span.
pub fn gram_determinant(v: &[Vector]) -> Scalar {
    let gram: Vec<Vector> = v
        .iter()
        .map(|a| v.iter().map(|b| a.dot(b)).collect())
        .collect();
    determinant(&gram)
}

pub fn factorial(n: usize) -> Scalar {
    (1..=n as i64).fold(Scalar::one(), |acc, k| acc * int(k))
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}
