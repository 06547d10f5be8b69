//! Finite unions of translated lattices with multiplicities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{determinant, inverse, mat_vec, Scalar, Vector};

/// One summand `multiplicity * (basis * Z^d + offset)`. The basis is a square
/// matrix stored by rows; lattice points are `basis * z + offset` for integer
/// column vectors `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeComponent {
    basis: Vec<Vector>,
    inverse: Vec<Vector>,
    offset: Vector,
    multiplicity: u64,
}

impl LatticeComponent {
    pub fn new(basis: Vec<Vector>, offset: Vector, multiplicity: u64) -> Result<Self> {
        let d = offset.dim();
        if basis.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: basis.len(),
            });
        }
        if let Some(row) = basis.iter().find(|r| r.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: row.dim(),
            });
        }
        if multiplicity == 0 {
            return Err(Error::parse("multiplicity", "must be positive"));
        }
        if determinant(&basis).is_zero() {
            return Err(Error::SingularBasis);
        }
        let inverse = inverse(&basis).ok_or(Error::SingularBasis)?;
        Ok(LatticeComponent {
            basis,
            inverse,
            offset,
            multiplicity,
        })
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn offset(&self) -> &Vector {
        &self.offset
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn point(&self, z: &[i64]) -> Vector {
        let zv = Vector::from_ints(z);
        &mat_vec(&self.basis, &zv) + &self.offset
    }

    /// Integer coordinates of `x` if it is a point of this component.
    pub fn coordinates_of(&self, x: &Vector) -> Option<Vec<BigInt>> {
        let z = mat_vec(&self.inverse, &(x - &self.offset));
        z.iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Smallest positive `t` with `t * e_axis` in the (untranslated) lattice.
    fn axis_period(&self, axis: usize) -> Scalar {
        // t * e_axis = B z  <=>  z = t * (column `axis` of B^-1).
        let column: Vec<&Scalar> = self.inverse.iter().map(|row| &row[axis]).collect();
        let den = column
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num_gcd = column.iter().fold(BigInt::zero(), |acc, c| {
            acc.gcd(&(c.numer() * (&den / c.denom())))
        });
        Scalar::new(den, num_gcd)
    }
}

/// The multiset `Lambda`: a disjoint union of translated lattices, each with a
/// positive integer multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationMultiset {
    dim: usize,
    components: Vec<LatticeComponent>,
}

impl TranslationMultiset {
    pub fn new(components: Vec<LatticeComponent>) -> Result<Self> {
        let first = components.first().ok_or(Error::EmptyInput)?;
        let dim = first.offset.dim();
        if let Some(c) = components.iter().find(|c| c.offset.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: c.offset.dim(),
            });
        }
        Ok(TranslationMultiset { dim, components })
    }

    /// `Z^d` with multiplicity one.
    pub fn integer_lattice(dim: usize) -> Self {
        Self::scaled_integer_lattice(dim, &Scalar::one())
    }

    /// `scale * Z^d` with multiplicity one.
    pub fn scaled_integer_lattice(dim: usize, scale: &Scalar) -> Self {
        let basis = (0..dim)
            .map(|i| Vector::unit(dim, i).scale(scale))
            .collect();
        let c = LatticeComponent::new(basis, Vector::zeros(dim), 1)
            .expect("scaled identity is invertible");
        TranslationMultiset {
            dim,
            components: vec![c],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[LatticeComponent] {
        &self.components
    }

    /// Periods `(m_1, ..., m_d)` of the axis-aligned common sublattice
    /// `diag(m) Z^d` contained in every component lattice. Counting functions
    /// of the multiset are invariant under translation by this sublattice.
    pub fn period(&self) -> Vector {
        (0..self.dim)
            .map(|axis| {
                self.components
                    .iter()
                    .map(|c| c.axis_period(axis))
                    .reduce(|a, b| rational_lcm(&a, &b))
                    .expect("at least one component")
            })
            .collect()
    }

    /// Multiplicity of `x` in the multiset.
    pub fn multiplicity_of(&self, x: &Vector) -> u64 {
        self.components
            .iter()
            .filter(|c| c.coordinates_of(x).is_some())
            .map(|c| c.multiplicity)
            .sum()
    }

    /// All points in the closed box `[lo, hi]`, one entry per component hit,
    /// with that component's multiplicity. A point lying in several components
    /// appears once per component.
    pub fn points_in_box(&self, lo: &Vector, hi: &Vector) -> Vec<(Vector, u64)> {
        let mut out = Vec::new();
        for c in &self.components {
            // Range of each integer coordinate over the preimage of the box.
            let ranges: Vec<(i64, i64)> = c
                .inverse
                .iter()
                .map(|row| {
                    let (mut min, mut max) = (-c.offset.dot(row), -c.offset.dot(row));
                    for (j, a) in row.iter().enumerate() {
                        let (x, y) = (a * &lo[j], a * &hi[j]);
                        let (small, big) = if x <= y { (x, y) } else { (y, x) };
                        min += small;
                        max += big;
                    }
                    (
                        min.ceil()
                            .to_integer()
                            .to_i64()
                            .expect("coordinate range fits i64"),
                        max.floor()
                            .to_integer()
                            .to_i64()
                            .expect("coordinate range fits i64"),
                    )
                })
                .collect();
            if ranges.iter().any(|(a, b)| a > b) {
                continue;
            }
            let mut z: Vec<i64> = ranges.iter().map(|r| r.0).collect();
            'outer: loop {
                let p = c.point(&z);
                if p.iter()
                    .enumerate()
                    .all(|(j, x)| *x >= lo[j] && *x <= hi[j])
                {
                    out.push((p, c.multiplicity));
                }
                for i in 0..z.len() {
                    if z[i] < ranges[i].1 {
                        z[i] += 1;
                        continue 'outer;
                    }
                    z[i] = ranges[i].0;
                }
                break;
            }
        }
        out
    }
}

/// Least positive rational that is an integer multiple of both `a` and `b`.
fn rational_lcm(a: &Scalar, b: &Scalar) -> Scalar {
    Scalar::new(a.numer().lcm(b.numer()), a.denom().gcd(b.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn integer_lattice_box_enumeration() {
        let z2 = TranslationMultiset::integer_lattice(2);
        let pts = z2.points_in_box(
            &Vector::new(vec![frac(-1, 2), frac(-1, 2)]),
            &Vector::new(vec![frac(3, 2), int(1)]),
        );
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn skew_lattice_period_and_membership() {
        // Basis rows (1, 1/2), (0, 1): points (z1 + z2/2, z2).
        let basis = vec![
            Vector::new(vec![int(1), frac(1, 2)]),
            Vector::new(vec![int(0), int(1)]),
        ];
        let c = LatticeComponent::new(basis, Vector::zeros(2), 2).unwrap();
        let lam = TranslationMultiset::new(vec![c]).unwrap();
        assert_eq!(lam.period(), Vector::from_ints(&[1, 2]));
        assert_eq!(
            lam.multiplicity_of(&Vector::new(vec![frac(1, 2), int(1)])),
            2
        );
        assert_eq!(lam.multiplicity_of(&Vector::from_ints(&[0, 1])), 0);
        let pts = lam.points_in_box(&Vector::from_ints(&[0, 0]), &Vector::from_ints(&[1, 1]));
        // (0,0), (1,0), (1/2,1)
        assert_eq!(pts.len(), 3);
    }

    #[test]
    fn union_period_is_common() {
        let half = TranslationMultiset::scaled_integer_lattice(2, &frac(1, 2));
        let third = TranslationMultiset::scaled_integer_lattice(2, &frac(1, 3));
        let mut comps = half.components().to_vec();
        comps.extend(third.components().iter().cloned());
        let lam = TranslationMultiset::new(comps).unwrap();
        assert_eq!(lam.period(), Vector::from_ints(&[1, 1]));
    }

    #[test]
    fn singular_basis_rejected() {
        let basis = vec![Vector::from_ints(&[1, 2]), Vector::from_ints(&[2, 4])];
        assert!(matches!(
            LatticeComponent::new(basis, Vector::zeros(2), 1),
            Err(Error::SingularBasis)
        ));
    }
}
