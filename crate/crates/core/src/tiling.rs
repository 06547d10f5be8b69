//! Counting multiset points in translates, general-position sampling, the
//! rational-lattice construction of `k`, and sampled `k`-tiling verification.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::TranslationMultiset;
use crate::polytope::{PointClass, RationalPolytope};
use crate::rational::{denominator_lcm, Scalar, Vector};
use crate::symmetry::minkowski_verdict;

/// Denominator of sampled translate coordinates, `2^31 - 1`.
pub const SAMPLE_PRIME: i64 = 2_147_483_647;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_MAX_ATTEMPTS: usize = 64;
/// Number of translates `compute_k_rational` samples to confirm constancy.
pub const RATIONAL_K_SAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PointCounts {
    pub interior: u64,
    pub boundary: u64,
}

/// Every multiset point in the closed translate `P + v`, with its multiplicity
/// and its class relative to `P` (evaluated at `lambda - v`).
pub fn points_in_translate(
    lambda: &TranslationMultiset,
    p: &RationalPolytope,
    v: &Vector,
) -> Vec<(Vector, u64, PointClass)> {
    let (lo, hi) = p.bounding_box();
    lambda
        .points_in_box(&(&lo + v), &(&hi + v))
        .into_iter()
        .filter_map(|(x, m)| {
            let class = p.classify_point(&(&x - v));
            (class != PointClass::Exterior).then_some((x, m, class))
        })
        .collect()
}

/// Interior and boundary counts of `Lambda` in `P + v`, with multiplicity.
pub fn count_points(lambda: &TranslationMultiset, p: &RationalPolytope, v: &Vector) -> PointCounts {
    points_in_translate(lambda, p, v).into_iter().fold(
        PointCounts::default(),
        |mut acc, (_, m, class)| {
            match class {
                PointClass::Interior => acc.interior += m,
                PointClass::Boundary(_) => acc.boundary += m,
                PointClass::Exterior => {}
            }
            acc
        },
    )
}

/// Draws one candidate translate inside the period box, coordinates with
/// denominator [`SAMPLE_PRIME`].
fn draw_translate<R: Rng>(rng: &mut R, period: &Vector) -> Vector {
    period
        .iter()
        .map(|m| {
            let a = rng.random_range(0..SAMPLE_PRIME);
            m * Scalar::new(BigInt::from(a), BigInt::from(SAMPLE_PRIME))
        })
        .collect()
}

pub(crate) fn sample_general_position_with<R: Rng>(
    p: &RationalPolytope,
    lambda: &TranslationMultiset,
    rng: &mut R,
    max_attempts: usize,
) -> Result<(Vector, PointCounts)> {
    let period = lambda.period();
    for _ in 0..max_attempts {
        let v = draw_translate(rng, &period);
        let counts = count_points(lambda, p, &v);
        if counts.boundary == 0 {
            return Ok((v, counts));
        }
    }
    Err(Error::ExhaustedAttempts {
        attempts: max_attempts,
    })
}

/// A translate `v` (reduced into the period box of `Lambda`) such that no
/// point of `Lambda` lies on the boundary of `P + v`.
pub fn sample_general_position(
    p: &RationalPolytope,
    lambda: &TranslationMultiset,
    seed: u64,
    max_attempts: usize,
) -> Result<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_general_position_with(p, lambda, &mut rng, max_attempts).map(|(v, _)| v)
}

/// Whether `v` is in general position for `P` and `Lambda`.
pub fn is_general_position(p: &RationalPolytope, lambda: &TranslationMultiset, v: &Vector) -> bool {
    count_points(lambda, p, v).boundary == 0
}

/// Independent generator for trial `index` of a run seeded with `seed`.
pub(crate) fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalK {
    /// Lcm of all vertex-coordinate denominators.
    #[serde(rename = "N")]
    pub n: u64,
    /// Multiplicity of the tiling by `(1/N) Z^d`.
    pub k: u64,
}

/// For a centrally symmetric rational polytope with centrally symmetric
/// facets: the lattice `(1/N) Z^d` it tiles with, and the multiplicity `k`.
/// The count is taken at several independent generic translates and checked
/// against `k = N^d vol(P)`.
pub fn compute_k_rational(p: &RationalPolytope) -> Result<RationalK> {
    if !minkowski_verdict(p).passed() {
        return Err(Error::SymmetryPreconditionFailed);
    }
    let n = denominator_lcm(p.vertices().iter().flat_map(|v| v.iter()));
    let lattice = TranslationMultiset::scaled_integer_lattice(
        p.dim(),
        &Scalar::new(BigInt::one(), n.clone()),
    );
    let counts: Vec<u64> = (0..RATIONAL_K_SAMPLES as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(DEFAULT_SEED, i);
            sample_general_position_with(p, &lattice, &mut rng, DEFAULT_MAX_ATTEMPTS)
                .map(|(_, c)| c.interior)
        })
        .collect::<Result<_>>()?;
    let k = counts[0];
    if let Some(&other) = counts.iter().find(|&&c| c != k) {
        return Err(Error::InconsistentCounts {
            first: k,
            second: other,
        });
    }
    let expected = p.volume() * Scalar::from_integer(num_traits::pow(n.clone(), p.dim()));
    if expected != Scalar::from_integer(BigInt::from(k)) {
        let second = expected.to_integer().to_u64().unwrap_or(u64::MAX);
        return Err(Error::InconsistentCounts { first: k, second });
    }
    Ok(RationalK {
        n: n.to_u64().expect("denominator lcm fits in u64"),
        k,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Verdict {
    Verified {
        k: u64,
    },
    /// Two general-position translates with different interior counts.
    Refuted {
        v1: Vector,
        count1: u64,
        v2: Vector,
        count2: u64,
    },
    #[serde(rename_all = "camelCase")]
    ExactVerified {
        k: u64,
        cells_checked: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KTilingReport {
    pub verdict: Verdict,
    pub trials: u64,
    pub seed: Option<u64>,
}

impl KTilingReport {
    pub fn k(&self) -> Option<u64> {
        match self.verdict {
            Verdict::Verified { k } | Verdict::ExactVerified { k, .. } => Some(k),
            Verdict::Refuted { .. } => None,
        }
    }
}

/// Folds `(translate, count)` samples into a verdict: constant counts verify,
/// otherwise the first sample is paired with the first one that differs.
pub(crate) fn fold_counts(samples: Vec<(Vector, u64)>) -> std::result::Result<u64, Verdict> {
    let mut it = samples.into_iter();
    let (v1, count1) = it.next().expect("at least one sample");
    for (v2, count2) in it {
        if count2 != count1 {
            return Err(Verdict::Refuted {
                v1,
                count1,
                v2,
                count2,
            });
        }
    }
    Ok(count1)
}

/// Samples `trials` general-position translates and compares their interior
/// counts. A `Verified` verdict is probabilistic evidence, not a proof; a
/// `Refuted` verdict is exact.
///
/// Trial `i` draws from its own stream of the seeded generator, so the result
/// does not depend on how trials are scheduled across threads.
pub fn verify_k_tiling_sampled(
    p: &RationalPolytope,
    lambda: &TranslationMultiset,
    trials: u64,
    seed: u64,
) -> Result<KTilingReport> {
    if trials == 0 {
        return Err(Error::parse("trials", "must be at least 1"));
    }
    if p.dim() != lambda.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: lambda.dim(),
        });
    }
    let samples: Vec<(Vector, u64)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            sample_general_position_with(p, lambda, &mut rng, DEFAULT_MAX_ATTEMPTS)
                .map(|(v, c)| (v, c.interior))
        })
        .collect::<Result<_>>()?;
    let verdict = match fold_counts(samples) {
        Ok(k) => Verdict::Verified { k },
        Err(refuted) => refuted,
    };
    Ok(KTilingReport {
        verdict,
        trials,
        seed: Some(seed),
    })
}
