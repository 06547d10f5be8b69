//! Exact-arithmetic toolkit for multiple tilings of `R^d` by translates of a
//! convex rational polytope.
//!
//! A polytope `P` *k-tiles* with a multiset `Lambda` of translation vectors if
//! almost every point of space lies in exactly `k` of the translates
//! `P + lambda`. Equivalently, `#(Lambda ∩ (P + v)) = k` for every `v` in
//! general position. The crate provides:
//!
//! - [`polytope`]: exact hulls, face lattices, volumes, point classification;
//! - [`symmetry`]: central symmetry of the body and of every facet, the
//!   necessary condition for `k`-tiling;
//! - [`tiling`] and [`arrangement`]: lattice point counts, the rational
//!   construction `(N, k)`, sampled verification, and exact verification in
//!   the plane;
//! - [`boundary`]: iterated boundary operators along orthogonal frames with
//!   their signed-volume and lattice-sum identities;
//! - [`solid_angle`]: solid-angle sums, valid at every translate;
//! - [`fourier`]: the Fourier transform of `1_P` by recursion over the face
//!   lattice, plus an independent quadrature.

pub mod arrangement;
pub mod boundary;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod fourier;
pub mod io;
pub mod lattice;
pub mod polytope;
pub mod rational;
pub mod solid_angle;
pub mod svg;
pub mod symmetry;
pub mod tiling;

pub use error::{Error, Result};
pub use lattice::{LatticeComponent, TranslationMultiset};
pub use polytope::{Face, Facet, PointClass, RationalPolytope};
pub use rational::{Scalar, Vector};
