//! Exact-arithmetic toolkit for lattice Fano polytopes and the toric varieties
//! their face fans define.
//!
//! The library decides, for a smooth toric Fano variety given as a lattice
//! polytope, whether it is fibre-like (a general fibre of a Mori fibre space,
//! detected through the automorphism action on vertices) and whether it is
//! K-stable (barycentre criterion), and it classifies smooth Fano polytopes in
//! low dimension up to lattice equivalence.
//!
//! Every computation is exact: integers are arbitrary precision by default and
//! rationals are normalized fractions. There is no floating point anywhere.
//!
//! Core types are generic over the integer scalar (see [`Scalar`]); the crate
//! root fixes the default instantiations used by the CLI and most callers.

#![forbid(unsafe_code)]

pub mod analysis;
pub mod catalog;
pub mod classify;
pub mod error;
pub mod io;
pub mod kstability;
pub mod linalg;
pub mod polytope;
pub mod primitive;
pub mod scalar;
pub mod symmetry;
pub mod toric;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Default integer scalar: arbitrary precision.
pub type Int = num_bigint::BigInt;
/// Default exact rational scalar.
pub type Rat = num_rational::BigRational;

pub type IntVector = linalg::Vector<Int>;
pub type IntMatrix = linalg::Matrix<Int>;
pub type RatVector = linalg::Vector<Rat>;
pub type RatMatrix = linalg::Matrix<Rat>;

pub type LatticePolytope = polytope::LatticePolytope<Int>;
pub type RationalPolytope = polytope::RationalPolytope<Int>;
pub type Facet = polytope::Facet<Int>;
pub type FaceFan = toric::FaceFan<Int>;
pub type LatticeAutGroup = symmetry::LatticeAutGroup<Int>;
pub type CanonicalForm = classify::CanonicalForm;
pub type AnalysisReport = analysis::AnalysisReport<Int>;
