//! Exact-arithmetic chamber decompositions for linearized torus
//! actions on affine space: integer lattice computations, double
//! description cones, polyhedra and normal fans, wall-arrangement
//! chambers, per-character quotient data, and the chamber
//! correspondence with the diagonal action on a product of projective
//! lines.
//!
//! All geometry is generic over an exact integer [`Scalar`]; the
//! aliases below fix the default arbitrary-precision instantiation.

// Index-based loops mirror the usual matrix-elimination notation.
#![allow(clippy::needless_range_loop)]
#![allow(clippy::type_complexity)]
#![allow(clippy::too_many_arguments)]

pub mod arrangement;
pub mod cone;
pub mod fan;
pub mod json;
pub mod lp;
pub mod matrix;
pub mod oracle;
pub mod pgl2;
pub mod polyhedron;
pub mod scalar;
pub mod toric;
pub mod vector;

pub use scalar::{Int, Rat, Ratio, Scalar};
pub use vector::{IntVec, RatVec, Sign};

/// Integer vector over the default scalar.
pub type Vector = IntVec<Int>;
/// Rational point over the default scalar.
pub type Point = RatVec<Int>;
/// Integer matrix over the default scalar.
pub type Matrix = matrix::IntMat<Int>;
/// Cone over the default scalar.
pub type Cone = cone::Cone<Int>;
/// Polyhedron over the default scalar.
pub type Polyhedron = polyhedron::Polyhedron<Int>;
/// Fan over the default scalar.
pub type Fan = fan::Fan<Int>;
/// Weight configuration over the default scalar.
pub type Weights = toric::WeightConfiguration<Int>;
