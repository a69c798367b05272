//! Exact-arithmetic canonical forms for pairs `(A, B)` of a nondegenerate
//! ε-Hermitian form `B` and a `B`-isometric operator `A` (`A*BA = B`,
//! i.e. `A` is H-unitary with `H = B`).
//!
//! The library works over three exact coefficient rings — rationals,
//! Gaussian rationals and rational quaternions — as desk-scale stand-ins
//! for algebraically closed fields, real closed fields and quaternion
//! skew fields.  It provides:
//!
//! * construction of every indecomposable canonical block
//!   ([`canonical_blocks`]),
//! * the Toeplitz `Φ₍ε₎` machinery for Frobenius blocks over general
//!   fields ([`phi_epsilon`]),
//! * congruence-similarity transformations and randomized scrambling
//!   ([`pair_engine`]),
//! * a full decomposition algorithm recovering the canonical block
//!   multiset, including sign characteristics at unimodular eigenvalues
//!   ([`decompose`]).
//!
//! All arithmetic is exact (arbitrary-precision rationals); there is no
//! floating point anywhere.

pub mod canonical_blocks;
pub mod decompose;
mod error;
pub(crate) mod intmat;
pub mod io;
pub mod matrices;
pub mod pair_engine;
pub mod phi_epsilon;
pub mod poly;
pub(crate) mod roots;
pub mod scalars;

pub use error::{AxiomKind, Error, Result};
pub use scalars::{
    CaseTag, GaussianRational, Involution, Quaternion, Rational, Ring, Scalar, ScalarDomain,
};

/// Dense exact matrix over the rationals.
pub type RationalMatrix = matrices::Matrix<Rational>;
/// Dense exact matrix over the Gaussian rationals.
pub type GaussianMatrix = matrices::Matrix<GaussianRational>;
/// Dense exact matrix over the rational quaternions.
pub type QuaternionMatrix = matrices::Matrix<Quaternion>;

/// Polynomial with Gaussian-rational coefficients (the common case for
/// characteristic polynomials and eigenvalue work).
pub type GaussianPoly = poly::Polynomial<GaussianRational>;
/// Polynomial with rational coefficients.
pub type RationalPoly = poly::Polynomial<Rational>;
