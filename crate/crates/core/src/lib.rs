//! Exact computation of power elementary polynomials and machine
//! verification of the algebraic identities they satisfy: the elementary
//! symmetric basis conversion, the Laurent-polynomial threading identity,
//! the SL_d characteristic-polynomial characterization, quantum-integer and
//! cyclotomic arithmetic, and the commutative annulus skein expansions.
//!
//! The polynomial core is generic over the coefficient scalar through
//! [`poly::Coeff`] (a `num-traits` bound); the concrete aliases below fix
//! arbitrary-precision integers for everything the library verifies.

pub mod annulus;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod power;
pub mod qarith;
pub mod report;
pub mod symmetric;

pub use error::{Error, Result};
pub use poly::{Coeff, ExponentVector, MPoly, PolyJson, RingSignature, TermJson};
pub use report::{CaseKey, VerificationReport};

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients.
pub type IntPolynomial = poly::MPoly<num_bigint::BigInt>;

/// Same representation as [`IntPolynomial`]; Laurent behaviour comes from
/// invertible-flagged variables in the [`RingSignature`].
pub type LaurentPolynomial = IntPolynomial;
