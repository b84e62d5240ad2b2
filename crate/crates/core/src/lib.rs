//! Exact commutative algebra over graded quotient rings.
//!
//! This crate computes Buchsbaum-Rim functions, multiplicities and
//! coefficients of parameter modules `N` inside a free module `F = A^r`
//! over a standard-graded quotient ring `A = k[x_1..x_D]/I`, together
//! with the Eagon-Northcott complex of the presentation matrix and an
//! independent, resolution-based Cohen-Macaulay test for `A`.
//!
//! All arithmetic is exact: prime fields or arbitrary-precision
//! rationals for coefficients, big integers for combinatorics. No
//! floating point is used anywhere.

pub mod analyzer;
pub mod en;
pub mod error;
pub mod groebner;
pub mod modules;
pub mod poly;

pub use error::EngineError;
