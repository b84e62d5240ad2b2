//! Sparse multivariate polynomials with exact coefficients.
//!
//! Everything downstream (Gröbner bases, graded pieces, complexes) is
//! built on the types here: coefficient fields, monomials with their
//! orders, polynomials inside a [`PolyRing`] context, and exact
//! binomial coefficients.

mod binom;
mod field;
mod monomial;
mod polynomial;

pub use binom::binomial;
pub use field::{Field, FieldKind, PrimeField, Rationals};
pub use monomial::{Monomial, MonomialOrder, ModuleOrder};
pub use polynomial::{PolyRing, Polynomial};
