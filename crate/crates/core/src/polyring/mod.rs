//! Exact polynomial arithmetic: sparse multivariate polynomials over the
//! rationals, polynomial matrices with fraction-free determinants, and the
//! scalar fields used for point evaluation.

pub mod field;
pub mod matrix;
pub mod poly;

pub use field::{rational_reconstruct, Field, Fp, ModP, Ring, P61, P_ALT};
pub use matrix::{DenseMatrix, PolyMatrix};
pub use poly::{FloatPoly, Monomial, MultiPoly};
