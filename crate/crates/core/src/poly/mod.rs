//! Sparse multivariate polynomials over ℚ, polynomial matrices and Gröbner bases.

pub mod groebner;
pub mod matrix;
pub mod monomial;
#[allow(clippy::module_inception)]
pub mod poly;

pub use groebner::{groebner, groebner_with_cofactors, Budget, BudgetExceeded, GroebnerCertificate};
pub use matrix::{nilpotent_exp, unipotent_inverse, PolyMatrix};
pub use monomial::Monomial;
pub use poly::{var_names, MultiPoly};
