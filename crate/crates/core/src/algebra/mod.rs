//! Exact arithmetic: rationals, Gaussian rationals, sparse multivariate
//! polynomials, dense rational matrices and the linear algebra built on
//! them.

mod gaussian;
mod ideal;
mod matrix;
mod modular;
mod poly;
mod rational;
pub mod sampling;

pub use gaussian::GaussianRational;
pub use ideal::{ideal_membership, Membership};
pub(crate) use ideal::monomials_of_degree;
pub use matrix::RationalMatrix;
pub use poly::{symbolic_determinant, Exponent, Polynomial};
pub use rational::{binomial, factorial, int, rat, Rational};
