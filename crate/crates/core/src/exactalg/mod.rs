//! Exact rationals, monomials, polynomials over the smooth variables, and
//! dense matrices with exact elimination.

mod algebra;
mod matrix;
mod monomial;
mod poly;
mod rational;

pub use algebra::{eval_with_powers, monomial_images, Algebra};
pub use matrix::Matrix;
pub use monomial::Monomial;
pub(crate) use poly::render_terms;
pub use poly::Poly;
pub use rational::{parse_rational, pq_string, rat, Rational};
