//! Exact jet calculus for morphisms between formal manifold charts
//! `N^(k)`: smooth coordinates carry polynomial coefficients over the
//! rationals, formal coordinates carry truncated power series.

pub mod error;
pub mod exactalg;
pub mod localforms;
pub mod morphism;
pub mod series;
pub mod submanifold;

pub use error::{Error, Obstruction, Result};
pub use exactalg::{parse_rational, pq_string, rat, Matrix, Monomial, Poly, Rational};
