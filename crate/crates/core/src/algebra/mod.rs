//! Exact arithmetic: rationals, sparse polynomials in `y` and in `(x, y)`,
//! and truncated exponential generating functions over them.
//!
//! Nothing in here uses floating point.

mod json;
mod poly;
mod ring;
mod series;

pub use json::{PolyJson, SeriesJson, TermJson, SERIES_CONVENTION};
pub use num_rational::BigRational;
pub use poly::{Monomial, Poly, PolyXY, PolyY, XY, Y};
pub use ring::{binomial, factorial_big, int, rat, Ring};
pub use series::{series_integrate, series_mul, EgfSeries};
