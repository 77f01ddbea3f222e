//! Exact truncated power-series arithmetic over multivariate rational
//! polynomials, the closed-form generating functions, and the
//! brute-force enumeration oracle they are verified against.

pub mod brute;
pub mod gf;
pub mod poly;
pub mod truncated;

pub use poly::{Mono, MultiPoly, Var};
pub use truncated::{SeriesError, TruncatedSeries};
