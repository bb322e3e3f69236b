//! Exact verification of the rational right/isosceles triangle pair problem.
//!
//! The crate rebuilds, with exact arithmetic only, every computable step of the
//! argument that exactly one pair (up to similitude) of a rational right
//! triangle and a rational isosceles triangle share both perimeter and area:
//!
//! - [`exact_arith`]: big integers, rationals, `F_p`, integer polynomials,
//!   resultants and discriminants.
//! - [`triangle`]: rational triangles, Heron area, similarity classes and the
//!   right/isosceles parametrizations.
//! - [`hyperelliptic`]: genus-2 curves `y^2 = f(x)`, membership, reduction mod
//!   `p`, point counting and the Chabauty–Coleman counting bound.
//! - [`reduction`]: the two curves coming from the triangle equations, the map
//!   from curve points back to triangle pairs and the birational map between
//!   the curves.
//! - [`search`]: bounded-height point search and the primitive-pair brute force.
//! - [`report`]: the end-to-end pipeline and its text/JSON report.
//!
//! The Mordell–Weil rank bound is never computed. It enters as a
//! [`hyperelliptic::RankAssumption`] and the report verdict is conditional on it.

pub mod exact_arith;
pub mod hyperelliptic;
pub mod reduction;
pub mod report;
pub mod search;
pub mod triangle;

pub use exact_arith::{IntPolynomial, OddPrime, Rational};
pub use hyperelliptic::{CurvePoint, HyperellipticCurve, RankAssumption};
pub use triangle::{Case, SimilarityClass, Triangle};
