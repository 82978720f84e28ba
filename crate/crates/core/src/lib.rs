//! Exact-arithmetic toolkit for the multiplicative structure of polynomial
//! values and of elliptic curves in one-parameter families.
//!
//! - [`arith`]: factorization, greatest prime factor `P(m)`, radical,
//!   valuations, valuation products, primorials.
//! - [`polyz`]: dense integer polynomials (gcd over Q, resultants, distinct
//!   root counts, integer roots) and a small expression parser.
//! - [`ellcurve`]: Weierstrass models, Tate's algorithm, global minimal
//!   models, conductors, Szpiro ratios.
//! - [`families`]: elliptic surfaces `y^2 = x^3 + A(t)x + B(t)` and the
//!   quadratic and cubic curve constructions with their discriminant
//!   identities.
//! - [`bounds`]: iterated logarithms and closed-form bound shapes.
//! - [`scan`]: range scans, condition probes, the Luca table, CSV/JSON output
//!   and checkpoint/resume.

pub mod arith;
pub mod bounds;
pub mod ellcurve;
mod error;
pub mod families;
pub mod polyz;
pub mod scan;

pub use error::{Error, Result};
pub use num_bigint::{BigInt, BigUint};
