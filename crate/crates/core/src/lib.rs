//! Exact symbolic engine for the ordered Q-linear reals expanded by a
//! geometric progression `E = { rho^n : n >= 0 }`.
//!
//! The crate is organised bottom-up:
//!
//! - [`numeric`]: exact rationals, the progression base and stopping bounds.
//! - [`progression`]: bounded windows `v(E^m) ∩ (-R, R)`, separation radii and
//!   satisfiability of linear constraint systems over `E^m`.
//! - [`logic`]: formulas, the concrete syntax, normal forms and quantifier
//!   elimination for the E-free theory.
//! - [`eliminator`]: removal of the `E` predicate from bounded definable sets.
//! - [`quasiperiodic`]: residues of `E` modulo `rZ` and cycle detection.
//! - [`oracle`]: naive brute-force references used by the test suites.

pub mod eliminator;
pub mod error;
pub mod logic;
pub mod numeric;
pub mod oracle;
pub mod progression;
pub mod quasiperiodic;

pub use error::{Error, Result};
pub use numeric::{ExactRational, Exponent, GeoBase};
