//! Numerical verification of differential subordination lemmas whose
//! targets are the lemniscate of Bernoulli `√(1+z)` and Janowski maps
//! `(1+Az)/(1+Bz)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: truncated complex Taylor series and their arithmetic.
//! * [`regions`]: target functions, membership margins, inverse maps.
//! * [`catalog`]: the eleven lemmas, their dominants and `β` thresholds.
//! * [`verifier`]: boundary margins, admissibility minima, numeric
//!   thresholds and subordination checks.
//! * [`generators`]: Schwarz functions and premise-exact solutions.
//! * [`report`]: the `verify`, `threshold`, `falsify` and `plot` commands
//!   behind the `subord` binary, with [`svg`] for figures.
//!
//! Support modules: [`search`] (golden-section and bisection), [`winding`]
//! (argument-principle zero counts) and [`tolerance`] (shared defaults).

pub mod catalog;
pub mod generators;
pub mod regions;
pub mod report;
pub mod search;
pub mod series;
pub mod svg;
pub mod tolerance;
pub mod verifier;
pub mod winding;

pub use num_complex::Complex64;
