//! Bohr-type majorant inequalities for analytic maps of the unit disk whose
//! image omits two finite values.
//!
//! The crate is organised bottom-up:
//!
//! - [`series`]: truncated complex power series, the common carrier.
//! - [`modular`]: the modular function `J`, its coefficients `A_n`, and the
//!   covering map `Q` of `C \ {0, 1}`.
//! - [`geometry`]: hyperbolic density of covers and boundary distances.
//! - [`generators`]: seeded Schwarz functions, large-function specs, polynomials.
//! - [`bohr`]: the majorant operator, the radius solver, and the inequality checks.
//! - [`harmonic`]: the extension to harmonic maps `h + conj(g)`.
//! - [`sweeps`]: randomized verification drivers and their reports.

pub mod bohr;
pub mod generators;
pub mod geometry;
pub mod harmonic;
pub mod modular;
pub mod series;
pub mod sweeps;

pub use series::{Complex, EvalPoint, TruncatedSeries};
