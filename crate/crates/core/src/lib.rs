//! Quantum-state mathematics rebuilt from detector clicks.
//!
//! * [`ensemble`] turns click streams into braces of counts and extracts
//!   relative frequencies `ν` and phases `κ` from them.
//! * [`numeric`] holds the pair-number field `(n, m)` with its two
//!   involutions, the elimination over all sixteen sign rules for pair
//!   multiplication, and von Neumann ordinals.
//! * [`statespace`] assembles state vectors, instruments with spectra,
//!   basis changes, measurement and mixtures.
//! * [`experiments`] runs the interference, positivity and convergence
//!   demonstrations.
//!
//! All arithmetic is exact (`BigRational`); floating point only appears
//! in reporting and in the statistical tolerance checks.

pub mod ensemble;
pub mod error;
pub mod experiments;
pub mod numeric;
pub mod rational;
pub mod report;
pub mod rng;
pub mod statespace;

pub use error::{Error, Result};
pub use rational::Rational;
pub use report::{CheckReport, PropertyCheck, Verdict};
