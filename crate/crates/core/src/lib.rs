//! Canonical forms and their simplest miniversal deformations for three
//! matrix problems: square matrices under similarity, matrix pencils under
//! equivalence, and contragredient matrix pencils, over both `C` and `R`.
//!
//! Everything runs in exact arithmetic (rationals and Gaussian rationals),
//! so the transversality oracle in [`quiver`] is a pure rank statement with
//! no tolerances. The intended flow is:
//!
//! 1. describe a canonical structure ([`canonical`]),
//! 2. materialize it as a quiver representation ([`canonical::build`] helpers),
//! 3. emit its closed-form deformation pattern ([`patterns`]),
//! 4. check the pattern against the generic oracle ([`quiver::verify_transversal`]).

pub mod canonical;
pub mod exact;
pub mod patterns;
pub mod quiver;
pub mod sample;

pub use canonical::{CanonicalStructure, Problem};
pub use exact::{ExactMatrix, Field, GaussianRational, Rational, Scalar};
pub use quiver::{Representation, StarPattern, VerificationReport};
