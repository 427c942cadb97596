//! Exact arithmetic over `Q` and `Q(i)` and the dense matrix kernel (rref,
//! rank, nullspace, affine solve) that the rest of the crate is built on.
//!
//! All values are immutable; operations are pure functions. Zero-dimensional
//! matrices (`0 x n`, `n x 0`) are first-class and behave as identities of
//! block concatenation.

mod matrix;
mod scalar;

pub use matrix::{AffineSolution, ExactMatrix, Rref, SpanTracker};
pub use scalar::{GaussianRational, Scalar};

pub type Rational = num_rational::BigRational;

/// Field model a matrix lives over: `R` (rational scalars) or `C`
/// (Gaussian-rational scalars). Dimensions are counted over the model field,
/// so one entry is one dimension in either model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Real => write!(f, "R"),
            Field::Complex => write!(f, "C"),
        }
    }
}
