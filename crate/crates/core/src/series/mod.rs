//! Exact scalars, sparse vectors and truncated formal series in ħ and graded
//! deformation coordinates.

pub mod json;
pub mod monomial;
pub mod scalar;
mod truncated;
pub mod vector;

pub use monomial::{Monomial, Sign, Variables};
pub use scalar::Scalar;
pub use truncated::{Bilinear, Series, UNBOUNDED};
pub use vector::{BasisElement, GradedBasis, Vector};
