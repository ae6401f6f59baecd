//! Exact scalars and dense linear algebra.

mod field;
mod fp;
mod matrix;
mod rational;
mod subspace;

pub use field::{eval_poly, Field};
pub use fp::{is_prime, Fp};
pub use matrix::Matrix;
pub use rational::Rational;
pub use subspace::{Subspace, SubspaceError};
