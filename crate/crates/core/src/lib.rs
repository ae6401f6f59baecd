//! Finite-dimensional bound quiver algebras, their relation extensions and
//! Auslander-Reiten theory, computed exactly.

pub mod exactlin;
pub mod quiver;
pub mod algebra;
pub mod extension;
pub mod potential;
pub mod repmod;
pub mod report;
pub mod slices;
