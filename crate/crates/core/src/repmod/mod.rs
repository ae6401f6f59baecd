//! Right modules as quiver representations: Hom spaces, decomposition,
//! the Auslander-Reiten translate and knitting of AR quivers.

mod cover;
mod decompose;
mod hom;
mod knit;
mod rep;

pub use cover::{ext2_dc_c, is_projective, omega, presentation, projective_cover, syzygy, tau, tau_inverse, Presentation, ProjectiveCover, Syzygy};
pub use decompose::{decompose, endomorphism_radical, endomorphism_radical_codim, Summand};
pub use hom::{compose, hom_space, is_invertible, is_isomorphic_indecomposable, is_zero_morphism, HomSpace, Morphism};
pub use rep::{RepError, Representation};
pub use knit::{knit_ar_quiver, ArArrow, ArNode, ArQuiver, KnitError, DEFAULT_KNIT_CAP};
