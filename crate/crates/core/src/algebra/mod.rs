//! Bound quiver algebras `kQ/I`: path bases, normal forms, minimal
//! relations and homological checks.

mod bound;
mod echelon;
mod element;
mod gentle;
mod homology;
mod relations;

pub use bound::{AlgebraError, BoundAlgebra, Coords, DEFAULT_LENGTH_CAP};
pub use echelon::Echelon;
pub use element::Element;
pub use gentle::is_gentle;
pub use homology::{ext2_simples_dim, global_dimension_le, GlobalDimensionReport};
pub use relations::{minimal_relation_system, MinimalRelation, RelationSystem};
