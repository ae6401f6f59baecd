//! Quivers, paths and cycles, graph predicates and the input format.

mod graph;
mod parse;
mod path;

pub use graph::{Arrow, ChordlessCycle, Quiver, QuiverError, DEFAULT_CYCLE_CAP};
pub use parse::{format_terms, parse_quiver, parse_terms, FieldSpec, ParseError, ParseErrorKind, QuiverFile, RelationSpec};
pub use path::{enumerate_paths, Cycle, Path};
