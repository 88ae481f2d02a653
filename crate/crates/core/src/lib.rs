//! Dicoloring tools for oriented chordal graphs: recognizers for heroes,
//! constructive colorings, generators for counterexample families, and an
//! exhaustive property harness for small tournaments.

pub mod bitset;
pub mod chordal;
pub mod coloring;
pub mod constructions;
pub mod digraph;
pub mod harness;
pub mod io;
pub mod patterns;

pub use bitset::VertexSet;
pub use chordal::{is_chordal, Chordality, EliminationOrdering, UnitIntervalRepresentation};
pub use coloring::{dichromatic_number, validate_dicoloring, Dicoloring, SolverConfig, Validation};
pub use digraph::{Digraph, GraphError, UndirectedGraph};
