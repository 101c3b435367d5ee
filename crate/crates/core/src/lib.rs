//! Colouring templates (triples of graphs on one vertex set), rainbow
//! triangles, extremal constructions, forcing-density regions, certified
//! numeric checks and combinatorial search.

pub mod boundary;
pub mod cli;
pub mod constructions;
pub mod format;
pub mod search;
pub mod template;
pub mod verifier;

pub use template::{Colour, ColourSet, ColouringTemplate, DensityVector, Edge, MatchingPartition};
