//! Unique-maximum, conflict-free and odd colorings of hypergraphs and trees.
//!
//! Every construction in this crate is paired with a checker: colorings are
//! verified edge by edge (or path by path), and chromatic numbers are
//! certified by exact search.

pub mod certificate;
pub mod coloring;
pub mod critical;
pub mod error;
pub mod hypergraph;
pub mod io;
pub mod psf;
pub mod random;
pub mod solver;
pub mod subdivision;
pub mod transfer;
pub mod tree;

pub use certificate::{Certificate, Verdict};
pub use coloring::{colors_used, Color, Coloring, ColoringKind, ParityVector};
pub use error::{Error, Result};
pub use hypergraph::{is_valid, parity_vector, Hypergraph};
pub use subdivision::{validate_subdivision, SubdivisionWitness};
pub use tree::Tree;
