//! Minimal checkerboard genus of *-graphs whose vertices have degree 4 or 6.
//!
//! The pipeline orients the graph source-sink, finds a rotating-splitting
//! Euler circuit, reads a chord diagram off it and minimizes
//! `(rank M_W + rank M_B) / 2` over all permissible partitions of the
//! intersection matrix. [`oracle`] computes the same number by tracing faces
//! of every checkerboard atom directly.

pub mod chords;
pub mod circuit;
pub mod error;
pub mod fixtures;
pub mod genus;
pub mod gf2;
pub mod graph;
pub mod oracle;
pub mod parity;

pub use error::{Error, Result};
pub use genus::{
    analyze, is_planar, min_genus, Analysis, GenusResult, PermissiblePartition, Planarity, Side,
};
pub use graph::{double_cover, find_source_sink_orientation, parse_stg, to_stg, StarGraph};
pub use oracle::{oracle_min_genus, DEFAULT_CAP};
