//! Temporal-graph connectivity toolkit.
//!
//! A temporal graph attaches discrete time labels to undirected edges; a
//! temporal path must traverse edges with non-decreasing (or, in strict
//! mode, increasing) labels. This crate provides:
//!
//! - reachability and connectivity predicates over temporal paths,
//! - a quadratic-size family of almost minimally connected temporal graphs
//!   with an automated verifier, plus its fragile one-label variant,
//! - exact minimum-connectivity solvers (brute force, trees, bounded
//!   treewidth) and a sector-based 2-approximation on cycles,
//! - reductions to and from Directed Steiner Tree/Forest with bidirectional
//!   solution maps, backed by desk-scale Steiner solvers,
//! - text formats and seeded instance generators for reproducible corpora.

pub mod error;
pub mod generator;
pub mod graph;
pub mod io;
pub mod lower_bound;
pub mod reach;
pub mod reduce;
pub mod solve;
pub mod steiner;

pub use error::{Error, Result};
pub use graph::{
    GraphStats, PathMode, Solution, TemporalEdge, TemporalGraph, TemporalPath, TimeLabel,
};
pub use reach::{earliest_arrival, feasible, is_connected, is_r_connected, prune_to_tree};
